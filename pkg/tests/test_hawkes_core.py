"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import math

import numpy as np
import pytest


def make_sequence(times, groups, window_T, K=None):
    """a sequence from plain times and group indices"""
    from hawkesweb.main.events import Category, Event, EventSequence, GroupId

    K = K or max(groups) + 1
    labels = ["g%s" % k for k in range(K)]
    events = tuple(Event(float(t), GroupId(g, labels[g])) for t, g in zip(times, groups))
    return EventSequence("example.com/x", Category.Other, events, float(window_T))


def one_group(mu=0.5, w=0.4, beta=1.0):
    from hawkesweb.main.hawkes import HawkesParams

    return HawkesParams(mu=[mu], W=[[w]], beta=beta)


def test_params_validation():
    from hawkesweb.exceptions import HawkeswebError
    from hawkesweb.main.hawkes import HawkesParams

    params = HawkesParams(mu=[0.1, 0.2], W=[[0.1, 0.0], [0.2, 0.3]], beta=2)
    assert params.K == 2
    assert params.beta == 2.0
    with pytest.raises(ValueError):
        params.W[0, 0] = 1.0

    assert HawkesParams.from_record(params.to_record()) == params

    for mu, W, beta in [
        ([0.1], [[0.1, 0.2]], 1.0),
        ([-0.1], [[0.1]], 1.0),
        ([0.1], [[-0.1]], 1.0),
        ([0.1], [[0.1]], 0.0),
        ([float("nan")], [[0.1]], 1.0),
    ]:
        with pytest.raises(HawkeswebError):
            HawkesParams(mu=mu, W=W, beta=beta)


def test_intensity():
    from hawkesweb.exceptions import WindowRangeError
    from hawkesweb.main.hawkes import HawkesParams, intensity

    flat = HawkesParams(mu=[0.3, 0.7], W=np.zeros((2, 2)))
    seq = make_sequence([0.0, 0.5, 1.0], [0, 1, 0], 5.0)
    for t in [0.0, 0.75, 3.0]:
        assert intensity(flat, seq, t, 0) == pytest.approx(0.3)
        assert intensity(flat, seq, t, 1) == pytest.approx(0.7)

    params = one_group()
    seq = make_sequence([0.0], [0], 5.0)
    assert intensity(params, seq, 1.0, 0) == pytest.approx(0.5 + 0.4 * math.exp(-1), abs=1e-12)
    assert intensity(params, seq, 1.0, 0) == pytest.approx(0.6472, abs=1e-4)

    # Only events strictly before t contribute
    assert intensity(params, seq, 0.0, 0) == pytest.approx(0.5)

    seq = make_sequence([0.0, 1.0], [0, 0], 5.0)
    assert intensity(params, seq, 2.0, 0) == pytest.approx(0.7013, abs=1e-4)

    with pytest.raises(WindowRangeError):
        intensity(params, seq, 5.5, 0)
    with pytest.raises(WindowRangeError):
        intensity(params, seq, -0.1, 0)


def test_log_likelihood():
    from hawkesweb.exceptions import WindowRangeError
    from hawkesweb.main.hawkes import log_likelihood

    params = one_group()
    seq = make_sequence([0.0, 1.0], [0, 0], 2.0)
    expected = (
        math.log(0.5)
        + math.log(0.5 + 0.4 * math.exp(-1))
        - (0.5 * 2 + 0.4 * (1 - math.exp(-2)) + 0.4 * (1 - math.exp(-1)))
    )
    assert log_likelihood(params, seq) == pytest.approx(expected, abs=1e-10)
    assert log_likelihood(params, seq) == pytest.approx(-2.727, abs=1e-3)

    # An explicit window beyond the sequence's own
    longer = log_likelihood(params, seq, T=3.0)
    assert longer < log_likelihood(params, seq)

    with pytest.raises(WindowRangeError):
        log_likelihood(params, seq, T=0.5)


def test_log_likelihood_degenerate(caplog):
    from hawkesweb.main.hawkes import HawkesParams, log_likelihood

    # No background for group 1, and nothing before its only event can excite it
    params = HawkesParams(mu=[0.5, 0.0], W=[[0.0, 0.0], [0.0, 0.0]])
    seq = make_sequence([0.0, 1.0], [0, 1], 2.0)
    with caplog.at_level(logging.WARNING):
        assert log_likelihood(params, seq) == -np.inf
    assert "Degenerate" in caplog.text


def test_log_likelihood_empty():
    from hawkesweb.main.hawkes import HawkesParams, log_likelihood

    params = HawkesParams(mu=[0.2, 0.3], W=np.full((2, 2), 0.1))
    seq = make_sequence([], [], 10.0, K=2)
    assert log_likelihood(params, seq) == pytest.approx(-5.0)


def test_compensator_matches_quadrature():
    from scipy.integrate import quad

    from hawkesweb.main.hawkes import HawkesParams, compensator, intensity

    rng = np.random.default_rng(7)
    for _ in range(20):
        K = 3
        params = HawkesParams(
            mu=rng.uniform(0.05, 0.5, K),
            W=rng.uniform(0.0, 0.3, (K, K)),
            beta=float(rng.uniform(0.5, 3.0)),
        )
        n = 8
        times = np.sort(rng.uniform(0, 10, n))
        seq = make_sequence(times, rng.integers(0, K, n).tolist(), 10.0, K=K)
        t = float(rng.uniform(times[-1], 10.0))

        # The intensity jumps at every event, so those are the breakpoints
        for k in range(K):
            numeric, _ = quad(
                lambda u: intensity(params, seq, u, k), 0.0, t, points=times, limit=200
            )
            assert compensator(params, seq, t)[k] == pytest.approx(numeric, rel=1e-3)


def test_responsibilities_normalized():
    from hawkesweb.main.hawkes import HawkesParams, responsibilities

    params = HawkesParams(mu=[0.2, 0.1], W=[[0.3, 0.2], [0.1, 0.4]], beta=1.5)
    seq = make_sequence([0.0, 0.1, 0.1, 2.0, 2.5], [0, 1, 0, 1, 1], 5.0)
    background, by_source = responsibilities(params, seq)

    assert background.shape == (5,)
    assert by_source.shape == (5, 2)
    np.testing.assert_allclose(background + by_source.sum(axis=1), 1.0)

    # The first event has no possible parent
    assert background[0] == pytest.approx(1.0)


def test_ties_at_large_times():
    from hawkesweb.main.hawkes import HawkesParams, log_likelihood, responsibilities
    from hawkesweb.main.hawkes.model import event_arrays

    # At 1e7 seconds the float spacing is larger than the tie offset
    start = 1e7
    seq = make_sequence([start, start, start, start + 5.0], [0, 1, 0, 1], start + 10.0)
    times, marks = event_arrays(seq)
    assert np.all(np.diff(times) > 0)
    assert times[0] == start
    assert times[-1] == start + 5.0
    assert marks.tolist() == [0, 1, 0, 1]

    params = HawkesParams(mu=[0.2, 0.1], W=[[0.3, 0.2], [0.1, 0.4]])
    assert np.isfinite(log_likelihood(params, seq))
    background, by_source = responsibilities(params, seq)
    np.testing.assert_allclose(background + by_source.sum(axis=1), 1.0)
    assert background[0] == pytest.approx(1.0)


def test_log_likelihood_peaks_at_truth():
    from hawkesweb.main.hawkes import HawkesParams, SimulationSpec, log_likelihood, simulate

    params = HawkesParams(mu=[0.5, 0.3], W=[[0.3, 0.2], [0.1, 0.4]], beta=1.0)
    seq = simulate(SimulationSpec(params, horizon_T=2000.0, seed=11))
    truth = log_likelihood(params, seq)

    for scale in [0.5, 1.5]:
        for mu, W in [
            (params.mu * scale, params.W),
            (params.mu, params.W * scale),
            (params.mu * scale, params.W * scale),
        ]:
            perturbed = HawkesParams(mu=mu, W=W, beta=params.beta)
            assert log_likelihood(perturbed, seq) < truth


def test_intensity_additive():
    from hawkesweb.main.hawkes import HawkesParams, intensity

    rng = np.random.default_rng(5)
    params = HawkesParams(mu=[0.2, 0.4], W=[[0.3, 0.2], [0.1, 0.4]], beta=1.5)
    first = np.sort(rng.uniform(0, 10, 6))
    second = np.sort(rng.uniform(0, 10, 5))
    first_groups = rng.integers(0, 2, 6).tolist()
    second_groups = rng.integers(0, 2, 5).tolist()

    order = np.argsort(np.concatenate([first, second]), kind="stable")
    union_times = np.concatenate([first, second])[order]
    union_groups = np.array(first_groups + second_groups)[order].tolist()

    a = make_sequence(first, first_groups, 10.0, K=2)
    b = make_sequence(second, second_groups, 10.0, K=2)
    both = make_sequence(union_times, union_groups, 10.0, K=2)

    for t in rng.uniform(0, 10, 10):
        for k in range(2):
            expected = intensity(params, a, t, k) + intensity(params, b, t, k) - params.mu[k]
            assert intensity(params, both, t, k) == pytest.approx(expected, rel=1e-12)


def test_time_rescaling():
    from hawkesweb.exceptions import EmptySampleError
    from hawkesweb.main.hawkes import (
        HawkesParams,
        SimulationSpec,
        simulate,
        time_rescaling,
    )

    params = HawkesParams(mu=[0.5, 0.3], W=[[0.3, 0.2], [0.1, 0.4]], beta=1.0)
    seq = simulate(SimulationSpec(params, horizon_T=2000, seed=11))
    residuals, p = time_rescaling(params, seq)
    assert residuals.size == len(seq)
    assert np.all(residuals > 0)
    assert residuals.mean() == pytest.approx(1.0, abs=0.1)
    assert 0.0 <= p <= 1.0

    # A badly wrong background rate is flagged
    wrong = HawkesParams(mu=[5.0, 3.0], W=params.W, beta=1.0)
    assert time_rescaling(wrong, seq)[1] < 0.01

    with pytest.raises(EmptySampleError):
        time_rescaling(params, make_sequence([], [], 1.0, K=2))


def test_spectral_radius():
    from hawkesweb.main.hawkes import spectral_radius, stability

    assert spectral_radius(np.zeros((3, 3))) == 0.0
    assert stability(np.zeros((3, 3))).subcritical
    assert spectral_radius(0.5 * np.eye(4)) == pytest.approx(0.5, abs=1e-6)

    rng = np.random.default_rng(3)
    for _ in range(20):
        W = rng.uniform(0.0, 0.5, (4, 4))
        oracle = np.max(np.abs(np.linalg.eigvals(W)))
        assert spectral_radius(W) == pytest.approx(oracle, abs=1e-6)

    # A periodic matrix, where plain power iteration would oscillate
    W = np.array([[0.0, 0.9], [0.9, 0.0]])
    assert spectral_radius(W) == pytest.approx(0.9, abs=1e-6)
    assert not stability(np.array([[1.2]])).subcritical

    # Nearly equal leading roots, where successive estimates barely move
    assert spectral_radius(np.diag([0.5, 0.4999])) == pytest.approx(0.5, rel=1e-9)
    assert spectral_radius(np.diag([0.4999, 0.5])) == pytest.approx(0.5, rel=1e-9)
    W = np.array([[0.5, 1e-6], [0.0, 0.4999]])
    assert spectral_radius(W) == pytest.approx(0.5, rel=1e-9)


def test_spectral_radius_near_critical():
    from hawkesweb.exceptions import SupercriticalError
    from hawkesweb.main.hawkes import (
        HawkesParams,
        SimulationSpec,
        simulate,
        stability,
        stationary_rates,
    )
    from hawkesweb.main.influence import total_impact

    W = np.diag([1.00002, 0.9999])
    status = stability(W)
    assert status.spectral_radius == pytest.approx(1.00002, rel=1e-9)
    assert not status.subcritical

    with pytest.raises(SupercriticalError):
        total_impact(W, [10, 10])

    params = HawkesParams(mu=[0.1, 0.1], W=W)
    with pytest.raises(SupercriticalError):
        stationary_rates(params)
    with pytest.raises(SupercriticalError):
        simulate(SimulationSpec(params, horizon_T=10.0, seed=1))

    assert stability(np.diag([0.99998, 0.9999])).subcritical


def test_stationary_rates():
    from hawkesweb.exceptions import SupercriticalError
    from hawkesweb.main.hawkes import HawkesParams, stationary_rates

    params = HawkesParams(mu=[0.5, 0.3], W=[[0.3, 0.2], [0.1, 0.4]])
    np.testing.assert_allclose(stationary_rates(params), [0.825, 0.775])
    assert stationary_rates(one_group(1.0, 0.5))[0] == pytest.approx(2.0)

    with pytest.raises(SupercriticalError) as error:
        stationary_rates(one_group(1.0, 1.5))
    assert error.value.radius == pytest.approx(1.5)


def test_simulate_zero_background():
    from hawkesweb.main.hawkes import HawkesParams, SimulationSpec, simulate

    params = HawkesParams(mu=[0.0, 0.0], W=[[0.5, 0.1], [0.1, 0.5]])
    seq = simulate(SimulationSpec(params, horizon_T=100))
    assert len(seq) == 0
    assert seq.window_T == 100.0


def test_simulate_deterministic():
    from hawkesweb.main.hawkes import SimulationSpec, simulate, simulate_with_parents

    spec = SimulationSpec(one_group(1.0, 0.5), horizon_T=200, seed=42, labels=("trolls",))
    first, second = simulate(spec), simulate(spec)
    assert first == second
    assert first.parents is None
    assert first.events[0].group.label == "trolls"
    assert simulate(spec.with_seed(43)) != first

    seq, parents = simulate_with_parents(spec)
    assert seq.times.tolist() == first.times.tolist()
    assert len(parents) == len(seq)
    assert parents[0] == -1
    assert set(parents) <= {-1, 0}
    assert np.all(np.diff(seq.times) > 0)
    assert seq.times[-1] < 200


def test_simulate_supercritical(caplog):
    from hawkesweb.exceptions import SupercriticalError
    from hawkesweb.main.hawkes import SimulationSpec, simulate

    spec = SimulationSpec(one_group(0.5, 1.2), horizon_T=5)
    with pytest.raises(SupercriticalError):
        simulate(spec)

    with caplog.at_level(logging.WARNING):
        seq = simulate(
            SimulationSpec(one_group(0.5, 1.2), horizon_T=5, allow_supercritical=True)
        )
    assert seq.window_T == 5.0
    assert "supercritical" in caplog.text


def test_simulate_poisson_rate():
    from hawkesweb.main.hawkes import SimulationSpec, simulate_corpus

    spec = SimulationSpec(one_group(2.0, 0.0), horizon_T=1000, seed=0)
    corpus = simulate_corpus(spec, 100)
    assert len({s.url for s in corpus}) == 100
    mean = np.mean([len(s) for s in corpus])
    assert mean == pytest.approx(2000, rel=0.03)


@pytest.mark.parametrize(
    "mu,W",
    [
        ([1.0], [[0.5]]),
        ([0.5, 0.3], [[0.3, 0.2], [0.1, 0.4]]),
    ],
)
def test_simulate_stationary_rate(mu, W):
    from hawkesweb.main.hawkes import (
        HawkesParams,
        SimulationSpec,
        simulate_corpus,
        stationary_rates,
    )

    params = HawkesParams(mu=mu, W=W, beta=1.0)
    corpus = simulate_corpus(SimulationSpec(params, horizon_T=5000, seed=100), 20)
    observed = np.mean([s.counts(params.K) / 5000.0 for s in corpus], axis=0)
    np.testing.assert_allclose(observed, stationary_rates(params), rtol=0.03)
