"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging

import numpy as np
import pytest


def test_direct_impact():
    from hawkesweb.main.influence import direct_impact

    np.testing.assert_array_equal(direct_impact(np.zeros((3, 3)), [5, 6, 7]), np.zeros((3, 3)))

    pct = direct_impact([[0.0, 0.2], [0.0, 0.0]], [100, 50])
    assert pct[0, 1] == pytest.approx(40.0)
    assert pct[0, 0] == 0.0
    assert pct[1, 0] == 0.0

    # A destination without events has no impact at all, not zero
    pct = direct_impact([[0.1, 0.2], [0.3, 0.4]], [10, 0])
    assert np.all(np.isnan(pct[:, 1]))
    assert pct[0, 0] == pytest.approx(10.0)


def test_total_impact():
    from hawkesweb.exceptions import SupercriticalError
    from hawkesweb.main.influence import cascade_matrix, direct_impact, total_impact

    np.testing.assert_array_equal(total_impact(np.zeros((2, 2)), [3, 4]), np.zeros((2, 2)))
    assert total_impact([[0.5]], [100])[0, 0] == pytest.approx(100.0)
    assert cascade_matrix([[0.5]])[0, 0] == pytest.approx(1.0)

    # A chain s -> m -> d: d events descend from s only through m
    W = np.array([[0.0, 0.5, 0.0], [0.0, 0.0, 0.4], [0.0, 0.0, 0.0]])
    cascade = cascade_matrix(W)
    assert cascade[0, 2] == pytest.approx(0.2)
    assert cascade[0, 1] == pytest.approx(0.5)

    W = np.array([[0.2, 0.1], [0.3, 0.1]])
    series = sum(np.linalg.matrix_power(W, n) for n in range(1, 60))
    np.testing.assert_allclose(cascade_matrix(W), series, atol=1e-12)

    # As weights shrink, indirect generations vanish
    counts = [40, 70]
    for epsilon in [1e-3, 1e-5]:
        np.testing.assert_allclose(
            total_impact(epsilon * W, counts), direct_impact(epsilon * W, counts), rtol=1e-2
        )

    with pytest.raises(SupercriticalError) as error:
        total_impact([[1.0, 0.5], [0.5, 1.0]], [1, 1])
    assert error.value.radius == pytest.approx(1.5)


def test_impact_matrix(caplog):
    from hawkesweb.main.influence import ImpactMatrix, impact_matrix

    matrix = impact_matrix([[0.0, 0.2], [0.0, 0.0]], [100, 50], ["trolls", "twitter"], "All")
    assert ImpactMatrix.header == ["category", "source", "destination", "direct_pct", "total_pct"]
    assert matrix.rows()[1] == ["All", "trolls", "twitter", 40.0, 40.0]

    with caplog.at_level(logging.WARNING):
        matrix = impact_matrix([[1.2, 0.0], [0.0, 0.1]], [10, 10], ["a", "b"], "OtherNews")
    assert matrix.total_pct is None
    assert matrix.rows()[0] == ["OtherNews", "a", "a", 120.0, ""]
    assert "No total impact" in caplog.text


def get_aggregate(russian, other, labels=("trolls", "twitter")):
    """an aggregate holding only the weight samples the comparison reads"""
    from hawkesweb.main.hawkes import AggregateResult

    K = len(labels)
    empty = [[[] for _ in range(K)] for _ in range(K)]
    return AggregateResult(
        labels=labels,
        mean_W={},
        mean_mu={},
        weight_samples={"RussianState": russian, "OtherNews": other, "All": empty},
        mu_samples={},
        retained={},
    )


def test_compare_categories():
    from hawkesweb.main.influence import compare_categories

    same = [0.1, 0.2, 0.3]
    russian = [[same, [0.1] * 50], [[], [0.2]]]
    other = [[same, [0.2] * 50], [[0.5], []]]
    comparison = compare_categories(get_aggregate(russian, other))

    assert len(comparison.pairs) == 4
    pair = comparison.get("trolls", "trolls")
    assert pair.sufficient
    assert pair.percent_change == pytest.approx(0.0)
    assert pair.ks_D == 0.0
    assert pair.ks_p == 1.0
    assert pair.stars == ""

    pair = comparison.get("trolls", "twitter")
    assert pair.percent_change == pytest.approx(-50.0)
    assert pair.ks_D == 1.0
    assert pair.ks_p < 1e-6
    assert pair.stars == "**"

    for source, destination in [("twitter", "trolls"), ("twitter", "twitter")]:
        pair = comparison.get(source, destination)
        assert pair.status == "insufficient"
        assert pair.ks_D is None

    rows = comparison.rows()
    assert len(rows[0]) == len(comparison.header)
    assert rows[2][2:] == ["insufficient", "", "", "", "", "", ""]

    with pytest.raises(KeyError):
        comparison.get("trolls", "pol")


def test_impact_rows_with_comparison():
    from hawkesweb.main.influence import ImpactMatrix, compare_categories, impact_matrix

    russian = [[[0.1] * 50, [0.1] * 50], [[], [0.2]]]
    other = [[[0.1] * 50, [0.2] * 50], [[0.5], []]]
    comparison = compare_categories(get_aggregate(russian, other))

    matrix = impact_matrix([[0.0, 0.2], [0.0, 0.0]], [100, 50], ["trolls", "twitter"], "All")
    rows = matrix.rows(comparison)
    assert len(rows[0]) == len(ImpactMatrix.header + ImpactMatrix.comparison_header)
    assert ImpactMatrix.comparison_header == ["percent_change", "ks_D", "ks_p"]

    # Each row carries its own pair's comparison
    assert rows[1][:5] == ["All", "trolls", "twitter", 40.0, 40.0]
    assert rows[1][5] == pytest.approx(-50.0)
    assert rows[1][6] == 1.0
    assert rows[2][5:] == ["", "", ""]

    # Without a comparison the rows stay as they were
    assert matrix.rows()[1] == ["All", "trolls", "twitter", 40.0, 40.0]


def test_direct_impact_matches_parents():
    from hawkesweb.main.hawkes import (
        FitConfig,
        HawkesParams,
        SimulationSpec,
        aggregate,
        fit_corpus,
        simulate_corpus,
    )
    from hawkesweb.main.influence import direct_impact, true_parent_fractions

    # Many short URLs with little background, as in real sharing data
    params = HawkesParams(mu=[0.05, 0.1], W=[[0.3, 0.2], [0.1, 0.4]], beta=1.0)
    corpus = simulate_corpus(SimulationSpec(params, horizon_T=500, seed=8), 200)
    counts = sum(seq.counts(2) for seq in corpus)

    fits = fit_corpus(corpus, FitConfig(), K=2)
    result = aggregate(fits, ["trolls", "twitter"])
    assert result.retained["All"] > 150

    # Estimated from the fitted mean weights, within 3 percentage points
    truth = true_parent_fractions(corpus, 2)
    estimate = direct_impact(result.mean_W["All"], counts)
    np.testing.assert_allclose(estimate, truth, atol=3.0)

    # Every event has exactly one cause
    background = 100.0 - truth.sum(axis=0)
    assert np.all(background > 0)


def test_true_parent_fractions_requires_parents():
    from hawkesweb.exceptions import HawkeswebError
    from hawkesweb.main.hawkes import HawkesParams, SimulationSpec, simulate
    from hawkesweb.main.influence import true_parent_fractions

    seq = simulate(SimulationSpec(HawkesParams(mu=[1.0], W=[[0.1]]), horizon_T=10))
    with pytest.raises(HawkeswebError):
        true_parent_fractions([seq], 1)
