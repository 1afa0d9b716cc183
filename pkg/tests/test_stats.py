"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import itertools

import numpy as np
import pytest


def brute_force_D(a, b):
    """the KS distance by evaluating both step functions everywhere they change"""
    points = sorted(set(a) | set(b))
    return max(
        abs(sum(x <= p for x in a) / len(a) - sum(x <= p for x in b) / len(b)) for p in points
    )


def test_ecdf():
    from hawkesweb.main.stats import ecdf

    F = ecdf([3, 1, 2])
    assert F(2) == pytest.approx(2 / 3)
    assert F(0.5) == 0.0
    assert F(3) == 1.0
    assert F(100) == 1.0
    assert F.points() == [(1.0, pytest.approx(1 / 3)), (2.0, pytest.approx(2 / 3)), (3.0, 1.0)]

    F = ecdf([5, 5, 5])
    assert F(5) == 1.0
    assert F(4.999) == 0.0
    assert F.points() == [(5.0, 1.0)]

    samples = np.random.default_rng(0).normal(size=100)
    F = ecdf(samples)
    ranks = np.argsort(np.argsort(samples)) + 1
    np.testing.assert_allclose(F(samples), ranks / 100.0)


def test_ecdf_rejects():
    from hawkesweb.exceptions import EmptySampleError, HawkeswebError
    from hawkesweb.main.stats import ecdf, ks_two_sample

    with pytest.raises(EmptySampleError):
        ecdf([])
    with pytest.raises(HawkeswebError):
        ecdf([1.0, float("inf")])
    with pytest.raises(EmptySampleError):
        ks_two_sample([1.0], [])


def test_ks_examples():
    from hawkesweb.main.stats import ks_two_sample

    result = ks_two_sample([0.3, 0.1, 0.2], [0.3, 0.1, 0.2])
    assert (result.D, result.p) == (0.0, 1.0)

    assert ks_two_sample([1, 2, 3, 4], [5, 6, 7, 8]).D == 1.0
    assert ks_two_sample([1, 2], [1.5, 2.5]).D == 0.5

    result = ks_two_sample([0.1] * 50, [0.2] * 50)
    assert result.D == 1.0
    assert result.p < 1e-6
    assert (result.n1, result.n2) == (50, 50)
    assert result.stars() == "**"


def test_ks_brute_force():
    from hawkesweb.main.stats import ks_two_sample

    alphabet = [1, 2, 3]
    samples = [
        list(s) for n in range(1, 4) for s in itertools.combinations_with_replacement(alphabet, n)
    ]
    for a, b in itertools.product(samples, repeat=2):
        assert ks_two_sample(a, b).D == pytest.approx(brute_force_D(a, b), abs=1e-12)

    rng = np.random.default_rng(1)
    for _ in range(200):
        a = rng.integers(1, 4, rng.integers(1, 7)).tolist()
        b = rng.integers(1, 4, rng.integers(1, 7)).tolist()
        assert ks_two_sample(a, b).D == pytest.approx(brute_force_D(a, b), abs=1e-12)


def test_ks_properties():
    from hawkesweb.main.stats import ks_two_sample

    rng = np.random.default_rng(2)
    a, b = rng.normal(size=30), rng.normal(0.5, 1.0, size=40)
    assert ks_two_sample(a, b).D == ks_two_sample(b, a).D
    assert ks_two_sample(np.exp(a), np.exp(b)).D == ks_two_sample(a, b).D
    assert 0.0 <= ks_two_sample(a, b).p <= 1.0


def test_ks_calibration():
    from hawkesweb.main.stats import ks_two_sample

    rng = np.random.default_rng(1234)
    rejected = sum(
        ks_two_sample(rng.uniform(size=100), rng.uniform(size=100)).p < 0.05
        for _ in range(1000)
    )
    assert 0.03 <= rejected / 1000.0 <= 0.08


@pytest.mark.parametrize("p,stars", [(0.2, ""), (0.04, "*"), (0.009, "**")])
def test_stars(p, stars):
    from hawkesweb.main.stats import KsResult

    assert KsResult(D=0.5, p=p, n1=3, n2=3).stars() == stars
