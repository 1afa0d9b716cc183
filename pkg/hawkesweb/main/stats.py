"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import kolmogorov

from hawkesweb.exceptions import EmptySampleError, HawkeswebError

bot = logging.getLogger("hawkesweb.main.stats")


def as_samples(samples, what="sample"):
    values = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples)
    values = values.astype(float).reshape(-1)
    if values.size == 0:
        raise EmptySampleError(what)
    if not np.all(np.isfinite(values)):
        raise HawkeswebError("%s contains non-finite values" % what)
    return values


@dataclass(frozen=True, eq=False)
class Ecdf:
    """
    A right-continuous empirical distribution function,
    F(x) = (number of samples <= x) / n.
    """

    sorted_samples: np.ndarray
    n: int

    def evaluate(self, x):
        """F at a point, or elementwise over an array of points"""
        counts = np.searchsorted(self.sorted_samples, x, side="right")
        if np.ndim(counts) == 0:
            return float(counts) / self.n
        return counts / float(self.n)

    __call__ = evaluate

    def points(self):
        """(x, F(x)) at every distinct sample value, the corners of the step plot"""
        xs = np.unique(self.sorted_samples)
        return list(zip(xs.tolist(), self.evaluate(xs).tolist()))


def ecdf(samples):
    values = np.sort(as_samples(samples))
    values.setflags(write=False)
    return Ecdf(sorted_samples=values, n=values.size)


@dataclass(frozen=True)
class KsResult:
    D: float
    p: float
    n1: int
    n2: int

    def stars(self):
        """* at p < 0.05 and ** at p < 0.01"""
        if self.p < 0.01:
            return "**"
        if self.p < 0.05:
            return "*"
        return ""


def ks_two_sample(a, b):
    """
    The two-sample Kolmogorov-Smirnov test.

    D is the largest gap between the two empirical distribution functions,
    found exactly by evaluating both at every point of the merged sample.
    The p-value comes from the asymptotic Kolmogorov distribution at
    (sqrt(m) + 0.12 + 0.11 / sqrt(m)) * D with m = n1 n2 / (n1 + n2).
    """
    a = np.sort(as_samples(a, "first sample"))
    b = np.sort(as_samples(b, "second sample"))
    n1, n2 = a.size, b.size

    merged = np.concatenate([a, b])
    cdf1 = np.searchsorted(a, merged, side="right") / float(n1)
    cdf2 = np.searchsorted(b, merged, side="right") / float(n2)
    D = float(np.max(np.abs(cdf1 - cdf2)))

    en = np.sqrt(n1 * n2 / float(n1 + n2))
    p = float(np.clip(kolmogorov((en + 0.12 + 0.11 / en) * D), 0.0, 1.0))
    return KsResult(D=D, p=p, n1=n1, n2=n2)
