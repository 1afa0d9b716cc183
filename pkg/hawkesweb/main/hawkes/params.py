"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import os
from dataclasses import dataclass

import numpy as np

from hawkesweb.exceptions import ArtifactError, HawkeswebError, SupercriticalError
from hawkesweb.utils.file import read_jsonl, write_jsonl

bot = logging.getLogger("hawkesweb.main.hawkes.params")


@dataclass(frozen=True, eq=False)
class HawkesParams:
    """
    Parameters of an exponential-kernel multivariate Hawkes process.

    mu[k] is the background rate of group k (events per time unit), W[s, d]
    the expected number of direct offspring in group d per event in group s,
    and beta the shared kernel decay.
    """

    mu: np.ndarray
    W: np.ndarray
    beta: float = 1.0

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float).reshape(-1)
        W = np.array(self.W, dtype=float)
        if W.ndim != 2 or W.shape != (mu.size, mu.size):
            raise HawkeswebError(
                "W must be %sx%s to match mu, found shape %s" % (mu.size, mu.size, W.shape)
            )
        if mu.size == 0:
            raise HawkeswebError("mu must have at least one entry")
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(W))):
            raise HawkeswebError("parameters must be finite")
        if np.any(mu < 0) or np.any(W < 0):
            raise HawkeswebError("background rates and weights must be non-negative")
        if not np.isfinite(self.beta) or self.beta <= 0:
            raise HawkeswebError("beta must be positive, found %s" % self.beta)
        mu.setflags(write=False)
        W.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def K(self):
        return self.mu.size

    def to_record(self):
        return {"mu": self.mu.tolist(), "W": self.W.tolist(), "beta": self.beta}

    @classmethod
    def from_record(cls, record):
        return cls(mu=record["mu"], W=record["W"], beta=record.get("beta", 1.0))

    def __eq__(self, other):
        if not isinstance(other, HawkesParams):
            return NotImplemented
        return (
            self.beta == other.beta
            and np.array_equal(self.mu, other.mu)
            and np.array_equal(self.W, other.W)
        )

    def __repr__(self):
        return "[params][K:%s][beta:%s]" % (self.K, self.beta)


@dataclass(frozen=True)
class Stability:
    spectral_radius: float
    subcritical: bool


def spectral_radius(W, tol=1e-9, max_iter=2000):
    """
    The spectral radius of a non-negative matrix by power iteration.

    Iteration runs on W + I, whose Perron root is strictly dominant even when
    W itself is periodic. For a positive iterate x the smallest and largest
    entries of (W + I) x / x bound the Perron root from both sides, so the
    iteration stops only once that bracket is narrower than the relative
    tolerance. Otherwise the dense eigenvalues are used instead.
    """
    W = np.asarray(W, dtype=float)
    K = W.shape[0]
    if not W.any():
        return 0.0

    shifted = W + np.eye(K)
    # The identity keeps every entry of x positive
    x = np.full(K, 1.0 / K)
    for _ in range(max_iter):
        y = shifted @ x
        ratios = y / x
        low, high = ratios.min() - 1.0, ratios.max() - 1.0
        if high - low <= tol * max(high, np.finfo(float).tiny):
            return max(0.0, float((low + high) / 2.0))
        x = y / y.sum()

    bot.debug("Power iteration did not settle, using dense eigenvalues.")
    return float(np.max(np.abs(np.linalg.eigvals(W))))


def stability(params):
    """the spectral radius of W and whether the process is subcritical"""
    W = params.W if isinstance(params, HawkesParams) else params
    radius = spectral_radius(W)
    return Stability(spectral_radius=radius, subcritical=radius < 1)


def stationary_rates(params):
    """
    Long-run events per time unit for each group, (I - W^T)^-1 mu. Only
    defined for subcritical processes.
    """
    status = stability(params)
    if not status.subcritical:
        raise SupercriticalError(status.spectral_radius)
    return np.linalg.solve(np.eye(params.K) - params.W.T, params.mu)


def read_params(path):
    """read one HawkesParams per line of a line-json parameter file"""
    if not os.path.exists(path):
        raise ArtifactError(path, "parameter file does not exist")
    try:
        params = [HawkesParams.from_record(r) for r in read_jsonl(path)]
    except (KeyError, ValueError, TypeError, HawkeswebError) as e:
        raise ArtifactError(path, "malformed parameters: %s" % e)
    if not params:
        raise ArtifactError(path, "no parameters found")
    return params


def write_params(params, path):
    return write_jsonl((p.to_record() for p in params), path)
