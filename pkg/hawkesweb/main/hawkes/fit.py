"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import os
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Optional, Tuple

import numpy as np
from scipy.special import xlogy

from hawkesweb.exceptions import ArtifactError, ConfigError, InvariantViolation
from hawkesweb.logger import bot as message
from hawkesweb.main.events.models import REPORT_CATEGORIES, Category, in_report_category
from hawkesweb.utils.file import read_json, read_jsonl, write_json, write_jsonl

from .model import branching_posterior, event_arrays, kernel_sums
from .params import HawkesParams

bot = logging.getLogger("hawkesweb.main.hawkes.fit")

# Relative slack allowed on the per-iteration likelihood increase
MONOTONE_SLACK = 1e-10

# Grid values whose likelihoods differ by less than this are tied
TIE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class FitConfig:
    beta_grid: Tuple[float, ...] = (1.0,)
    max_iter: int = 500
    tol: float = 1e-6
    mu_prior: Tuple[float, float] = (1.01, 0.01)
    w_prior: Tuple[float, float] = (1.01, 0.01)
    min_events_full_fit: int = 3
    include_degenerate: bool = False
    n_groups: Optional[int] = None

    def __post_init__(self):
        if not self.beta_grid:
            raise ConfigError("beta_grid must not be empty", "fit", "beta_grid")
        if any(not np.isfinite(b) or b <= 0 for b in self.beta_grid):
            raise ConfigError("beta_grid values must be positive", "fit", "beta_grid")
        if not self.tol > 0:
            raise ConfigError("tol must be positive", "fit", "tol")
        if self.max_iter < 1:
            raise ConfigError("max_iter must be at least 1", "fit", "max_iter")
        for key in ["mu_prior", "w_prior"]:
            shape, rate = getattr(self, key)
            if not (shape > 0 and rate > 0):
                raise ConfigError("prior shape and rate must be positive", "fit", key)
            # The MAP update needs a mode, which a gamma prior has only for shape >= 1
            if shape < 1:
                raise ConfigError("prior shape must be at least 1", "fit", key)
        object.__setattr__(self, "beta_grid", tuple(float(b) for b in self.beta_grid))


@dataclass(frozen=True)
class FitResult:
    params: Optional[HawkesParams]
    loglik: float
    iterations: int
    converged: bool
    n_events_per_group: Tuple[int, ...]
    degenerate: bool
    url: str = ""
    category: Category = Category.Other
    beta: Optional[float] = None
    trace: Tuple[float, ...] = field(default=(), compare=False)
    error: Optional[str] = None

    @property
    def ok(self):
        return self.error is None and self.params is not None

    def to_record(self):
        return {
            "url": self.url,
            "category": Category(self.category).value,
            "params": self.params.to_record() if self.params is not None else None,
            "loglik": self.loglik if np.isfinite(self.loglik) else None,
            "iterations": self.iterations,
            "n_events_per_group": list(self.n_events_per_group),
            "beta": self.beta,
            "flags": {
                "converged": self.converged,
                "degenerate": self.degenerate,
                "error": self.error,
            },
        }

    @classmethod
    def from_record(cls, record):
        flags = record.get("flags", {})
        params = record.get("params")
        loglik = record.get("loglik")
        return cls(
            params=HawkesParams.from_record(params) if params else None,
            loglik=float("nan") if loglik is None else float(loglik),
            iterations=int(record.get("iterations", 0)),
            converged=bool(flags.get("converged", False)),
            n_events_per_group=tuple(record["n_events_per_group"]),
            degenerate=bool(flags.get("degenerate", False)),
            url=record.get("url", ""),
            category=Category(record.get("category", "Other")),
            beta=record.get("beta"),
            error=flags.get("error"),
        )


def penalized_loglik(mu, W, rates, G, T, config):
    """log-likelihood from precomputed event intensities plus the gamma log-priors"""
    if np.any(rates <= 0):
        return -np.inf
    a0, b0 = config.mu_prior
    a1, b1 = config.w_prior
    loglik = np.sum(np.log(rates)) - mu.sum() * T - np.sum(W * G[:, None])
    prior = np.sum(xlogy(a0 - 1, mu) - b0 * mu) + np.sum(xlogy(a1 - 1, W) - b1 * W)
    return float(loglik + prior)


def em_fit(seq, config, beta=None, K=None):
    """
    Maximum a posteriori fit of one sequence by expectation maximization
    over its latent branching structure, at a fixed decay beta.

    The E-step splits each event between the background and the groups of
    its possible parents. The M-step has the closed form

        mu_k   = (a0 - 1 + sum of background shares in k) / (b0 + T)
        W[s,d] = (a1 - 1 + sum over d-events of shares from s) / (b1 + G_s)

    where G_s is the kernel mass of group-s events inside the window.
    """
    K = K or config.n_groups or int(max(seq.marks, default=-1)) + 1
    beta = float(config.beta_grid[0] if beta is None else beta)
    a0, b0 = config.mu_prior
    a1, b1 = config.w_prior

    times, marks = event_arrays(seq)
    T = max(seq.window_T, times[-1]) if times.size else seq.window_T
    counts = np.bincount(marks, minlength=K)
    onehot = np.eye(K)[marks]

    A = kernel_sums(times, marks, K, beta)
    G = onehot.T @ (1.0 - np.exp(-beta * (T - times)))

    # Start from half the observed rate with small positive weights
    mu = 0.5 * (counts + a0 - 1) / (b0 + T) + 1e-12
    W = np.full((K, K), 0.5 / K)

    rates = mu[marks] + np.einsum("is,si->i", A, W[:, marks])
    current = penalized_loglik(mu, W, rates, G, T, config)
    trace = [current]
    converged = False

    iteration = 0
    for iteration in range(1, config.max_iter + 1):
        background, by_source = branching_posterior(mu, W, A, marks)

        mu = (a0 - 1 + onehot.T @ background) / (b0 + T)
        W = np.maximum(a1 - 1 + by_source.T @ onehot, 0.0) / (b1 + G)[:, None]

        rates = mu[marks] + np.einsum("is,si->i", A, W[:, marks])
        updated = penalized_loglik(mu, W, rates, G, T, config)
        if updated < current - MONOTONE_SLACK * max(1.0, abs(current)):
            raise InvariantViolation(
                "penalized log-likelihood decreased from %r to %r at iteration %s"
                % (current, updated, iteration)
            )
        trace.append(updated)
        change = abs(updated - current)
        current = updated
        if change <= config.tol * abs(current):
            converged = True
            break

    if not converged:
        bot.warning("%s did not converge in %s iterations." % (seq.url, config.max_iter))

    return FitResult(
        params=HawkesParams(mu=mu, W=W, beta=beta),
        loglik=current,
        iterations=iteration,
        converged=converged,
        n_events_per_group=tuple(int(c) for c in counts),
        degenerate=len(seq) < config.min_events_full_fit,
        url=seq.url,
        category=seq.category,
        beta=beta,
        trace=tuple(trace),
    )


def select_beta(seq, config, K=None):
    """
    Fit at every grid decay and keep the best penalized likelihood. Ties
    (within TIE_TOLERANCE) go to the smaller decay.
    """
    best = None
    for beta in sorted(config.beta_grid):
        result = em_fit(seq, config, beta=beta, K=K)
        if best is None or result.loglik > best.loglik + TIE_TOLERANCE:
            best = result
        bot.debug("%s beta=%s loglik=%s" % (seq.url, beta, result.loglik))
    return best.beta, best


def failed_fit(seq, config, K, error):
    return FitResult(
        params=None,
        loglik=float("nan"),
        iterations=0,
        converged=False,
        n_events_per_group=tuple(int(c) for c in seq.counts(K)),
        degenerate=len(seq) < config.min_events_full_fit,
        url=seq.url,
        category=seq.category,
        error=error,
    )


def fit_one(task):
    """fit one sequence, recording a failure instead of raising"""
    seq, config, K = task
    try:
        return select_beta(seq, config, K=K)[1]
    except Exception as e:
        bot.warning("Fit failed for %s: %s" % (seq.url, e))
        return failed_fit(seq, config, K, "%s: %s" % (type(e).__name__, e))


def fit_corpus(sequences, config, K=None, parallel=1):
    """
    Fit every sequence independently, in input order. With parallel > 1 the
    fits run in a process pool; each fit is deterministic, so the results
    match a serial run exactly.
    """
    sequences = list(sequences)
    if not sequences:
        return []

    K = K or config.n_groups or 1 + max(int(max(s.marks, default=0)) for s in sequences)
    tasks = [(seq, config, K) for seq in sequences]
    total = len(tasks)
    results = []

    if parallel and parallel > 1 and total > 1:
        bot.info("Fitting %s sequences with %s workers." % (total, parallel))
        with Pool(processes=min(parallel, total)) as pool:
            for result in pool.imap(fit_one, tasks, chunksize=max(1, total // (parallel * 4))):
                results.append(result)
                message.show_progress(len(results), total, prefix="Fitting")
    else:
        bot.info("Fitting %s sequences." % total)
        for task in tasks:
            results.append(fit_one(task))
            message.show_progress(len(results), total, prefix="Fitting")

    failed = sum(1 for r in results if r.error)
    if failed:
        bot.warning("%s of %s fits failed, see the error field of each result." % (failed, total))
    return results


def write_fits(results, path):
    return write_jsonl((r.to_record() for r in results), path)


def read_fits(path):
    if not os.path.exists(path):
        raise ArtifactError(path, "fits file does not exist")
    try:
        return [FitResult.from_record(r) for r in read_jsonl(path)]
    except (KeyError, ValueError, TypeError) as e:
        raise ArtifactError(path, "malformed fit record: %s" % e)


# Aggregation


AGGREGATE_CATEGORIES = ("All", "RussianState", "OtherNews")


@dataclass
class AggregateResult:
    """
    Per-category means of per-URL fits. A weight sample for (s, d) comes
    from each retained fit whose source group s had at least one event, and
    a background sample for k from each retained fit where k had an event.
    Categories without any retained fit carry None as their means.
    """

    labels: Tuple[str, ...]
    mean_W: dict
    mean_mu: dict
    weight_samples: dict
    mu_samples: dict
    retained: dict

    @property
    def K(self):
        return len(self.labels)

    def is_empty(self, category):
        return self.mean_W.get(category) is None

    def samples(self, category, s, d):
        return self.weight_samples[category][s][d]

    def to_dict(self):
        def listed(value):
            if value is None:
                return None
            value = np.asarray(value, dtype=float)
            return np.where(np.isfinite(value), value, None).tolist()

        return {
            "labels": list(self.labels),
            "categories": {
                category: {
                    "empty": self.is_empty(category),
                    "retained": self.retained[category],
                    "mean_W": listed(self.mean_W[category]),
                    "mean_mu": listed(self.mean_mu[category]),
                    "weight_samples": self.weight_samples[category],
                    "mu_samples": self.mu_samples[category],
                }
                for category in AGGREGATE_CATEGORIES
            },
        }

    @classmethod
    def from_dict(cls, data):
        labels = tuple(data["labels"])
        mean_W, mean_mu, weights, mus, retained = {}, {}, {}, {}, {}
        for category in AGGREGATE_CATEGORIES:
            entry = data["categories"][category]
            mean_W[category] = (
                None if entry["mean_W"] is None else np.array(entry["mean_W"], dtype=float)
            )
            mean_mu[category] = (
                None if entry["mean_mu"] is None else np.array(entry["mean_mu"], dtype=float)
            )
            weights[category] = entry["weight_samples"]
            mus[category] = entry["mu_samples"]
            retained[category] = entry["retained"]
        return cls(labels, mean_W, mean_mu, weights, mus, retained)

    def rows(self):
        """matrix-table rows: category, kind, source, destination, mean, samples"""
        rows = []
        for category in AGGREGATE_CATEGORIES:
            if self.is_empty(category):
                rows.append([category, "empty", "", "", "", 0])
                continue
            for k, label in enumerate(self.labels):
                mean = self.mean_mu[category][k]
                rows.append(
                    [category, "mu", label, "", _cell(mean), len(self.mu_samples[category][k])]
                )
            for s, source in enumerate(self.labels):
                for d, destination in enumerate(self.labels):
                    rows.append(
                        [
                            category,
                            "W",
                            source,
                            destination,
                            _cell(self.mean_W[category][s][d]),
                            len(self.weight_samples[category][s][d]),
                        ]
                    )
        return rows

    header = ["category", "kind", "source", "destination", "mean", "samples"]


def _cell(value):
    return "" if value is None or not np.isfinite(value) else float(value)


def _mean(samples):
    return float(np.mean(samples)) if samples else float("nan")


def aggregate(fits, labels, include_degenerate=False):
    """
    Average per-URL fits into per-category mean weights and background
    rates. Failed fits are always left out; degenerate ones unless
    include_degenerate is set.
    """
    labels = tuple(labels)
    K = len(labels)
    mean_W, mean_mu, weights, mus, retained = {}, {}, {}, {}, {}

    for category in AGGREGATE_CATEGORIES:
        kept = [
            f
            for f in fits
            if f.ok
            and in_report_category(f.category, category)
            and (include_degenerate or not f.degenerate)
        ]
        for f in kept:
            if f.params.K != K:
                raise ArtifactError(f.url, "fit has %s groups, expected %s" % (f.params.K, K))

        # A fit only says something about sources it saw events from
        weights[category] = [
            [
                [float(f.params.W[s, d]) for f in kept if f.n_events_per_group[s] > 0]
                for d in range(K)
            ]
            for s in range(K)
        ]
        mus[category] = [
            [float(f.params.mu[k]) for f in kept if f.n_events_per_group[k] > 0] for k in range(K)
        ]
        retained[category] = len(kept)

        if not kept:
            bot.warning("No retained fits for category %s." % category)
            mean_W[category] = None
            mean_mu[category] = None
            continue
        mean_W[category] = np.array(
            [[_mean(weights[category][s][d]) for d in range(K)] for s in range(K)]
        )
        mean_mu[category] = np.array([_mean(mus[category][k]) for k in range(K)])

    return AggregateResult(labels, mean_W, mean_mu, weights, mus, retained)


def mean_mu_table(result):
    """mean background rates keyed by report category then label, for the counts summary"""
    table = {}
    for category in REPORT_CATEGORIES:
        means = result.mean_mu.get(category)
        table[category] = {}
        if means is None:
            continue
        for k, label in enumerate(result.labels):
            if np.isfinite(means[k]):
                table[category][label] = float(means[k])
    return table


def write_aggregate(result, path):
    return write_json(result.to_dict(), path)


def read_aggregate(path):
    if not os.path.exists(path):
        raise ArtifactError(path, "aggregate file does not exist")
    try:
        return AggregateResult.from_dict(read_json(path))
    except (KeyError, ValueError, TypeError) as e:
        raise ArtifactError(path, "malformed aggregate: %s" % e)
