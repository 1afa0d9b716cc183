"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging

import numpy as np
from scipy import stats

from hawkesweb.defaults import HAWKESWEB_TIE_EPSILON
from hawkesweb.exceptions import EmptySampleError, InvariantViolation, WindowRangeError

bot = logging.getLogger("hawkesweb.main.hawkes.model")


def group_index(k):
    """accept a GroupId or a plain integer index"""
    return int(getattr(k, "index", k))


def event_arrays(seq, epsilon=HAWKESWEB_TIE_EPSILON):
    """
    Times and group indices of a sequence as arrays. Exact ties are pushed
    apart by epsilon in sequence order, or by one representable step where
    epsilon is below the float spacing at that time, so the returned times
    are strictly increasing.
    """
    times = np.array(seq.times, dtype=float)
    marks = np.array(seq.marks, dtype=int)
    if times.size > 1 and np.any(np.diff(times) <= 0):
        for i in range(1, times.size):
            if times[i] <= times[i - 1]:
                times[i] = max(times[i - 1] + epsilon, np.nextafter(times[i - 1], np.inf))
    return times, marks


def kernel_sums(times, marks, K, beta):
    """
    A[i, s] = sum over earlier events j of group s of beta * exp(-beta (t_i - t_j)),
    accumulated with the exponential recursion in one pass.
    """
    A = np.zeros((times.size, K))
    state = np.zeros(K)
    previous = 0.0
    for i, (t, g) in enumerate(zip(times, marks)):
        state *= np.exp(-beta * (t - previous))
        A[i] = state
        state[g] += beta
        previous = t
    return A


def intensity(params, seq, t, k):
    """
    The conditional intensity of group k at time t, with only events strictly
    before t contributing.
    """
    if t < 0 or t > seq.window_T:
        raise WindowRangeError(t, seq.window_T)
    k = group_index(k)
    times, marks = seq.times, seq.marks
    before = times < t
    decay = params.beta * np.exp(-params.beta * (t - times[before]))
    return float(params.mu[k] + np.sum(params.W[marks[before], k] * decay))


def compensator(params, seq, t):
    """the integral of each group's intensity over [0, t], as a length-K vector"""
    if t < 0 or t > seq.window_T:
        raise WindowRangeError(t, seq.window_T)
    times, marks = seq.times, seq.marks
    before = times < t
    mass = 1.0 - np.exp(-params.beta * (t - times[before]))
    excited = params.W[marks[before]].T @ mass if before.any() else np.zeros(params.K)
    return params.mu * t + excited


def event_intensities(params, times, marks, A=None):
    """the intensity of each event's own group at its own time"""
    if A is None:
        A = kernel_sums(times, marks, params.K, params.beta)
    return params.mu[marks] + np.einsum("is,si->i", A, params.W[:, marks])


def log_likelihood(params, seq, T=None):
    """
    The exponential-kernel log-likelihood of a sequence on [0, T]. When any
    event has zero intensity the likelihood is degenerate and -inf is
    returned with a warning.
    """
    times, marks = event_arrays(seq)
    T = seq.window_T if T is None else T
    if times.size and T < seq.times[-1]:
        raise WindowRangeError(seq.times[-1], T)
    T = max(T, times[-1]) if times.size else T

    rates = event_intensities(params, times, marks)
    if np.any(rates <= 0):
        bot.warning("Degenerate likelihood for %s: an event has zero intensity." % seq.url)
        return -np.inf

    mass = 1.0 - np.exp(-params.beta * (T - times))
    total = params.mu.sum() * T + np.sum(params.W[marks].sum(axis=1) * mass)
    return float(np.sum(np.log(rates)) - total)


def responsibilities(params, seq):
    """
    The branching-structure posterior of every event. Returns the background
    probability of each event and, per source group, the probability that
    its parent lies in that group. Each event's row sums to one.
    """
    times, marks = event_arrays(seq)
    A = kernel_sums(times, marks, params.K, params.beta)
    return branching_posterior(params.mu, params.W, A, marks)


def branching_posterior(mu, W, A, marks):
    excited = A * W[:, marks].T
    total = mu[marks] + excited.sum(axis=1)
    if np.any(total <= 0):
        raise InvariantViolation(
            "all responsibilities are zero for %s events" % int(np.sum(total <= 0))
        )
    return mu[marks] / total, excited / total[:, None]


def time_rescaling(params, seq):
    """
    Compensator increments between consecutive events of the same group,
    pooled over groups, and the p-value of a one-sample KS test of them
    against the unit exponential. Well-specified parameters give p values
    that are uniform, so small values flag a poor fit.
    """
    times, marks = event_arrays(seq)
    if times.size == 0:
        raise EmptySampleError("event sequence")

    K = params.K
    A = kernel_sums(times, marks, K, params.beta)

    # Events of each group strictly before each event, for the closed form
    onehot = np.eye(K)[marks]
    seen = np.cumsum(onehot, axis=0) - onehot
    integrated = params.mu[None, :] * times[:, None] + (seen - A / params.beta) @ params.W

    residuals = []
    for k in range(K):
        own = integrated[marks == k, k]
        if own.size:
            residuals.append(np.diff(np.concatenate([[0.0], own])))
    residuals = np.concatenate(residuals)
    return residuals, float(stats.kstest(residuals, "expon").pvalue)
