"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from hawkesweb.exceptions import HawkeswebError, SupercriticalError
from hawkesweb.main.events.models import Category, Event, EventSequence, GroupId

from .params import HawkesParams, stability

bot = logging.getLogger("hawkesweb.main.hawkes.simulate")


@dataclass(frozen=True)
class SimulationSpec:
    """What to simulate: parameters, a horizon, and the seed that fixes the draw."""

    params: HawkesParams
    horizon_T: float
    seed: int = 0
    allow_supercritical: bool = False
    labels: Optional[Tuple[str, ...]] = None
    url: str = "simulated"
    category: Category = Category.Other

    def __post_init__(self):
        if not self.horizon_T > 0:
            raise HawkeswebError("horizon_T must be positive, found %s" % self.horizon_T)
        if self.labels is not None and len(self.labels) != self.params.K:
            raise HawkeswebError(
                "%s labels given for %s groups" % (len(self.labels), self.params.K)
            )

    def groups(self):
        labels = self.labels or tuple("g%s" % k for k in range(self.params.K))
        return [GroupId(k, label) for k, label in enumerate(labels)]

    def with_seed(self, seed, url=None):
        return replace(self, seed=seed, url=url or self.url)


def simulate(spec):
    """one seeded draw of the process on [0, horizon_T)"""
    sequence, _ = simulate_with_parents(spec)
    return replace(sequence, parents=None)


def simulate_with_parents(spec):
    """
    Ogata's modified thinning. Between events every intensity decays, so the
    total intensity right after the last accepted event bounds the process
    until the next one; the bound is recomputed after every candidate.

    Returns the sequence (with parents attached) and the parent list, where
    parents[i] is the source group of event i's parent or -1 for a
    background event.
    """
    params = spec.params
    status = stability(params)
    if not status.subcritical:
        if not spec.allow_supercritical:
            raise SupercriticalError(status.spectral_radius)
        bot.warning(
            "Simulating a supercritical process (spectral radius %.4f)."
            % status.spectral_radius
        )

    rng = np.random.default_rng(spec.seed)
    groups = spec.groups()
    mu, W, beta = params.mu, params.W, params.beta

    # state[s] is the summed kernel value of all past group-s events
    state = np.zeros(params.K)
    t = 0.0
    events, parents = [], []

    while True:
        bound = float(np.sum(mu + state @ W))
        if bound <= 0:
            break
        wait = rng.exponential(1.0 / bound)
        if t + wait >= spec.horizon_T:
            break
        t += wait
        state *= np.exp(-beta * wait)
        rates = mu + state @ W

        u = rng.uniform(0.0, bound)
        if u >= rates.sum():
            continue

        d = min(int(np.searchsorted(np.cumsum(rates), u, side="right")), params.K - 1)
        events.append(Event(t, groups[d]))
        parents.append(choose_parent(rng, mu[d], state * W[:, d]))
        state[d] += beta

    bot.debug("Simulated %s events for %s." % (len(events), spec.url))
    sequence = EventSequence(
        url=spec.url,
        category=spec.category,
        events=tuple(events),
        window_T=float(spec.horizon_T),
        parents=tuple(parents),
    )
    return sequence, parents


def choose_parent(rng, background, by_source):
    """pick the background (-1) or a source group, proportional to its rate"""
    u = rng.uniform(0.0, background + by_source.sum())
    if u < background:
        return -1
    return min(
        int(np.searchsorted(np.cumsum(by_source), u - background, side="right")),
        by_source.size - 1,
    )


def simulate_corpus(spec, count, prefix="simulated"):
    """
    count independent sequences with seeds spec.seed, spec.seed + 1, ...
    so a corpus is reproducible from one seed.
    """
    return [
        simulate_with_parents(spec.with_seed(spec.seed + i, url="%s/%s" % (prefix, i)))[0]
        for i in range(count)
    ]
