"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from hawkesweb.exceptions import HawkeswebError, SupercriticalError
from hawkesweb.main.hawkes.params import stability
from hawkesweb.main.stats import ks_two_sample

bot = logging.getLogger("hawkesweb.main.influence")


def _weights_and_counts(mean_W, event_counts):
    W = np.asarray(mean_W, dtype=float)
    counts = np.asarray(event_counts, dtype=float).reshape(-1)
    if W.ndim != 2 or W.shape != (counts.size, counts.size):
        raise HawkeswebError(
            "weights of shape %s do not match %s event counts" % (W.shape, counts.size)
        )
    if np.any(counts < 0) or np.any(W < 0):
        raise HawkeswebError("weights and event counts must be non-negative")
    return W, counts


def _percent_of_destination(offspring, counts):
    """100 * offspring[s, d] * N_s / N_d, with destinations without events left absent (nan)"""
    pct = np.full(offspring.shape, np.nan)
    present = counts > 0
    pct[:, present] = 100.0 * offspring[:, present] * counts[:, None] / counts[present][None, :]
    return pct


def direct_impact(mean_W, event_counts):
    """
    Percentage of each destination group's events caused directly (first
    generation) by events of each source group. Columns of destinations
    without events are nan, meaning absent rather than zero.
    """
    W, counts = _weights_and_counts(mean_W, event_counts)
    return _percent_of_destination(W, counts)


def cascade_matrix(mean_W):
    """
    Expected descendants in d, over all generations, of one event in s:
    W + W^2 + ... = W (I - W)^-1. Refused for supercritical weights.
    """
    W = np.asarray(mean_W, dtype=float)
    status = stability(W)
    if not status.subcritical:
        raise SupercriticalError(status.spectral_radius)
    K = W.shape[0]
    return np.linalg.solve((np.eye(K) - W).T, W.T).T


def total_impact(mean_W, event_counts):
    """like direct_impact, but counting indirect generations through the cascade matrix"""
    W, counts = _weights_and_counts(mean_W, event_counts)
    return _percent_of_destination(cascade_matrix(W), counts)


@dataclass(frozen=True, eq=False)
class ImpactMatrix:
    labels: tuple
    direct_pct: np.ndarray
    total_pct: Optional[np.ndarray]
    event_counts: np.ndarray
    category: str = "All"

    header = ["category", "source", "destination", "direct_pct", "total_pct"]
    comparison_header = ["percent_change", "ks_D", "ks_p"]

    def rows(self, comparison=None):
        """
        One row per (source, destination) pair. With a CategoryComparison,
        each row also carries that pair's RussianState versus OtherNews
        columns, empty for insufficient pairs.
        """
        rows = []
        for s, source in enumerate(self.labels):
            for d, destination in enumerate(self.labels):
                total = None if self.total_pct is None else self.total_pct[s, d]
                direct = _pct(self.direct_pct[s, d])
                row = [self.category, source, destination, direct, _pct(total)]
                if comparison is not None:
                    pair = comparison.get(source, destination)
                    row += [_cell(pair.percent_change), _cell(pair.ks_D), _cell(pair.ks_p)]
                rows.append(row)
        return rows


def _cell(value):
    return "" if value is None else value


def _pct(value):
    """table cell for a percentage: empty when absent"""
    if value is None or not np.isfinite(value):
        return ""
    return round(float(value), 6)


def impact_matrix(mean_W, event_counts, labels, category="All"):
    """
    Direct and total impact side by side. Supercritical weights have no
    total impact; it is then left empty with a warning.
    """
    direct = direct_impact(mean_W, event_counts)
    try:
        total = total_impact(mean_W, event_counts)
    except SupercriticalError as e:
        bot.warning("No total impact for %s: %s" % (category, e))
        total = None
    return ImpactMatrix(
        labels=tuple(labels),
        direct_pct=direct,
        total_pct=total,
        event_counts=np.asarray(event_counts, dtype=int),
        category=category,
    )


# Category comparison


@dataclass(frozen=True)
class PairComparison:
    source: str
    destination: str
    status: str
    mean_russian: Optional[float] = None
    mean_other: Optional[float] = None
    percent_change: Optional[float] = None
    ks_D: Optional[float] = None
    ks_p: Optional[float] = None
    stars: str = ""

    @property
    def sufficient(self):
        return self.status == "ok"


@dataclass(frozen=True)
class CategoryComparison:
    pairs: List[PairComparison]

    header = [
        "source",
        "destination",
        "status",
        "mean_russian_state",
        "mean_other_news",
        "percent_change",
        "ks_D",
        "ks_p",
        "significance",
    ]

    def get(self, source, destination):
        for pair in self.pairs:
            if (pair.source, pair.destination) == (source, destination):
                return pair
        raise KeyError("%s -> %s" % (source, destination))

    def rows(self):
        return [
            [
                p.source,
                p.destination,
                p.status,
                _cell(p.mean_russian),
                _cell(p.mean_other),
                _cell(p.percent_change),
                _cell(p.ks_D),
                _cell(p.ks_p),
                p.stars,
            ]
            for p in self.pairs
        ]


def compare_categories(aggregate):
    """
    For every ordered (source, destination) pair, the percent change of the
    mean weight of RussianState URLs over OtherNews URLs and a two-sample KS
    test of their weight samples. Pairs lacking samples in either category
    are marked insufficient.
    """
    pairs = []
    for s, source in enumerate(aggregate.labels):
        for d, destination in enumerate(aggregate.labels):
            russian = aggregate.weight_samples["RussianState"][s][d]
            other = aggregate.weight_samples["OtherNews"][s][d]
            if not russian or not other:
                pairs.append(PairComparison(source, destination, "insufficient"))
                continue

            w_r, w_o = float(np.mean(russian)), float(np.mean(other))
            change = 100.0 * (w_r - w_o) / w_o if w_o > 0 else None
            ks = ks_two_sample(russian, other)
            pairs.append(
                PairComparison(
                    source,
                    destination,
                    "ok",
                    mean_russian=w_r,
                    mean_other=w_o,
                    percent_change=change,
                    ks_D=ks.D,
                    ks_p=ks.p,
                    stars=ks.stars(),
                )
            )
    return CategoryComparison(pairs)


def true_parent_fractions(sequences, K):
    """
    From simulated sequences with recorded parents, the percentage of each
    destination group's events whose parent is in each source group. This
    is the quantity direct_impact estimates.
    """
    parented = np.zeros((K, K))
    totals = np.zeros(K)
    for seq in sequences:
        if seq.parents is None:
            raise HawkeswebError("sequence %s has no recorded parents" % seq.url)
        marks = seq.marks
        totals += np.bincount(marks, minlength=K)
        for d, parent in zip(marks, seq.parents):
            if parent >= 0:
                parented[parent, d] += 1
    pct = np.full((K, K), np.nan)
    present = totals > 0
    pct[:, present] = 100.0 * parented[:, present] / totals[present][None, :]
    return pct
