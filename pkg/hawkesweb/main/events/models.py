"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import enum
import functools
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from hawkesweb.exceptions import ConfigError, UnknownGroupError


class Category(str, enum.Enum):
    """The news category of a URL, a pure function of its canonical host."""

    RussianState = "RussianState"
    OtherNews = "OtherNews"
    Other = "Other"


# Categories reported in summaries and aggregates, in table order
REPORT_CATEGORIES = ("RussianState", "OtherNews", "All")


def in_report_category(category, report):
    """True if a URL of this category belongs to a report row (All takes all)"""
    return report == "All" or Category(category).value == report


@dataclass(frozen=True, order=True)
class GroupId:
    index: int
    label: str


class GroupMap:
    """
    The universe of monitored groups. Indices follow the order of the
    configured labels and are stable for a run.
    """

    def __init__(self, labels):
        labels = [x.strip() for x in labels if x and x.strip()]
        if len(labels) < 2:
            raise ConfigError("at least two groups are required", "groups", "labels")
        if len(set(labels)) != len(labels):
            raise ConfigError("group labels must be unique", "groups", "labels")
        self.groups = tuple(GroupId(i, label) for i, label in enumerate(labels))
        self.lookup = {g.label: g for g in self.groups}

    @property
    def labels(self):
        return [g.label for g in self.groups]

    @property
    def K(self):
        return len(self.groups)

    def __len__(self):
        return self.K

    def __iter__(self):
        return iter(self.groups)

    def __getitem__(self, key):
        """look up a group by label or by index"""
        if isinstance(key, (int, np.integer)):
            return self.groups[int(key)]
        if key not in self.lookup:
            raise UnknownGroupError(key, self.labels)
        return self.lookup[key]

    def __repr__(self):
        return "[groups][%s]" % ",".join(self.labels)


@dataclass(frozen=True)
class UrlRecord:
    raw: str
    canonical: str
    category: Category = Category.Other

    @property
    def host(self):
        return self.canonical.split("/", 1)[0].split("?", 1)[0]


@dataclass(frozen=True)
class RawEvent:
    """One ingested row: a raw URL posted by a group at an absolute time."""

    url: str
    group: str
    timestamp: float
    source_id: str = ""


@dataclass(frozen=True, order=True)
class Event:
    timestamp: float
    group: GroupId
    source_id: str = ""


@dataclass(frozen=True)
class EventSequence:
    """All events for one canonical URL, rebased to start at zero."""

    url: str
    category: Category
    events: Tuple[Event, ...]
    window_T: float
    parents: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    def __len__(self):
        return len(self.events)

    @functools.cached_property
    def times(self):
        return np.array([e.timestamp for e in self.events], dtype=float)

    @functools.cached_property
    def marks(self):
        return np.array([e.group.index for e in self.events], dtype=int)

    def counts(self, K):
        """events per group, as a length-K integer vector"""
        return np.bincount(self.marks, minlength=K).astype(int)
