"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import os
from collections import OrderedDict, defaultdict

import pandas as pd

from hawkesweb.defaults import HAWKESWEB_TIME_UNITS
from hawkesweb.exceptions import ArtifactError, ConfigError
from hawkesweb.utils.file import read_jsonl, write_jsonl

from .models import (
    REPORT_CATEGORIES,
    Category,
    Event,
    EventSequence,
    RawEvent,
    in_report_category,
)
from .urls import UrlResolver

bot = logging.getLogger("hawkesweb.main.events.sequences")

HORIZON_POLICIES = ("per-url", "global")


def read_events(path, unit="hours"):
    """
    Read event rows from a delimited or line-json file with the columns
    url, group, timestamp (ISO 8601, or timestamp_iso8601) and an optional
    source_id. Timestamps become absolute times in the requested unit.
    """
    if unit not in HAWKESWEB_TIME_UNITS:
        raise ConfigError("unknown time unit %s" % unit, "time", "unit")
    if not os.path.exists(path):
        raise ArtifactError(path, "events file does not exist")

    try:
        if path.endswith((".jsonl", ".ndjson", ".json")):
            # Date inference would turn timestamp columns into nanosecond integers
            df = pd.read_json(
                path, lines=True, dtype=False, convert_dates=False, keep_default_dates=False
            )
        else:
            sep = "\t" if path.endswith((".tsv", ".tab")) else ","
            df = pd.read_csv(path, dtype=str, sep=sep, keep_default_na=False)
    except (pd.errors.EmptyDataError, ValueError) as e:
        if os.path.getsize(path) == 0:
            bot.warning("Events file %s is empty." % path)
            return []
        raise ArtifactError(path, str(e))

    if df.empty:
        bot.warning("Events file %s has no rows." % path)
        return []

    df.columns = [str(c).strip().lower() for c in df.columns]
    if "timestamp" not in df.columns and "timestamp_iso8601" in df.columns:
        df = df.rename(columns={"timestamp_iso8601": "timestamp"})
    for required in ["url", "group", "timestamp"]:
        if required not in df.columns:
            raise ArtifactError(path, "missing required column %s" % required)
    if "source_id" not in df.columns:
        df["source_id"] = ""

    times = to_time_units(df["timestamp"], unit, path)
    return [
        RawEvent(url=str(url), group=str(group).strip(), timestamp=float(t), source_id=sid)
        for url, group, t, sid in zip(
            df["url"], df["group"], times, df["source_id"].fillna("").astype(str)
        )
    ]


def to_time_units(column, unit, path="events"):
    """convert ISO 8601 timestamps (or plain numbers, already in the unit)
    to floats in the requested unit since the Unix epoch
    """
    is_datetime = pd.api.types.is_datetime64_any_dtype(column)
    if not is_datetime:
        numeric = pd.to_numeric(column, errors="coerce")
        if numeric.notna().all():
            return numeric.astype(float).tolist()
    try:
        if is_datetime:
            stamps = pd.to_datetime(column, utc=True)
        else:
            stamps = pd.to_datetime(column, utc=True, format="ISO8601")
    except (ValueError, TypeError) as e:
        raise ArtifactError(path, "unparseable timestamp: %s" % e)
    epoch = pd.Timestamp(0, tz="UTC")
    seconds = (stamps - epoch).dt.total_seconds()
    return (seconds / HAWKESWEB_TIME_UNITS[unit]).tolist()


def build_sequences(
    rows,
    group_map,
    min_total_events=1,
    resolver=None,
    horizon="per-url",
    padding=24.0,
    global_horizon=None,
):
    """
    Group ingested rows into one EventSequence per canonical URL.

    Rows are canonicalized through the resolver, exact duplicates (url,
    group, source_id, timestamp) are dropped, and each URL's events are
    rebased so its first event is at zero. URLs with fewer than
    min_total_events events are left out. Sequences come back sorted by URL.
    """
    if horizon not in HORIZON_POLICIES:
        raise ConfigError("horizon must be one of %s" % ", ".join(HORIZON_POLICIES))
    if horizon == "global" and (global_horizon is None or global_horizon <= 0):
        raise ConfigError("a positive global_horizon is required", "time", "global_horizon")
    if padding < 0:
        raise ConfigError("padding must be non-negative", "time", "padding")

    resolver = resolver or UrlResolver()
    by_url = defaultdict(list)
    categories = {}
    seen = set()
    last_time = {}
    unordered = set()
    duplicates = 0

    for row in rows:
        group = group_map[row.group]
        record = resolver.resolve(row.url)
        key = (record.canonical, group.index, row.source_id, row.timestamp)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)

        # The input order should already be a clock, per URL
        if row.timestamp < last_time.get(record.canonical, row.timestamp):
            unordered.add(record.canonical)
        last_time[record.canonical] = row.timestamp

        categories[record.canonical] = record.category
        by_url[record.canonical].append(Event(row.timestamp, group, row.source_id))

    if duplicates:
        bot.warning("Dropped %s duplicate rows." % duplicates)
    if unordered:
        bot.warning("Re-sorted rows for %s URLs with a non-monotone clock." % len(unordered))

    sequences = []
    for url in sorted(by_url):
        events = sorted(by_url[url])
        if len(events) < min_total_events:
            continue
        origin = events[0].timestamp
        events = tuple(Event(e.timestamp - origin, e.group, e.source_id) for e in events)
        last = events[-1].timestamp
        if horizon == "global":
            window_T = max(float(global_horizon), last)
        else:
            window_T = last + padding
        if window_T <= 0:
            window_T = padding or 1.0
        sequences.append(EventSequence(url, categories[url], events, window_T))

    bot.info("Built %s sequences from %s unique rows." % (len(sequences), len(seen)))
    return sequences


class CountsSummary:
    """
    URLs with at least one event and total events, per report category and
    group, optionally with the mean background rate of each cell. The
    layout mirrors a metric x category block table with one column per group.
    """

    metrics = ("URLs", "Events", "Mean lambda0")

    def __init__(self, labels, urls, events, mean_mu=None):
        self.labels = list(labels)
        self.urls = urls
        self.events = events
        self.mean_mu = mean_mu

    def with_mean_mu(self, mean_mu):
        return CountsSummary(self.labels, self.urls, self.events, mean_mu)

    def event_counts(self, category="All"):
        return [self.events[category][label] for label in self.labels]

    def header(self):
        return ["metric", "category"] + self.labels

    def rows(self):
        """table rows in report order; mean background rows only when known"""
        rows = []
        for metric, table in [("URLs", self.urls), ("Events", self.events)]:
            for category in REPORT_CATEGORIES:
                rows.append([metric, category] + [table[category][x] for x in self.labels])
        if self.mean_mu is not None:
            for category in REPORT_CATEGORIES:
                values = []
                for label in self.labels:
                    value = self.mean_mu.get(category, {}).get(label)
                    values.append("" if value is None else round(value, 4))
                rows.append(["Mean lambda0", category] + values)
        return rows

    def records(self):
        return [dict(zip(self.header(), row)) for row in self.rows()]

    @classmethod
    def from_records(cls, records, labels, path="summary"):
        """rebuild a summary from its line-json records, for the given group labels"""
        records = list(records)
        if not records:
            raise ArtifactError(path, "empty counts summary")
        found = {k for k in records[0] if k not in ("metric", "category")}
        if found != set(labels):
            raise ArtifactError(
                path, "groups %s do not match %s" % (sorted(found), ", ".join(labels))
            )
        urls, events = OrderedDict(), OrderedDict()
        for record in records:
            target = {"URLs": urls, "Events": events}.get(record.get("metric"))
            if target is not None:
                target[record["category"]] = {x: int(record[x]) for x in labels}
        if set(urls) != set(REPORT_CATEGORIES) or set(events) != set(REPORT_CATEGORIES):
            raise ArtifactError(path, "counts summary is missing category rows")
        return cls(labels, urls, events)


def count_summary(sequences, group_map):
    """per (report category, group) URL counts and event counts"""
    labels = group_map.labels
    urls = OrderedDict((c, OrderedDict((x, 0) for x in labels)) for c in REPORT_CATEGORIES)
    events = OrderedDict((c, OrderedDict((x, 0) for x in labels)) for c in REPORT_CATEGORIES)

    for seq in sequences:
        counts = seq.counts(group_map.K)
        for category in REPORT_CATEGORIES:
            if not in_report_category(seq.category, category):
                continue
            for group in group_map:
                n = int(counts[group.index])
                events[category][group.label] += n
                if n > 0:
                    urls[category][group.label] += 1
    return CountsSummary(labels, urls, events)


# Bundle files


def sequence_to_record(seq):
    record = {
        "url": seq.url,
        "category": Category(seq.category).value,
        "window_T": seq.window_T,
        "events": [[e.group.label, e.timestamp, e.source_id] for e in seq.events],
    }
    if seq.parents is not None:
        record["parents"] = list(seq.parents)
    return record


def record_to_sequence(record, group_map):
    events = tuple(
        Event(float(t), group_map[label], str(sid or "")) for label, t, sid in record["events"]
    )
    parents = record.get("parents")
    return EventSequence(
        url=record["url"],
        category=Category(record.get("category", "Other")),
        events=events,
        window_T=float(record["window_T"]),
        parents=tuple(parents) if parents is not None else None,
    )


def write_bundle(sequences, filename):
    """write sequences as line-json, one sequence per line"""
    return write_jsonl((sequence_to_record(s) for s in sequences), filename)


def read_bundle(filename, group_map):
    """read a sequence bundle written by write_bundle"""
    if not os.path.exists(filename):
        raise ArtifactError(filename, "sequence bundle does not exist")
    try:
        return [record_to_sequence(r, group_map) for r in read_jsonl(filename)]
    except (KeyError, ValueError, TypeError) as e:
        raise ArtifactError(filename, "malformed sequence record: %s" % e)
