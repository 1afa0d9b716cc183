"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import math
import re
from collections import Counter, OrderedDict
from dataclasses import dataclass

import numpy as np
import pandas as pd

from hawkesweb.exceptions import ConfigError, EmptySampleError, HawkeswebError
from hawkesweb.main.stats import ecdf, ks_two_sample
from hawkesweb.utils.urls import registered_domain

bot = logging.getLogger("hawkesweb.main.characterize.analyses")

NGRAM_MODES = ("word", "char4", "word-bigram")


def _require(tweets, what="tweet archive"):
    if tweets is None or len(tweets) == 0:
        raise EmptySampleError(what)


def _utc(stamps):
    """a DatetimeIndex in UTC, reading naive times as UTC"""
    stamps = pd.DatetimeIndex(stamps)
    if stamps.tz is None:
        return stamps.tz_localize("UTC")
    return stamps.tz_convert("UTC")


def _ranked(counts, total, n):
    """(item, pct) pairs by descending share, ties broken lexicographically"""
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [(item, 100.0 * count / total) for item, count in ranked[:n]]


# Time


def temporal_histograms(tweets):
    """
    Normalized hour-of-day (24 bins) and hour-of-week (168 bins, Monday
    00:00 UTC is bin 0) histograms of tweet times.
    """
    _require(tweets)
    stamps = _utc(tweets["timestamp"])
    hours = np.asarray(stamps.hour)
    week = np.asarray(stamps.dayofweek) * 24 + hours
    day = np.bincount(hours, minlength=24).astype(float)
    weekly = np.bincount(week, minlength=168).astype(float)
    return day / day.sum(), weekly / weekly.sum()


def creation_timeline(accounts):
    """accounts created per UTC calendar day, days without creations left out"""
    dates = [a.creation_date for a in accounts if a.creation_date is not None]
    if not dates:
        raise EmptySampleError("account creation dates")
    days = _utc(dates).strftime("%Y-%m-%d")
    counts = Counter(days)
    return OrderedDict(sorted(counts.items()))


def tweets_per_day(account):
    """
    Average tweets per day since creation: the last observed statuses count
    over the days from creation to the last tweet (at least one day).
    """
    if account.creation_date is None or not account.tweet_times:
        raise HawkeswebError("account %s has no creation date or tweets" % account.user_id)
    days = (account.tweet_times[-1] - account.creation_date).total_seconds() / 86400.0
    total = account.statuses[-1] if account.statuses else len(account.tweet_times)
    return total / max(days, 1.0)


# Text


def _words(text):
    return re.findall(r"[^\W_]+", text.lower())


def _tokens(text, mode):
    text = text or ""
    if mode == "word":
        return set(_words(text))
    if mode == "char4":
        text = text.lower()
        return {text[i : i + 4] for i in range(len(text) - 3)}
    words = _words(text)
    return {" ".join(pair) for pair in zip(words, words[1:])}


def top_ngrams(names, mode="word", n=20):
    """
    The most common tokens of a list of strings (screen names or
    descriptions). A token's percentage is the share of inputs containing
    it, so percentages do not sum to 100.
    """
    if mode not in NGRAM_MODES:
        raise ConfigError(
            "unknown n-gram mode %s, choose from %s" % (mode, ", ".join(NGRAM_MODES))
        )
    if n < 1:
        raise ConfigError("n must be at least 1")
    names = [x for x in names if x is not None]
    if not names:
        raise EmptySampleError("name list")

    counts = Counter()
    for name in names:
        counts.update(_tokens(str(name), mode))
    return _ranked(counts, len(names), n)


def text_lengths(tweets):
    """characters and words per tweet"""
    _require(tweets)
    texts = tweets["text"].fillna("")
    return texts.str.len().tolist(), [len(t.split()) for t in texts]


# Items


def _listed(column):
    return lambda row: set(row[column])


def _single(column):
    def extract(row):
        value = row[column]
        if value is None or (isinstance(value, float) and math.isnan(value)) or value == "":
            return set()
        return {value}

    return extract


def _domains(row):
    return {registered_domain(url) for url in row["urls"]}


ITEM_EXTRACTORS = {
    "hashtag": _listed("hashtags"),
    "mention": _listed("mentions"),
    "url": _listed("urls"),
    "domain": _domains,
    "client": _single("client_name"),
    "language": _single("language_code"),
    "timezone": _single("timezone_string"),
    "location": _single("location_string"),
    "country": _single("country"),
}


def get_extractor(name):
    """Get the distinct items of one tweet field by name."""
    if name not in ITEM_EXTRACTORS:
        raise ConfigError(
            "unknown field %s, choose from %s" % (name, ", ".join(sorted(ITEM_EXTRACTORS)))
        )
    return ITEM_EXTRACTORS[name]


def _item_sets(tweets, field):
    extract = get_extractor(field)
    return [extract(row) for row in tweets.to_dict(orient="records")]


def top_items(tweets, field, n=20):
    """
    The most common values of a field as a percentage of all tweets. An item
    counts once per tweet however often that tweet repeats it.
    """
    _require(tweets)
    if n < 1:
        raise ConfigError("n must be at least 1")
    counts = Counter()
    for items in _item_sets(tweets, field):
        counts.update(items)
    return _ranked(counts, len(tweets), n)


def per_user_diversity(tweets, field):
    """distinct values of a field used by each user, ordered by user id"""
    _require(tweets)
    used = OrderedDict()
    for user_id, items in zip(tweets["user_id"], _item_sets(tweets, field)):
        used.setdefault(user_id, set()).update(items)
    return OrderedDict((user, len(items)) for user, items in sorted(used.items()))


def item_presence(tweets):
    """
    Percentage of tweets with at least one hashtag, mention and URL, and the
    percentage of distinct hashtags that are used only once.
    """
    _require(tweets)
    total = float(len(tweets))
    presence = OrderedDict(
        (name, 100.0 * sum(1 for items in tweets[column] if items) / total)
        for name, column in [("hashtag", "hashtags"), ("mention", "mentions"), ("url", "urls")]
    )
    usage = Counter(tag for items in tweets["hashtags"] for tag in set(items))
    presence["hashtags_used_once"] = (
        100.0 * sum(1 for c in usage.values() if c == 1) / len(usage) if usage else 0.0
    )
    return presence


def media_breakdown(tweets):
    """percentage of tweets with no image, one image, several images, and video"""
    _require(tweets)
    images = tweets["media_count_image"]
    total = float(len(tweets))
    return OrderedDict(
        [
            ("no_image", 100.0 * int((images == 0).sum()) / total),
            ("one_image", 100.0 * int((images == 1).sum()) / total),
            ("several_images", 100.0 * int((images > 1).sum()) / total),
            ("video", 100.0 * int(tweets["has_video"].sum()) / total),
        ]
    )


def urls_per_domain(tweets):
    """number of shared URLs per registered domain, most shared first"""
    _require(tweets)
    counts = Counter(registered_domain(url) for items in tweets["urls"] for url in items)
    return OrderedDict(sorted(counts.items(), key=lambda item: (-item[1], item[0])))


def followers_per_tweet(tweets):
    """followers and friends of the author at each tweet"""
    _require(tweets)
    return tweets["followers_count"].tolist(), tweets["friends_count"].tolist()


# Account evolution


def follower_growth(account):
    """(followers gained, friends gained) from the first to the last tweet"""
    if len(account.followers) < 2:
        return 0, 0
    return (
        account.followers[-1] - account.followers[0],
        account.friends[-1] - account.friends[0],
    )


def attribute_changes(values):
    """
    Run-length compress a series of observed values (exact, case-sensitive
    comparison, missing values skipped) and count the changes.
    """
    runs = []
    for value in values:
        if value is None or value == "":
            continue
        if not runs or runs[-1] != value:
            runs.append(value)
    return runs, max(0, len(runs) - 1)


def screen_name_changes(account):
    return attribute_changes(account.screen_name_series)


def top_transitions(accounts, attribute, n=10):
    """the most common (from, to) changes of a tracked attribute, as counts"""
    counts = Counter()
    for account in accounts:
        if attribute == "screen_name":
            values = account.screen_name_series
        else:
            values = account.series(attribute)
        runs, _ = attribute_changes(values)
        counts.update(zip(runs, runs[1:]))
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [(source, target, count) for (source, target), count in ranked[:n]]


@dataclass(frozen=True)
class DeletionObservation:
    """
    At least min_deleted tweets disappeared between two consecutive observed
    tweets, since the counter did not grow by one.
    """

    interval: tuple
    min_deleted: int
    previous_count: int

    @property
    def percentage(self):
        """deleted tweets as a percentage of the count the new tweet should have reached"""
        return 100.0 * self.min_deleted / (self.previous_count + 1)

    @property
    def month(self):
        return _utc([self.interval[1]]).strftime("%Y-%m")[0]


def observed_deletions(account):
    """
    Observed deletions of an account, and the deleted fraction: the summed
    minimum deletions over the largest statuses count seen.
    """
    observations = []
    counts, times = account.statuses, account.tweet_times
    for i in range(len(counts) - 1):
        deleted = counts[i] + 1 - counts[i + 1]
        if deleted > 0:
            observations.append(
                DeletionObservation(
                    interval=(times[i], times[i + 1]),
                    min_deleted=int(deleted),
                    previous_count=int(counts[i]),
                )
            )
    peak = max(counts) if counts else 0
    fraction = sum(o.min_deleted for o in observations) / float(peak) if peak else 0.0
    return observations, fraction


@dataclass
class DeletionSummary:
    accounts: int
    with_deletions: int
    median_deleted_pct: float
    monthly_pct: OrderedDict
    per_observation: list

    @property
    def share_with_deletions(self):
        return 100.0 * self.with_deletions / self.accounts if self.accounts else 0.0


def deletion_summary(accounts):
    """
    Share of accounts with an observed deletion, the median deleted
    percentage among them, the mean observation percentage per month of
    the interval's end, and every observed minimum deletion.
    """
    fractions, by_month, per_observation = [], {}, []
    for account in accounts:
        observations, fraction = observed_deletions(account)
        if observations:
            fractions.append(100.0 * fraction)
        for observation in observations:
            by_month.setdefault(observation.month, []).append(observation.percentage)
            per_observation.append(observation.min_deleted)

    monthly = OrderedDict((month, float(np.mean(v))) for month, v in sorted(by_month.items()))
    return DeletionSummary(
        accounts=len(accounts),
        with_deletions=len(fractions),
        median_deleted_pct=float(np.median(fractions)) if fractions else 0.0,
        monthly_pct=monthly,
        per_observation=per_observation,
    )


# Cohorts


def user_sort_key(user_id):
    """numeric ids in numeric order, then anything else as text"""
    user_id = str(user_id)
    return (0, int(user_id), "") if user_id.isdigit() else (1, 0, user_id)


def baseline_match(candidates, reference_rates, size, rate=tweets_per_day):
    """
    Greedy quantile matching of a control cohort. The sorted reference
    rates give size quantile targets; each target in turn takes the unused
    candidate with the nearest rate (ties to the lower user id).
    """
    reference = np.sort(np.asarray(list(reference_rates), dtype=float))
    if reference.size == 0:
        raise EmptySampleError("reference rates")
    if size < 1:
        raise ConfigError("baseline size must be at least 1")

    pool = []
    for account in candidates:
        try:
            pool.append((rate(account), user_sort_key(account.user_id), account))
        except HawkeswebError as e:
            bot.warning("Skipping baseline candidate: %s" % e)
    if size > len(pool):
        raise ConfigError(
            "baseline size %s exceeds the %s usable candidates" % (size, len(pool))
        )

    targets = [reference[int(math.floor((i + 0.5) * reference.size / size))] for i in range(size)]
    used = set()
    selected = []
    for target in targets:
        best = min(
            (i for i in range(len(pool)) if i not in used),
            key=lambda i: (abs(pool[i][0] - target), pool[i][1]),
        )
        used.add(best)
        selected.append(pool[best][2])
    return selected


def cohort_rates(accounts, rate=tweets_per_day):
    rates = []
    for account in accounts:
        try:
            rates.append(rate(account))
        except HawkeswebError:
            continue
    return rates


@dataclass
class ScoreComparison:
    field: str
    study_points: list
    baseline_points: list
    D: float
    p: float
    stars: str


def compare_scores(study, baseline, field):
    """ECDF points of a precomputed per-tweet score in both cohorts and their KS test"""
    a = study[field].dropna().tolist() if field in study else []
    b = baseline[field].dropna().tolist() if field in baseline else []
    if not a or not b:
        raise EmptySampleError("%s scores" % field)
    ks = ks_two_sample(a, b)
    return ScoreComparison(field, ecdf(a).points(), ecdf(b).points(), ks.D, ks.p, ks.stars())
