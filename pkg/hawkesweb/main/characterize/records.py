"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import os
import re
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

import pandas as pd

from hawkesweb.exceptions import ArtifactError, EmptySampleError

bot = logging.getLogger("hawkesweb.main.characterize.records")


@dataclass
class TweetRecord:
    """One archived tweet, with the author's profile as seen at tweet time."""

    user_id: str
    timestamp: str
    text: str = ""
    language_code: Optional[str] = None
    client_name: Optional[str] = None
    hashtags: List[str] = field(default_factory=list)
    mentions: List[str] = field(default_factory=list)
    urls: List[str] = field(default_factory=list)
    screen_name_at_tweet: Optional[str] = None
    description_at_tweet: Optional[str] = None
    location_string: Optional[str] = None
    timezone_string: Optional[str] = None
    followers_count: int = 0
    friends_count: int = 0
    statuses_count: int = 0
    media_count_image: int = 0
    has_video: bool = False
    account_created_at: Optional[str] = None
    country: Optional[str] = None
    sentiment: Optional[float] = None
    subjectivity: Optional[float] = None


TWEET_FIELDS = [f for f in TweetRecord.__dataclass_fields__]
LIST_FIELDS = ["hashtags", "mentions", "urls"]
COUNT_FIELDS = ["followers_count", "friends_count", "statuses_count", "media_count_image"]
SCORE_FIELDS = ["sentiment", "subjectivity"]


def _clean_items(values, prefix):
    """a list of tags with a leading # or @ removed, case kept"""
    if values is None or (not isinstance(values, (list, tuple)) and pd.isna(values)):
        return []
    if isinstance(values, str):
        values = re.split(r"[\s,]+", values)
    items = []
    for value in values:
        value = str(value).strip()
        if prefix and value.startswith(prefix):
            value = value[len(prefix) :]
        if value:
            items.append(value)
    return items


def tweets_frame(records):
    """
    Normalize tweet records (TweetRecord objects or dicts) into a DataFrame
    with every TweetRecord column, UTC timestamps and non-negative counts,
    sorted by (user_id, timestamp).
    """
    rows = [asdict(r) if isinstance(r, TweetRecord) else dict(r) for r in records]
    df = pd.DataFrame(rows)
    if df.empty:
        raise EmptySampleError("tweet archive")
    for required in ["user_id", "timestamp"]:
        if required not in df.columns:
            raise ArtifactError("tweets", "missing required field %s" % required)

    defaults = TweetRecord(user_id="", timestamp="")
    for name in TWEET_FIELDS:
        if name in df.columns:
            continue
        if name in LIST_FIELDS:
            df[name] = [[] for _ in range(len(df))]
        else:
            df[name] = getattr(defaults, name)

    df["user_id"] = df["user_id"].astype(str)
    try:
        df["timestamp"] = pd.to_datetime(df["timestamp"], utc=True, format="ISO8601")
        df["account_created_at"] = pd.to_datetime(
            df["account_created_at"], utc=True, format="ISO8601"
        )
    except (ValueError, TypeError) as e:
        raise ArtifactError("tweets", "unparseable timestamp: %s" % e)

    df["hashtags"] = [_clean_items(v, "#") for v in df["hashtags"]]
    df["mentions"] = [_clean_items(v, "@") for v in df["mentions"]]
    df["urls"] = [_clean_items(v, None) for v in df["urls"]]
    df["text"] = df["text"].fillna("").astype(str)
    for name in COUNT_FIELDS:
        counts = pd.to_numeric(df[name], errors="coerce").fillna(0).astype(int)
        if (counts < 0).any():
            raise ArtifactError("tweets", "%s has negative values" % name)
        df[name] = counts
    df["has_video"] = df["has_video"].fillna(False).astype(bool)
    for name in SCORE_FIELDS:
        df[name] = pd.to_numeric(df[name], errors="coerce")

    df = df.sort_values(["user_id", "timestamp"], kind="mergesort").reset_index(drop=True)
    return df[TWEET_FIELDS]


def load_tweets(path):
    """read a line-json tweet archive into a normalized frame"""
    if not path or not os.path.exists(path):
        raise ArtifactError(path, "tweet archive does not exist")
    try:
        raw = pd.read_json(path, lines=True, dtype=False, convert_dates=False)
    except ValueError as e:
        raise ArtifactError(path, str(e))
    if raw.empty:
        raise ArtifactError(path, "tweet archive has no records")
    bot.info("Loaded %s tweets from %s" % (len(raw), path))
    return tweets_frame(raw.to_dict(orient="records"))


@dataclass(frozen=True)
class AccountRecord:
    """
    Per-account aggregates derived from an archive: tweet times in order,
    the profile attribute observed at each tweet, the distinct screen names
    with the time each was first seen, and the counter series.
    """

    user_id: str
    creation_date: Optional[pd.Timestamp]
    tweet_times: Tuple[pd.Timestamp, ...]
    screen_name_series: Tuple[Optional[str], ...] = ()
    screen_names: Tuple[Tuple[str, pd.Timestamp], ...] = ()
    statuses: Tuple[int, ...] = ()
    followers: Tuple[int, ...] = ()
    friends: Tuple[int, ...] = ()
    attributes: Tuple[Tuple[str, Tuple], ...] = ()

    def series(self, name):
        """the per-tweet series of a profile attribute (timezone_string, ...)"""
        return dict(self.attributes).get(name, ())


TRACKED_ATTRIBUTES = ["timezone_string", "description_at_tweet", "country", "location_string"]


def _first_seen(names, times):
    seen = {}
    for name, time in zip(names, times):
        if name and name not in seen:
            seen[name] = time
    return tuple(seen.items())


def build_accounts(tweets):
    """one AccountRecord per user, ordered by user id"""
    accounts = []
    for user_id, rows in tweets.groupby("user_id", sort=True):
        rows = rows.sort_values("timestamp", kind="mergesort")
        created = rows["account_created_at"].dropna()
        names = tuple(None if pd.isna(x) else x for x in rows["screen_name_at_tweet"])
        times = tuple(rows["timestamp"])
        accounts.append(
            AccountRecord(
                user_id=str(user_id),
                creation_date=created.iloc[0] if not created.empty else None,
                tweet_times=times,
                screen_name_series=names,
                screen_names=_first_seen(names, times),
                statuses=tuple(int(x) for x in rows["statuses_count"]),
                followers=tuple(int(x) for x in rows["followers_count"]),
                friends=tuple(int(x) for x in rows["friends_count"]),
                attributes=tuple(
                    (name, tuple(None if pd.isna(x) else x for x in rows[name]))
                    for name in TRACKED_ATTRIBUTES
                ),
            )
        )
    return accounts
