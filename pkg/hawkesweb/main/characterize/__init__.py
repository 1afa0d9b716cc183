"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

from .analyses import (
    DeletionObservation,
    DeletionSummary,
    attribute_changes,
    baseline_match,
    compare_scores,
    creation_timeline,
    deletion_summary,
    follower_growth,
    followers_per_tweet,
    get_extractor,
    item_presence,
    media_breakdown,
    observed_deletions,
    per_user_diversity,
    screen_name_changes,
    temporal_histograms,
    text_lengths,
    top_items,
    top_ngrams,
    top_transitions,
    tweets_per_day,
    urls_per_domain,
)
from .records import AccountRecord, TweetRecord, build_accounts, load_tweets, tweets_frame
from .report import CharacterizeReport, CharacterizeSettings
