"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
from dataclasses import dataclass
from itertools import zip_longest
from typing import Tuple

from hawkesweb.exceptions import EmptySampleError

from . import analyses
from .records import build_accounts

bot = logging.getLogger("hawkesweb.main.characterize.report")

RANKED_FIELDS = ("client", "language", "hashtag", "mention", "domain", "timezone", "location")


@dataclass(frozen=True)
class CharacterizeSettings:
    study_label: str = "trolls"
    baseline_label: str = "baseline"
    top: int = 20
    baseline_size: int = 0
    scores: Tuple[str, ...] = ("sentiment", "subjectivity")


class Cohort:
    """A labeled tweet frame with its derived accounts."""

    def __init__(self, label, tweets):
        self.label = label
        self.tweets = tweets
        self.accounts = build_accounts(tweets)

    def restrict(self, accounts):
        """a new cohort holding only the tweets of the given accounts"""
        keep = {a.user_id for a in accounts}
        return Cohort(self.label, self.tweets[self.tweets["user_id"].isin(keep)])

    def __repr__(self):
        return "[cohort:%s][tweets:%s][accounts:%s]" % (
            self.label,
            len(self.tweets),
            len(self.accounts),
        )


def side_by_side(cohorts, ranked):
    """
    Join ranked (item, pct) lists into rank, <label>_item, <label>_pct
    columns, one pair per cohort.
    """
    header = ["rank"]
    for cohort in cohorts:
        header += ["%s_item" % cohort.label, "%s_pct" % cohort.label]
    rows = []
    for rank, entries in enumerate(zip_longest(*ranked), start=1):
        row = [rank]
        for entry in entries:
            row += ["", ""] if entry is None else [entry[0], round(entry[1], 4)]
        rows.append(row)
    return header, rows


class CharacterizeReport:
    """
    Runs every account and tweet analysis over a study cohort and, when
    given, a baseline cohort, writing each table and distribution through
    a TableWriter.
    """

    def __init__(self, writer, settings=None):
        self.writer = writer
        self.settings = settings or CharacterizeSettings()

    def run(self, study_tweets, baseline_tweets=None):
        settings = self.settings
        cohorts = [Cohort(settings.study_label, study_tweets)]
        if baseline_tweets is not None:
            baseline = Cohort(settings.baseline_label, baseline_tweets)
            if settings.baseline_size:
                baseline = self.match_baseline(cohorts[0], baseline)
            cohorts.append(baseline)
        for cohort in cohorts:
            bot.info("Characterizing %s" % cohort)

        self.temporal(cohorts)
        self.creations(cohorts)
        self.ngrams(cohorts)
        self.ranked(cohorts)
        self.distributions(cohorts)
        self.shares(cohorts)
        self.evolution(cohorts)
        if len(cohorts) == 2:
            self.scores(*cohorts)
        return self.writer.written

    def match_baseline(self, study, candidates):
        reference = analyses.cohort_rates(study.accounts)
        selected = analyses.baseline_match(
            candidates.accounts, reference, self.settings.baseline_size
        )
        self.writer.table(
            "baseline_selection",
            ["user_id", "tweets_per_day"],
            [[a.user_id, round(analyses.tweets_per_day(a), 6)] for a in selected],
        )
        return candidates.restrict(selected)

    def temporal(self, cohorts):
        histograms = [analyses.temporal_histograms(c.tweets) for c in cohorts]
        header = ["bin"] + [c.label for c in cohorts]
        for name, index, bins in [("hour_of_day", 0, 24), ("hour_of_week", 1, 168)]:
            rows = [[b] + [round(float(h[index][b]), 6) for h in histograms] for b in range(bins)]
            self.writer.table(name, header, rows)

    def creations(self, cohorts):
        rows = []
        for cohort in cohorts:
            try:
                timeline = analyses.creation_timeline(cohort.accounts)
            except EmptySampleError:
                bot.warning("No creation dates in %s." % cohort.label)
                continue
            rows += [[cohort.label, day, count] for day, count in timeline.items()]
        self.writer.table("creations_per_day", ["cohort", "day", "accounts"], rows)

    def ngrams(self, cohorts):
        top = self.settings.top
        for source, mode in [
            ("screen_name", "char4"),
            ("screen_name", "word"),
            ("description", "word"),
            ("description", "word-bigram"),
        ]:
            ranked = []
            for cohort in cohorts:
                if source == "screen_name":
                    names = [n for a in cohort.accounts for n, _ in a.screen_names]
                else:
                    names = [
                        next((d for d in reversed(a.series("description_at_tweet")) if d), None)
                        for a in cohort.accounts
                    ]
                try:
                    ranked.append(analyses.top_ngrams(names, mode, top))
                except EmptySampleError:
                    ranked.append([])
            header, rows = side_by_side(cohorts, ranked)
            self.writer.table("ngrams_%s_%s" % (source, mode), header, rows)

    def ranked(self, cohorts):
        for field in RANKED_FIELDS:
            ranked = [analyses.top_items(c.tweets, field, self.settings.top) for c in cohorts]
            header, rows = side_by_side(cohorts, ranked)
            self.writer.table("top_%s" % field, header, rows)

    def distributions(self, cohorts):
        for cohort in cohorts:
            label = cohort.label
            tweets = cohort.tweets
            for field in ["language", "client"]:
                diversity = analyses.per_user_diversity(tweets, field)
                self.writer.ecdf("ecdf_%s_%s_per_user" % (label, field), diversity.values())
            characters, words = analyses.text_lengths(tweets)
            self.writer.ecdf("ecdf_%s_characters" % label, characters)
            self.writer.ecdf("ecdf_%s_words" % label, words)
            followers, friends = analyses.followers_per_tweet(tweets)
            self.writer.ecdf("ecdf_%s_followers" % label, followers)
            self.writer.ecdf("ecdf_%s_friends" % label, friends)
            growth = [analyses.follower_growth(a) for a in cohort.accounts]
            self.writer.ecdf("ecdf_%s_follower_growth" % label, [g[0] for g in growth])
            self.writer.ecdf("ecdf_%s_friend_growth" % label, [g[1] for g in growth])
            domains = analyses.urls_per_domain(tweets)
            if domains:
                self.writer.ecdf("ecdf_%s_urls_per_domain" % label, domains.values())

    def shares(self, cohorts):
        header = ["metric"] + [c.label for c in cohorts]
        for name, compute in [
            ("media", analyses.media_breakdown),
            ("item_presence", analyses.item_presence),
        ]:
            tables = [compute(c.tweets) for c in cohorts]
            rows = [[key] + [round(t[key], 4) for t in tables] for key in tables[0]]
            self.writer.table(name, header, rows)

    def evolution(self, cohorts):
        renames, transitions, deletions, monthly, accounts = [], [], [], [], []
        for cohort in cohorts:
            for account in cohort.accounts:
                names, changes = analyses.screen_name_changes(account)
                gained = analyses.follower_growth(account)
                observations, fraction = analyses.observed_deletions(account)
                accounts.append(
                    [
                        cohort.label,
                        account.user_id,
                        len(account.tweet_times),
                        changes,
                        gained[0],
                        gained[1],
                        sum(o.min_deleted for o in observations),
                        round(100.0 * fraction, 4),
                    ]
                )
                if changes:
                    renames.append([cohort.label, account.user_id, changes, " -> ".join(names)])

            for attribute in ["screen_name", "timezone_string", "country"]:
                for source, target, count in analyses.top_transitions(
                    cohort.accounts, attribute, self.settings.top
                ):
                    transitions.append([cohort.label, attribute, source, target, count])

            summary = analyses.deletion_summary(cohort.accounts)
            deletions.append(
                [
                    cohort.label,
                    summary.accounts,
                    summary.with_deletions,
                    round(summary.share_with_deletions, 4),
                    round(summary.median_deleted_pct, 4),
                ]
            )
            monthly += [[cohort.label, m, round(p, 4)] for m, p in summary.monthly_pct.items()]
            if summary.per_observation:
                self.writer.ecdf(
                    "ecdf_%s_deleted_per_observation" % cohort.label, summary.per_observation
                )

        self.writer.table(
            "accounts",
            [
                "cohort",
                "user_id",
                "tweets",
                "screen_name_changes",
                "followers_gained",
                "friends_gained",
                "min_deleted",
                "deleted_pct",
            ],
            accounts,
        )
        self.writer.table(
            "screen_name_changes", ["cohort", "user_id", "changes", "names"], renames
        )
        self.writer.table(
            "transitions", ["cohort", "attribute", "from", "to", "accounts"], transitions
        )
        self.writer.table(
            "deletions",
            ["cohort", "accounts", "with_deletions", "share_pct", "median_deleted_pct"],
            deletions,
        )
        self.writer.table("deletions_per_month", ["cohort", "month", "mean_pct"], monthly)

    def scores(self, study, baseline):
        rows = []
        for field in self.settings.scores:
            try:
                result = analyses.compare_scores(study.tweets, baseline.tweets, field)
            except EmptySampleError:
                bot.info("No %s scores to compare." % field)
                continue
            rows.append([field, result.D, result.p, result.stars])
            self.writer.table(
                "ecdf_%s_%s" % (study.label, field), ["x", "F"], result.study_points
            )
            self.writer.table(
                "ecdf_%s_%s" % (baseline.label, field), ["x", "F"], result.baseline_points
            )
        self.writer.table("score_tests", ["field", "ks_D", "ks_p", "significance"], rows)
