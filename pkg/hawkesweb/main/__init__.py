"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import os
from dataclasses import replace

import numpy as np

from hawkesweb.defaults import HAWKESWEB_CONFIG_FILE
from hawkesweb.exceptions import ArtifactError, ConfigError
from hawkesweb.main.characterize import CharacterizeReport, load_tweets
from hawkesweb.main.config import Config
from hawkesweb.main.events import (
    CountsSummary,
    UrlResolver,
    build_sequences,
    count_summary,
    read_bundle,
    read_events,
    write_bundle,
)
from hawkesweb.main.export import TableWriter
from hawkesweb.main.hawkes import (
    SimulationSpec,
    aggregate,
    fit_corpus,
    read_aggregate,
    read_params,
    simulate_with_parents,
    write_aggregate,
    write_fits,
)
from hawkesweb.main.hawkes.fit import mean_mu_table
from hawkesweb.main.influence import ImpactMatrix, compare_categories, impact_matrix
from hawkesweb.utils.file import mkdir_p, read_jsonl

bot = logging.getLogger("hawkesweb.main")

# Artifact names inside the output directory
SEQUENCES = "sequences.jsonl"
COUNTS = "counts"
TRACE = "trace.jsonl"
FITS = "fits.jsonl"
AGGREGATE = "aggregate.json"


class Pipeline:
    """
    A pipeline is one config file and one output directory. Each stage
    reads the artifacts of the stage before it from the output directory
    (or from an explicit path) and writes its own, so stages can be rerun
    independently.
    """

    def __init__(self, config_file=None, generate=False, out=None, seed=None, parallel=None):
        self.config_file = config_file or HAWKESWEB_CONFIG_FILE
        self.config = Config(self.config_file, generate=generate)
        self.run = self.config.validate().with_overrides(out=out, seed=seed, parallel=parallel)
        self.group_map = self.run.group_map
        bot.debug("Pipeline for %s with %s" % (self.config.configfile, self.group_map))

    @property
    def output(self):
        return self.run.output

    def artifact(self, name):
        return os.path.join(self.output, name)

    def writer(self, subdirectory=None):
        path = self.output if not subdirectory else os.path.join(self.output, subdirectory)
        return TableWriter(path)

    def override(self, **paths):
        """replace input paths for this pipeline, e.g. events from the command line"""
        self.run = self.run.with_overrides(**paths)

    # Stages

    def ingest(self, events=None):
        """
        Read raw event rows, build one sequence per canonical URL, and write
        the sequence bundle with its counts summary.
        """
        path = events or self.run.paths.events
        if not path:
            raise ConfigError("an events file is required", "paths", "events")

        resolver = UrlResolver.from_files(
            self.run.paths.redirects, self.run.paths.state_domains, self.run.paths.news_domains
        )
        bot.debug("Using %s" % resolver)
        rows = read_events(path, self.run.time_unit)
        if not rows:
            bot.warning("No events found in %s, writing an empty bundle." % path)

        sequences = build_sequences(
            rows,
            self.group_map,
            min_total_events=self.run.min_total_events,
            resolver=resolver,
            horizon=self.run.horizon,
            padding=self.run.padding,
            global_horizon=self.run.global_horizon,
        )
        writer = self.writer()
        write_bundle(sequences, self.artifact(SEQUENCES))
        summary = count_summary(sequences, self.group_map)
        writer.table(COUNTS, summary.header(), summary.rows())
        return sequences, summary

    def simulate(self, params_file):
        """
        Simulate sequences from every parameter line of a file and write them
        as a sequence bundle. Seeds run consecutively from the configured seed.
        """
        settings = self.run.simulate
        sequences = []
        seed = self.run.seed
        for line, params in enumerate(read_params(params_file)):
            if params.K != self.group_map.K:
                raise ArtifactError(
                    params_file,
                    "line %s has %s groups, the config names %s"
                    % (line + 1, params.K, self.group_map.K),
                )
            for i in range(settings.sequences):
                spec = SimulationSpec(
                    params=params,
                    horizon_T=settings.horizon,
                    seed=seed,
                    allow_supercritical=settings.allow_supercritical,
                    labels=tuple(self.group_map.labels),
                    url="simulated/%s/%s" % (line, i),
                )
                sequence, _ = simulate_with_parents(spec)
                if not settings.record_parents:
                    sequence = replace(sequence, parents=None)
                sequences.append(sequence)
                seed += 1

        mkdir_p(self.output)
        write_bundle(sequences, self.artifact(TRACE))
        bot.info(
            "Simulated %s sequences with %s events."
            % (len(sequences), sum(len(s) for s in sequences))
        )
        return sequences

    def fit(self, bundle=None):
        """
        Fit every sequence of a bundle, then write the fits, the per-category
        aggregate, and the counts summary with its mean background rates.
        """
        bundle = bundle or self.artifact(SEQUENCES)
        sequences = read_bundle(bundle, self.group_map)
        fits = fit_corpus(
            sequences, self.run.fit, K=self.group_map.K, parallel=self.run.parallel
        )
        result = aggregate(fits, self.group_map.labels, self.run.fit.include_degenerate)

        writer = self.writer()
        write_fits(fits, self.artifact(FITS))
        write_aggregate(result, self.artifact(AGGREGATE))
        writer.table("aggregate", result.header, result.rows())

        summary = count_summary(sequences, self.group_map).with_mean_mu(mean_mu_table(result))
        writer.table(COUNTS, summary.header(), summary.rows())
        return fits, result

    def load_counts(self, counts=None):
        path = counts or self.artifact("%s.jsonl" % COUNTS)
        if not os.path.exists(path):
            raise ArtifactError(path, "counts summary does not exist, run ingest first")
        return CountsSummary.from_records(read_jsonl(path), self.group_map.labels, path)

    def impact(self, aggregate_file=None, counts=None):
        """direct and total impact percentages per category from the aggregate and counts"""
        result = read_aggregate(aggregate_file or self.artifact(AGGREGATE))
        summary = self.load_counts(counts)
        if list(summary.labels) != list(result.labels):
            raise ArtifactError(
                counts or self.artifact("%s.jsonl" % COUNTS),
                "labels %s do not match the aggregate %s" % (summary.labels, result.labels),
            )

        # The category comparison is per pair, so it joins every category's rows
        comparison = compare_categories(result)
        rows, matrices = [], []
        for category in ["All", "RussianState", "OtherNews"]:
            if result.is_empty(category):
                bot.warning("Category %s has no retained fits, no impact." % category)
                continue
            # Unobserved pairs have no mean weight and contribute nothing
            mean_W = np.nan_to_num(result.mean_W[category], nan=0.0)
            matrix = impact_matrix(
                mean_W, summary.event_counts(category), result.labels, category
            )
            matrices.append(matrix)
            rows += matrix.rows(comparison)
        header = ImpactMatrix.header + ImpactMatrix.comparison_header
        self.writer().table("impact", header, rows)
        return matrices

    def compare(self, aggregate_file=None):
        """RussianState versus OtherNews weight comparison for every pair"""
        result = read_aggregate(aggregate_file or self.artifact(AGGREGATE))
        comparison = compare_categories(result)
        self.writer().table("compare", comparison.header, comparison.rows())
        return comparison

    def characterize(self, study=None, baseline=None):
        """the account and tweet analyses of a study archive, against a baseline when given"""
        study = study or self.run.paths.study_archive
        baseline = baseline or self.run.paths.baseline_archive
        if not study:
            raise ConfigError("a study archive is required", "paths", "study_archive")

        report = CharacterizeReport(self.writer("characterize"), self.run.characterize)
        written = report.run(load_tweets(study), load_tweets(baseline) if baseline else None)
        bot.info("Wrote %s characterization files." % len(written))
        return written

    def __str__(self):
        return "[hawkesweb][%s]" % self.config.configfile

    __repr__ = __str__
