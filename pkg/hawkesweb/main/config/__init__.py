"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import configparser
import logging
import os
import shutil
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from hawkesweb.defaults import HAWKESWEB_NPROC, HAWKESWEB_OUTPUT_DIR, HAWKESWEB_TIME_UNITS
from hawkesweb.exceptions import ConfigError, HawkeswebError
from hawkesweb.main.characterize.report import CharacterizeSettings
from hawkesweb.main.events.models import GroupMap
from hawkesweb.main.events.sequences import HORIZON_POLICIES
from hawkesweb.main.hawkes.fit import FitConfig

here = os.path.dirname(os.path.abspath(__file__))

bot = logging.getLogger("hawkesweb.main.config")

default_config = os.path.join(here, "config.ini")

# Every key a config file may hold; anything else is rejected
SCHEMA = {
    "paths": [
        "events",
        "redirects",
        "state_domains",
        "news_domains",
        "study_archive",
        "baseline_archive",
        "output",
    ],
    "groups": ["labels"],
    "time": ["unit", "horizon", "padding", "global_horizon"],
    "fit": [
        "beta_grid",
        "max_iter",
        "tol",
        "mu_prior",
        "w_prior",
        "min_events_full_fit",
        "min_total_events",
        "include_degenerate",
    ],
    "simulate": ["horizon", "sequences", "allow_supercritical", "record_parents"],
    "characterize": ["study_label", "baseline_label", "top", "baseline_size", "scores"],
    "run": ["seed", "parallel"],
}

INPUT_PATHS = [key for key in SCHEMA["paths"] if key != "output"]


class Config:
    def __init__(self, config_file="hawkesweb.ini", load=True, generate=False):
        """Controller for a hawkesweb.ini config file."""
        self.configfile = os.path.abspath(config_file)

        # If the config file doesn't exist, generate it
        if not os.path.exists(self.configfile):
            if generate:
                bot.info(
                    "Generating configuration file %s" % os.path.basename(self.configfile)
                )
                shutil.copyfile(default_config, self.configfile)
            else:
                raise ConfigError(
                    "%s not found, specify with --config or run hawkesweb init."
                    % self.configfile
                )

        if load:
            self.read()

    @property
    def config_dir(self):
        return os.path.dirname(self.configfile)

    def get(self, section, key):
        """A wrapper to config.get to directly interact with the self.config"""
        return self.config.get(section, key, fallback="").strip()

    def update(self, section, key, value, save=False):
        """update a value, optionally saving the file. Keys outside the schema are refused."""
        if key not in SCHEMA.get(section, []):
            raise ConfigError("unknown key", section, key)
        if section not in self.config:
            self.config[section] = {}
        self.config[section][key] = str(value)
        if save:
            self.save()

    def save(self):
        """save configuration back to its original file"""
        with open(self.configfile, "w") as configfile:
            self.config.write(configfile)

    def read(self, configfile=None):
        """read in configuration file. By default use self.configfile."""
        configfile = configfile or self.configfile
        config = configparser.ConfigParser(interpolation=None)
        try:
            config.read(configfile)
        except configparser.Error as e:
            raise ConfigError("cannot parse %s: %s" % (configfile, e))
        self.config = config
        self.check_keys()

    def check_keys(self):
        """fail closed on anything the schema does not name"""
        for key in self.config.defaults():
            raise ConfigError("keys are not allowed in [DEFAULT]", "DEFAULT", key)
        for section in self.config.sections():
            if section not in SCHEMA:
                raise ConfigError("unknown section", section)
            for key in self.config[section]:
                if key not in SCHEMA[section]:
                    raise ConfigError("unknown key", section, key)

    # Typed values

    def path(self, key):
        value = self.get("paths", key)
        if not value:
            return None
        value = os.path.expanduser(value)
        if not os.path.isabs(value):
            value = os.path.join(self.config_dir, value)
        return os.path.normpath(value)

    def number(self, section, key, kind=float, default=None, minimum=None):
        value = self.get(section, key)
        if not value:
            if default is None:
                raise ConfigError("a value is required", section, key)
            return default
        try:
            number = kind(value)
        except ValueError:
            raise ConfigError("cannot read %r as %s" % (value, kind.__name__), section, key)
        if minimum is not None and number < minimum:
            raise ConfigError("must be at least %s" % minimum, section, key)
        return number

    def numbers(self, section, key, default):
        value = self.get(section, key)
        if not value:
            return default
        try:
            return tuple(float(x) for x in value.split(",") if x.strip())
        except ValueError:
            raise ConfigError("cannot read %r as numbers" % value, section, key)

    def boolean(self, section, key, default=False):
        if not self.get(section, key):
            return default
        try:
            return self.config.getboolean(section, key)
        except ValueError as e:
            raise ConfigError(str(e), section, key)

    def words(self, section, key, default=()):
        value = self.get(section, key)
        if not value:
            return tuple(default)
        return tuple(x.strip() for x in value.split(",") if x.strip())

    def choice(self, section, key, choices, default):
        value = self.get(section, key) or default
        if value not in choices:
            raise ConfigError("must be one of %s" % ", ".join(choices), section, key)
        return value

    def validate(self):
        """The immutable, validated view of this file."""
        return RunConfig.from_config(self)


@dataclass(frozen=True)
class Paths:
    events: Optional[str] = None
    redirects: Optional[str] = None
    state_domains: Optional[str] = None
    news_domains: Optional[str] = None
    study_archive: Optional[str] = None
    baseline_archive: Optional[str] = None
    output: str = HAWKESWEB_OUTPUT_DIR


@dataclass(frozen=True)
class SimulateSettings:
    horizon: float = 1000.0
    sequences: int = 1
    allow_supercritical: bool = False
    record_parents: bool = True


@dataclass(frozen=True)
class RunConfig:
    """Everything one pipeline run needs, checked once."""

    labels: Tuple[str, ...]
    paths: Paths = field(default_factory=Paths)
    fit: FitConfig = field(default_factory=FitConfig)
    time_unit: str = "hours"
    horizon: str = "per-url"
    padding: float = 24.0
    global_horizon: Optional[float] = None
    min_total_events: int = 1
    simulate: SimulateSettings = field(default_factory=SimulateSettings)
    characterize: CharacterizeSettings = field(default_factory=CharacterizeSettings)
    seed: int = 0
    parallel: int = 1
    config_file: Optional[str] = None

    def __post_init__(self):
        GroupMap(self.labels)
        if self.horizon == "global" and not self.global_horizon:
            raise ConfigError("required when horizon is global", "time", "global_horizon")
        for key in INPUT_PATHS:
            path = getattr(self.paths, key)
            if path and not os.path.exists(path):
                raise ConfigError("path %s does not exist" % path, "paths", key)

    @property
    def group_map(self):
        return GroupMap(self.labels)

    @property
    def output(self):
        return self.paths.output

    def with_overrides(self, out=None, seed=None, parallel=None, **paths):
        """apply command line overrides (output directory, seed, workers, input paths)"""
        updated = {key: os.path.abspath(value) for key, value in paths.items() if value}
        if out:
            updated["output"] = os.path.abspath(out)
        run = replace(self, paths=replace(self.paths, **updated))
        if seed is not None:
            run = replace(run, seed=int(seed))
        if parallel is not None:
            run = replace(run, parallel=resolve_parallel(parallel))
        return run

    @classmethod
    def from_config(cls, config):
        unit = config.choice("time", "unit", list(HAWKESWEB_TIME_UNITS), "hours")
        horizon = config.choice("time", "horizon", HORIZON_POLICIES, "per-url")
        labels = config.words("groups", "labels")
        K = len(labels)

        try:
            fit = FitConfig(
                beta_grid=config.numbers("fit", "beta_grid", (1.0,)),
                max_iter=config.number("fit", "max_iter", int, 500, minimum=1),
                tol=config.number("fit", "tol", float, 1e-6),
                mu_prior=_pair(config, "mu_prior", (1.01, 0.01)),
                w_prior=_pair(config, "w_prior", (1.01, 0.01)),
                min_events_full_fit=config.number("fit", "min_events_full_fit", int, 3, 0),
                include_degenerate=config.boolean("fit", "include_degenerate"),
                n_groups=K or None,
            )
            characterize = CharacterizeSettings(
                study_label=config.get("characterize", "study_label") or "trolls",
                baseline_label=config.get("characterize", "baseline_label") or "baseline",
                top=config.number("characterize", "top", int, 20, minimum=1),
                baseline_size=config.number("characterize", "baseline_size", int, 0, 0),
                scores=config.words("characterize", "scores", ("sentiment", "subjectivity")),
            )
            simulate = SimulateSettings(
                horizon=config.number("simulate", "horizon", float, 1000.0),
                sequences=config.number("simulate", "sequences", int, 1, minimum=1),
                allow_supercritical=config.boolean("simulate", "allow_supercritical"),
                record_parents=config.boolean("simulate", "record_parents", True),
            )
        except ConfigError:
            raise
        except HawkeswebError as e:
            raise ConfigError(str(e))

        if simulate.horizon <= 0:
            raise ConfigError("must be positive", "simulate", "horizon")
        if characterize.study_label == characterize.baseline_label:
            raise ConfigError("cohort labels must differ", "characterize", "baseline_label")

        global_horizon = config.get("time", "global_horizon")
        return cls(
            labels=labels,
            paths=Paths(
                output=config.path("output") or os.path.abspath(HAWKESWEB_OUTPUT_DIR),
                **{key: config.path(key) for key in INPUT_PATHS}
            ),
            fit=fit,
            time_unit=unit,
            horizon=horizon,
            padding=config.number("time", "padding", float, 24.0, minimum=0),
            global_horizon=(
                config.number("time", "global_horizon", float, minimum=0)
                if global_horizon
                else None
            ),
            min_total_events=config.number("fit", "min_total_events", int, 1, minimum=1),
            simulate=simulate,
            characterize=characterize,
            seed=config.number("run", "seed", int, 0, minimum=0),
            parallel=resolve_parallel(config.number("run", "parallel", int, 0, minimum=0)),
            config_file=config.configfile,
        )


def _pair(config, key, default):
    values = config.numbers("fit", key, default)
    if len(values) != 2:
        raise ConfigError("expected shape,rate", "fit", key)
    return tuple(values)


def resolve_parallel(parallel):
    """0 means every available core"""
    parallel = int(parallel)
    if parallel < 0:
        raise ConfigError("must not be negative", "run", "parallel")
    return parallel or HAWKESWEB_NPROC
