"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import os

import pytest

here = os.path.dirname(os.path.abspath(__file__))


def write_config(tmp_path, content):
    config_file = os.path.join(str(tmp_path), "hawkesweb.ini")
    with open(config_file, "w") as fd:
        fd.write(content)
    return config_file


def test_generate(tmp_path):
    from hawkesweb.exceptions import ConfigError
    from hawkesweb.main.config import Config

    config_file = os.path.join(str(tmp_path), "hawkesweb.ini")
    with pytest.raises(ConfigError) as error:
        Config(config_file)
    assert error.value.return_code == 2

    config = Config(config_file, generate=True)
    assert os.path.exists(config_file)
    assert config.get("groups", "labels") == "trolls,twitter,reddit,pol"

    run = config.validate()
    assert run.labels == ("trolls", "twitter", "reddit", "pol")
    assert run.group_map.K == 4
    assert run.fit.n_groups == 4
    assert run.fit.beta_grid == (1.0,)
    assert run.time_unit == "hours"
    assert run.horizon == "per-url"
    assert run.padding == 24.0
    assert run.global_horizon is None
    assert run.paths.events is None

    # Relative paths are read against the config file's directory
    assert run.output == os.path.join(str(tmp_path), "hawkesweb-out")


@pytest.mark.parametrize(
    "content",
    [
        "[nonsense]\nkey = 1\n",
        "[groups]\nlabels = a,b\ncolour = red\n",
        "[DEFAULT]\nlabels = a,b\n",
        "[groups\nlabels = a,b\n",
    ],
)
def test_unknown_keys(tmp_path, content):
    from hawkesweb.exceptions import ConfigError
    from hawkesweb.main.config import Config

    with pytest.raises(ConfigError):
        Config(write_config(tmp_path, content))


def test_update_and_save(tmp_path):
    from hawkesweb.exceptions import ConfigError
    from hawkesweb.main.config import Config

    config_file = os.path.join(str(tmp_path), "hawkesweb.ini")
    config = Config(config_file, generate=True)
    config.update("groups", "labels", "trolls,twitter", save=True)
    config.update("fit", "beta_grid", "0.5, 1, 2", save=True)

    run = Config(config_file).validate()
    assert run.labels == ("trolls", "twitter")
    assert run.fit.beta_grid == (0.5, 1.0, 2.0)

    with pytest.raises(ConfigError):
        config.update("fit", "learning_rate", 0.1)


@pytest.mark.parametrize(
    "section,key,value",
    [
        ("groups", "labels", "trolls"),
        ("groups", "labels", "trolls,twitter,trolls"),
        ("time", "unit", "fortnights"),
        ("time", "horizon", "global"),
        ("time", "padding", "-1"),
        ("fit", "max_iter", "many"),
        ("fit", "mu_prior", "0.5,0.01"),
        ("fit", "w_prior", "1.5"),
        ("fit", "include_degenerate", "perhaps"),
        ("simulate", "horizon", "0"),
        ("characterize", "baseline_label", "trolls"),
        ("paths", "events", "missing.csv"),
        ("run", "seed", "-3"),
    ],
)
def test_validate_rejects(tmp_path, section, key, value):
    from hawkesweb.exceptions import ConfigError
    from hawkesweb.main.config import Config

    config = Config(os.path.join(str(tmp_path), "hawkesweb.ini"), generate=True)
    config.update(section, key, value)
    with pytest.raises(ConfigError):
        config.validate()


def test_run_config():
    from hawkesweb.exceptions import ConfigError
    from hawkesweb.main.config import Paths, RunConfig

    run = RunConfig(labels=("trolls", "twitter"), horizon="global", global_horizon=48.0)
    assert run.group_map.labels == ["trolls", "twitter"]

    with pytest.raises(ConfigError):
        RunConfig(labels=("trolls", "twitter"), horizon="global")
    with pytest.raises(ConfigError):
        RunConfig(labels=("trolls",))
    with pytest.raises(ConfigError):
        RunConfig(labels=("trolls", "twitter"), paths=Paths(events="/no/such/events.csv"))


def test_with_overrides(tmp_path):
    from hawkesweb.defaults import HAWKESWEB_NPROC
    from hawkesweb.exceptions import ConfigError
    from hawkesweb.main.config import RunConfig, resolve_parallel

    events = os.path.join(here, "data", "events.csv")
    run = RunConfig(labels=("trolls", "twitter"))
    updated = run.with_overrides(out=str(tmp_path), seed=5, parallel=2, events=events)
    assert updated.output == os.path.abspath(str(tmp_path))
    assert updated.seed == 5
    assert updated.parallel == 2
    assert updated.paths.events == events

    # Nothing given leaves the run as it was
    assert run.with_overrides() == run
    assert run.seed == 0

    assert resolve_parallel(0) == HAWKESWEB_NPROC
    assert resolve_parallel(3) == 3
    with pytest.raises(ConfigError):
        resolve_parallel(-1)
