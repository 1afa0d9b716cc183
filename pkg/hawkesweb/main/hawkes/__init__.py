"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

from .fit import (
    AggregateResult,
    FitConfig,
    FitResult,
    aggregate,
    em_fit,
    fit_corpus,
    read_aggregate,
    read_fits,
    select_beta,
    write_aggregate,
    write_fits,
)
from .model import (
    compensator,
    intensity,
    log_likelihood,
    responsibilities,
    time_rescaling,
)
from .params import (
    HawkesParams,
    Stability,
    read_params,
    spectral_radius,
    stability,
    stationary_rates,
    write_params,
)
from .simulate import SimulationSpec, simulate, simulate_corpus, simulate_with_parents
