"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

from .models import (
    REPORT_CATEGORIES,
    Category,
    Event,
    EventSequence,
    GroupId,
    GroupMap,
    RawEvent,
    UrlRecord,
    in_report_category,
)
from .sequences import (
    CountsSummary,
    build_sequences,
    count_summary,
    read_bundle,
    read_events,
    write_bundle,
)
from .urls import (
    UrlResolver,
    canonicalize_url,
    categorize_url,
    load_domains,
    load_redirect_map,
)
