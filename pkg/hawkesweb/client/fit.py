"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

from hawkesweb.logger import bot as message

from .ingest import get_pipeline


def main(args, extra):
    pipeline = get_pipeline(args)
    fits, result = pipeline.fit(bundle=args.bundle)

    failed = [fit for fit in fits if not fit.ok]
    degenerate = [fit for fit in fits if fit.ok and fit.degenerate]
    for fit in failed:
        message.warning("%s was not fit: %s" % (fit.url, fit.error))

    rows = [
        [category, result.retained.get(category, 0)]
        for category in ["All", "RussianState", "OtherNews"]
    ]
    message.table(rows, header=["category", "retained"])
    message.success(
        "Fit %s sequences (%s degenerate, %s failed) into %s"
        % (len(fits), len(degenerate), len(failed), pipeline.output)
    )
