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
    comparison = pipeline.compare(aggregate_file=args.aggregate)
    message.table(comparison.rows(), header=comparison.header)

    insufficient = [p for p in comparison.pairs if not p.sufficient]
    if insufficient:
        message.warning(
            "%s of %s pairs lack samples in one category."
            % (len(insufficient), len(comparison.pairs))
        )
