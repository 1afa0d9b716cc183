"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging

from hawkesweb.logger import bot as message
from hawkesweb.main import Pipeline

bot = logging.getLogger("hawkesweb.client")


def get_pipeline(args):
    """one pipeline per invocation, with the global overrides applied"""
    return Pipeline(
        config_file=args.config_file,
        out=args.out,
        seed=args.seed,
        parallel=args.parallel,
    )


def main(args, extra):
    pipeline = get_pipeline(args)
    sequences, summary = pipeline.ingest(events=args.events)
    message.table(summary.rows(), header=summary.header())
    message.success("Wrote %s sequences to %s" % (len(sequences), pipeline.output))
