"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

from hawkesweb.logger import bot as message
from hawkesweb.main.influence import ImpactMatrix

from .ingest import get_pipeline


def main(args, extra):
    pipeline = get_pipeline(args)
    matrices = pipeline.impact(aggregate_file=args.aggregate, counts=args.counts)
    for matrix in matrices:
        message.table(matrix.rows(), header=ImpactMatrix.header)
