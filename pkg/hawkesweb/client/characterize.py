"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import os

from hawkesweb.logger import bot as message

from .ingest import get_pipeline


def main(args, extra):
    pipeline = get_pipeline(args)
    written = pipeline.characterize(study=args.study, baseline=args.baseline)
    message.success(
        "Wrote %s files to %s" % (len(written), os.path.join(pipeline.output, "characterize"))
    )
