"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import os

from hawkesweb.exceptions import ArtifactError
from hawkesweb.logger import bot as message
from hawkesweb.main import Pipeline


def main(args, extra):

    path = os.path.abspath(args.path)
    if not os.path.isdir(path):
        raise ArtifactError(path, "directory does not exist")
    config_file = os.path.join(path, os.path.basename(args.config_file))
    if os.path.exists(config_file):
        message.warning("%s already exists, leaving it as is." % config_file)

    # Generate the file, then read it back through validation
    pipeline = Pipeline(config_file=config_file, generate=True)
    message.table(
        [["groups", ",".join(pipeline.group_map.labels)], ["output", pipeline.output]]
    )
    message.success("Wrote %s" % config_file)
