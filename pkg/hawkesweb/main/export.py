"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import logging
import os

from hawkesweb.exceptions import ConfigError
from hawkesweb.main.stats import ecdf
from hawkesweb.utils.file import mkdir_p, write_jsonl, write_rows

bot = logging.getLogger("hawkesweb.main.export")


def get_exporter(name):
    """
    Get a table exporter by name (csv or jsonl).
    """
    exporters = {"csv": CsvExporter, "jsonl": JsonlExporter}
    if name.lower() not in exporters:
        raise ConfigError("Exporter %s is not known." % name)
    return exporters[name.lower()]


class Exporter:
    extension = None

    def __init__(self, path):
        self.path = os.path.abspath(path)

    def filename(self, name):
        return os.path.join(self.path, "%s.%s" % (name, self.extension))

    def export(self, name, header, rows):
        raise NotImplementedError


class CsvExporter(Exporter):
    extension = "csv"

    def export(self, name, header, rows):
        return write_rows(rows, self.filename(name), header=header)


class JsonlExporter(Exporter):
    extension = "jsonl"

    def export(self, name, header, rows):
        return write_jsonl((dict(zip(header, row)) for row in rows), self.filename(name))


class TableWriter:
    """
    Writes every table of a run in each requested format under one output
    directory, and remembers what it wrote.
    """

    def __init__(self, path, formats=("csv", "jsonl")):
        self.path = mkdir_p(os.path.abspath(path))
        self.exporters = [get_exporter(name)(self.path) for name in formats]
        self.written = []

    def table(self, name, header, rows):
        rows = [list(row) for row in rows]
        for exporter in self.exporters:
            self.written.append(exporter.export(name, header, rows))
        bot.debug("Wrote table %s with %s rows" % (name, len(rows)))
        return rows

    def ecdf(self, name, samples):
        """an ECDF as step points (x, F), for external plotting"""
        points = ecdf(samples).points()
        filename = os.path.join(self.path, "%s.csv" % name)
        self.written.append(write_rows(points, filename, header=["x", "F"]))
        return points
