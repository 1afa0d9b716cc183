"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import os
import sys

ABORT = -5
CRITICAL = -4
ERROR = -3
WARNING = -2
QUIET = 0
INFO = 1
VERBOSE = 2
DEBUG = 5

LEVELS = {
    "ABORT": ABORT,
    "CRITICAL": CRITICAL,
    "ERROR": ERROR,
    "WARNING": WARNING,
    "QUIET": QUIET,
    "INFO": INFO,
    "VERBOSE": VERBOSE,
    "DEBUG": DEBUG,
}

PURPLE = "\033[95m"
YELLOW = "\033[93m"
RED = "\033[91m"
GREEN = "\033[32m"
DARKRED = "\033[31m"
CYAN = "\033[36m"
OFF = "\033[0m"


class HawkeswebMessage:
    """
    Terminal messages for the hawkesweb client: tables of results, progress
    of corpus fits, and fatal exits with a return code. Library modules use
    named loggers from the logging module instead.
    """

    def __init__(self):
        self.level = get_logging_level()
        self.errorStream = sys.stderr
        self.outputStream = sys.stdout
        self.colorize = self.useColor()
        self.colors = {
            ABORT: DARKRED,
            CRITICAL: RED,
            ERROR: RED,
            WARNING: YELLOW,
            INFO: PURPLE,
            DEBUG: CYAN,
        }

    # Colors --------------------------------------------

    def useColor(self):
        """color only when both streams are terminals, unless the user says
        otherwise with HAWKESWEB_COLORIZE
        """
        preference = get_user_color_preference()
        if preference is not None:
            return preference
        for stream in [self.errorStream, self.outputStream]:
            if not hasattr(stream, "isatty") or not stream.isatty():
                return False
        return True

    def addColor(self, level, text):
        if self.colorize and level in self.colors:
            return "%s%s%s" % (self.colors[level], text, OFF)
        return text

    # Emit ----------------------------------------------

    def emit(self, level, message, prefix=None):
        """print a message (optionally prefixed) to stderr for problems and
        debugging, and to stdout otherwise.
        """
        if prefix is not None:
            message = "%s %s" % (self.addColor(level, prefix), message)
        if not message.endswith("\n"):
            message = "%s\n" % message

        if self.level != QUIET and level <= self.level:
            stream = self.outputStream if level == INFO else self.errorStream
            stream.write(message)

    def success(self, message):
        if self.level != QUIET:
            text = "%s%s%s" % (GREEN, message, OFF) if self.colorize else message
            self.outputStream.write("%s\n" % text)

    def info(self, message):
        self.emit(INFO, message)

    def warning(self, message):
        self.emit(WARNING, message, "WARNING")

    def exit(self, message, return_code=1):
        self.emit(ERROR, message, "ERROR")
        sys.exit(return_code)

    # Terminal ------------------------------------------

    def show_progress(self, iteration, total, length=40, prefix="Progress"):
        """draw a one-line progress bar on stdout, when stdout is a terminal"""
        if self.level < INFO or total <= 0:
            return
        if not hasattr(sys.stdout, "isatty") or not sys.stdout.isatty():
            return
        fraction = min(1.0, iteration / float(total))
        filled = int(length * fraction)
        bar = "=" * filled + "-" * (length - filled)
        sys.stdout.write("\r%s |%s| %5.1f%%" % (prefix, bar, 100 * fraction))
        if iteration >= total:
            sys.stdout.write("\n")
        sys.stdout.flush()

    def table(self, rows, header=None, col_width=2):
        """print rows as tab separated columns, with an optional header.
        Rows may be a dictionary, in which case keys become the first column.
        """
        if isinstance(rows, dict):
            rows = [[str(key)] + list(value) for key, value in rows.items()]
        if header:
            self.info("\t".join(str(x) for x in header))
        for row in rows:
            cells = [str(x) for x in row]
            if cells:
                cells[0] = cells[0].ljust(col_width)
            self.info("\t".join(cells))


def get_logging_level():
    """read HAWKESWEB_MESSAGELEVEL as a level name (INFO, DEBUG, ...) or an
    integer. Unknown values fall back to INFO.
    """
    level = os.environ.get("HAWKESWEB_MESSAGELEVEL", "INFO")
    if level.lstrip("-").isdigit():
        return int(level)
    return LEVELS.get(level.upper(), INFO)


def get_user_color_preference():
    preference = os.environ.get("HAWKESWEB_COLORIZE")
    if preference is None:
        return None
    return convert2boolean(preference)


def convert2boolean(arg):
    """convert an environment string to a boolean"""
    if isinstance(arg, bool):
        return arg
    return arg.lower() in ("yes", "true", "t", "1", "y")


bot = HawkeswebMessage()
