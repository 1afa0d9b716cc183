#!/usr/bin/env python

"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import argparse
import logging
import os
import sys

import hawkesweb
from hawkesweb.defaults import HAWKESWEB_CONFIG_FILE
from hawkesweb.exceptions import HawkeswebError
from hawkesweb.logger import HAWKESWEB_LOG_LEVEL, HAWKESWEB_LOG_LEVELS, logging_level
from hawkesweb.logger import bot as message


def get_parser():
    parser = argparse.ArgumentParser(
        description="Cross-community influence from URL sharing with Hawkes processes."
    )

    parser.add_argument(
        "--version",
        dest="version",
        help="show software version and exit.",
        default=False,
        action="store_true",
    )

    parser.add_argument(
        "--log-level",
        "--log_level",
        dest="log_level",
        choices=HAWKESWEB_LOG_LEVELS,
        default=HAWKESWEB_LOG_LEVEL,
        help="Customize logging level for hawkesweb.",
    )

    # Configuration file
    parser.add_argument(
        "--config",
        dest="config_file",
        default=HAWKESWEB_CONFIG_FILE,
        help="Path to hawkesweb.ini configuration file.",
    )
    parser.add_argument(
        "--out",
        dest="out",
        default=None,
        help="Output directory, to override [paths] output.",
    )
    parser.add_argument(
        "--seed",
        dest="seed",
        default=None,
        type=seed_type,
        help="Random seed, to override [run] seed.",
    )
    parser.add_argument(
        "--parallel",
        dest="parallel",
        default=None,
        type=positive_int_type,
        help="Worker processes for fitting (0 for all cores), to override [run] parallel.",
    )

    description = "actions for hawkesweb"
    subparsers = parser.add_subparsers(
        help="hawkesweb actions",
        title="actions",
        description=description,
        dest="command",
    )

    # print version and exit
    subparsers.add_parser("version", help="show software version")

    # Init
    init = subparsers.add_parser(
        "init", help="Add a hawkesweb.ini to the present working directory."
    )
    init.add_argument(
        "path",
        help="Path to generate hawkesweb.ini file",
        nargs="?",
        default=".",
    )

    ingest = subparsers.add_parser(
        "ingest", help="Build per-URL event sequences and the counts summary."
    )
    ingest.add_argument(
        "--events",
        dest="events",
        default=None,
        help="Events file (csv, tsv or jsonl), to override [paths] events.",
    )

    simulate = subparsers.add_parser(
        "simulate", help="Simulate sequences from a parameter file."
    )
    simulate.add_argument("params", help="line-json file with mu, W and beta per line.")

    fit = subparsers.add_parser(
        "fit", help="Fit a Hawkes model per sequence and aggregate by category."
    )
    fit.add_argument(
        "--bundle",
        dest="bundle",
        default=None,
        help="Sequence bundle to fit (defaults to sequences.jsonl in the output).",
    )

    impact = subparsers.add_parser(
        "impact", help="Direct and total impact percentages from an aggregate."
    )
    impact.add_argument(
        "--counts",
        dest="counts",
        default=None,
        help="Counts summary (defaults to counts.jsonl in the output).",
    )

    compare = subparsers.add_parser(
        "compare", help="Compare RussianState and OtherNews weights per pair."
    )

    for command in [impact, compare]:
        command.add_argument(
            "--aggregate",
            dest="aggregate",
            default=None,
            help="Aggregate file (defaults to aggregate.json in the output).",
        )

    characterize = subparsers.add_parser(
        "characterize", help="Account and tweet analyses of tweet archives."
    )
    characterize.add_argument(
        "--study",
        dest="study",
        default=None,
        help="Study cohort archive, to override [paths] study_archive.",
    )
    characterize.add_argument(
        "--baseline",
        dest="baseline",
        default=None,
        help="Baseline cohort archive, to override [paths] baseline_archive.",
    )

    return parser


def positive_int_type(arg):
    """ensure user is providing a positive integer"""
    try:
        value = int(arg)
    except ValueError:
        raise argparse.ArgumentTypeError("%s is not an integer" % arg)
    if value < 0:
        raise argparse.ArgumentTypeError("%s is an invalid positive integer value" % arg)
    return value


def seed_type(arg):
    """a seed must fit in an unsigned 64-bit integer"""
    value = positive_int_type(arg)
    if value >= 2 ** 64:
        raise argparse.ArgumentTypeError("%s does not fit in 64 bits" % arg)
    return value


def main():
    """main entrypoint for hawkesweb"""

    parser = get_parser()

    def help(return_code=0):
        """print help, including the software version and exit with return code."""
        version = hawkesweb.__version__

        print("\nhawkesweb v%s" % version)
        parser.print_help()
        sys.exit(return_code)

    # If the user didn't provide any arguments, show the full help
    if len(sys.argv) == 1:
        help()

    # If an error occurs while parsing the arguments, the interpreter will exit with value 2
    args, extra = parser.parse_known_args()

    # Set the logging level
    os.environ["HAWKESWEB_LOG_LEVEL"] = args.log_level
    logging.getLogger().setLevel(logging_level(args.log_level))
    bot = logging.getLogger("hawkesweb.client")

    # Show the version and exit
    if args.command == "version" or args.version:
        print(hawkesweb.__version__)
        sys.exit(0)

    if args.command == "init":
        from .init import main
    elif args.command == "ingest":
        from .ingest import main
    elif args.command == "simulate":
        from .simulate import main
    elif args.command == "fit":
        from .fit import main
    elif args.command == "impact":
        from .impact import main
    elif args.command == "compare":
        from .compare import main
    elif args.command == "characterize":
        from .characterize import main
    else:
        help(2)

    # Pass on to the correct command, validation failures exit with 2
    try:
        main(args=args, extra=extra)
    except HawkeswebError as e:
        bot.debug("%s failed" % args.command, exc_info=True)
        message.exit(str(e), e.return_code)


if __name__ == "__main__":
    main()
