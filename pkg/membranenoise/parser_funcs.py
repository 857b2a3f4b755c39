#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
#   Copyright 2024 The membranenoise developers
#
#   Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#   Unless required by applicable law or agreed to in writing, software
#   distributed under the License is distributed on an "AS IS" BASIS,
#   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#   See the License for the specific language governing permissions and
#   limitations under the License.
#
#
"""
Functions for parsers.
"""
import math
import os.path as op
import sys

import membranenoise.budget as mn_budget
import membranenoise.util as mn_util


def detailedversion():
    (
        release_version,
        git_longtag,
        git_date,
        git_isdirty,
    ) = mn_util.version()
    python_version = str(sys.version_info)
    return (
        f"release version: {release_version}\n"
        f"git_longtag: {git_longtag}\n"
        f"git_date: {git_date}\n"
        f"git_isdirty: {git_isdirty}\n"
        f"python_version: {python_version}"
    )


def is_valid_file(parser, arg):
    """
    Check if argument is existing file.
    """
    if arg is not None and not op.isfile(arg):
        parser.error(f"The file {arg} does not exist!")

    return arg


def is_float(parser, arg):
    """
    Check if argument is a finite float.
    """
    try:
        thevalue = float(arg)
    except ValueError:
        parser.error(f"Value {arg} is not a float")
    if not math.isfinite(thevalue):
        parser.error(f"Value {arg} is not finite")
    return thevalue


def is_positive_float(parser, arg):
    thevalue = is_float(parser, arg)
    if thevalue <= 0.0:
        parser.error(f"Value {arg} must be positive")
    return thevalue


def is_nonnegative_float(parser, arg):
    thevalue = is_float(parser, arg)
    if thevalue < 0.0:
        parser.error(f"Value {arg} must not be negative")
    return thevalue


def is_int(parser, arg):
    """
    Check if argument is int.
    """
    try:
        thevalue = int(arg)
    except ValueError:
        parser.error(f"Value {arg} is not an int")
    return thevalue


def is_floatlist(parser, arg):
    """
    Check if argument is a comma separated list of floats.  An empty string is an empty list.
    """
    if arg.strip() == "":
        return []
    return [is_float(parser, thepart.strip()) for thepart in arg.split(",")]


def is_onoff(parser, arg):
    if arg not in ("on", "off"):
        parser.error(f"Value {arg} must be 'on' or 'off'")
    return arg == "on"


def addversionopts(parser):
    version_opts = parser.add_argument_group("Version options")
    version_opts.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {mn_util.version()[0]}",
    )
    version_opts.add_argument(
        "--detailedversion",
        action="version",
        version=detailedversion(),
    )


def adddebugopts(parser):
    debug_opts = parser.add_argument_group("Debugging options")
    debug_opts.add_argument(
        "--debug",
        action="store_true",
        help="Log extra detail (and timing) to the error stream.",
        default=False,
    )
    debug_opts.add_argument(
        "--logfile",
        metavar="FILE",
        help="Also write the log to FILE.",
        default=None,
    )


def addconfigopts(parser):
    parser.add_argument(
        "--config",
        dest="config",
        metavar="F",
        type=lambda x: is_valid_file(parser, x),
        required=True,
        help="Design config file (see 'msnoise preset tableI' for the format).",
    )


def addsropts(parser):
    parser.add_argument(
        "--sr",
        dest="sr_enabled",
        metavar="on|off",
        type=lambda x: is_onoff(parser, x),
        default=True,
        help=(
            "Use the signal-recycling mirror of the config ('on') or ignore it ('off').  "
            "Default is on."
        ),
    )


def adddampingopts(parser, allowboth=True):
    if allowboth:
        thechoices = mn_budget.DAMPINGCHOICES
        thedefault = "both"
    else:
        thechoices = mn_budget.DAMPINGCHOICES[:-1]
        thedefault = "viscous"
    parser.add_argument(
        "--damping",
        dest="damping",
        choices=thechoices,
        default=thedefault,
        help=f'Thermal noise damping model.  Default is "{thedefault}".',
    )


def addfevalopts(parser, default=None, defaulttext="0"):
    parser.add_argument(
        "--f-eval",
        dest="f_eval",
        metavar="HZ",
        type=lambda x: is_nonnegative_float(parser, x),
        default=default,
        help=f"Evaluation frequency in Hz.  Default is {defaulttext}.",
    )


def addoutputopts(parser, formats=("csv", "json")):
    output_opts = parser.add_argument_group("Output options")
    output_opts.add_argument(
        "--format",
        dest="format",
        choices=formats,
        default=formats[0],
        help=f'Output format.  Default is "{formats[0]}".',
    )
    output_opts.add_argument(
        "--out",
        dest="out",
        metavar="F",
        default=None,
        help="Write the output to F rather than stdout.",
    )
