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
import logging
import sys
import time

import numpy as np

LGR = logging.getLogger(__name__)
TimingLGR = logging.getLogger("TIMING")

LOGFORMAT = "%(asctime)s %(name)s %(levelname)s: %(message)s"


# --------------------------- Logging functions -------------------------------------------------
def setup_logger(debug=False, logfile=None):
    """Send package log messages to stderr (and optionally a file).

    Parameters
    ----------
    debug : bool, optional
        Log at DEBUG rather than INFO level.  Default is False.
    logfile : str or None, optional
        Also write the log to this file.
    """
    thelevel = logging.DEBUG if debug else logging.INFO
    handlers = [logging.StreamHandler(sys.stderr)]
    if logfile is not None:
        handlers.append(logging.FileHandler(logfile, mode="w"))
    for thelogger in (logging.getLogger("membranenoise"), TimingLGR):
        for thehandler in list(thelogger.handlers):
            thelogger.removeHandler(thehandler)
            thehandler.close()
        for thehandler in handlers:
            thehandler.setFormatter(logging.Formatter(LOGFORMAT))
            thelogger.addHandler(thehandler)
        thelogger.setLevel(thelevel)


# --------------------------- Comparison functions ----------------------------------------------
def relerr(thevalue, thereference):
    r"""Maximum relative error of thevalue against thereference.

    Where the reference is exactly zero the absolute error is used instead.

    Parameters
    ----------
    thevalue : float or array-like
    thereference : float or array-like

    Returns
    -------
    maxerr : float
    """
    thevalue = np.asarray(thevalue, dtype=float)
    thereference = np.asarray(thereference, dtype=float)
    thediff = np.abs(thevalue - thereference)
    thescale = np.where(thereference != 0.0, np.abs(thereference), 1.0)
    return float(np.max(thediff / thescale))


# ------------------------------------------ Version function ----------------------------------
def version():
    """

    Returns
    -------
    version, longgittag, thedate, isdirty : str
    """
    try:
        import membranenoise._version as mn_versioneer

        versioninfo = mn_versioneer.get_versions()
    except Exception:
        return "UNKNOWN", "UNKNOWN", "UNKNOWN", "UNKNOWN"

    version = versioninfo["version"]
    if version is None:
        version = "UNKNOWN"
    longgittag = versioninfo["full-revisionid"]
    if longgittag is None:
        longgittag = "UNKNOWN"
    thedate = versioninfo["date"]
    if thedate is None:
        thedate = "UNKNOWN"
    isdirty = versioninfo["dirty"]
    if isdirty is None:
        isdirty = "UNKNOWN"
    return version, longgittag, thedate, isdirty


# --------------------------- timing functions -------------------------------------------------
def timefmt(thenumber):
    return "{:10.2f}".format(thenumber)


class Timer:
    """Collects (description, time, count, units) events and logs them to the TIMING channel."""

    def __init__(self):
        self.thetimings = []
        self.mark("Start")

    def mark(self, description, number=None, units=None):
        self.thetimings.append((description, time.time(), number, units))

    def report(self):
        starttime = self.thetimings[0][1]
        lasteventtime = starttime
        for description, eventtime, number, units in self.thetimings:
            theduration = eventtime - lasteventtime
            outstring = f"{timefmt(eventtime - starttime)}\t{timefmt(theduration)}\t{description}"
            if number is not None and theduration > 0.0:
                outstring += f" ({number / theduration:.2f} {units}/second)"
            TimingLGR.info(outstring)
            lasteventtime = eventtime
