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
import json
import logging
import math
import os
import sys

import numpy as np
import pandas as pd

import membranenoise.core as mn_core
from membranenoise.core import ParameterError

LGR = logging.getLogger(__name__)

PRESETS = {"tableI": "tableI.cfg"}
CSVFLOATFORMAT = "%.8e"


class ConfigError(ParameterError):
    """A config file could not be turned into a valid DesignConfig."""


def datadir():
    return os.path.join(os.path.split(os.path.abspath(__file__))[0], "data")


def _isstdout(outputfile):
    return outputfile is None or outputfile == "-"


# ---------------------------------------- Config files -------------------------------------------
def _parsevalue(thekey, thetext):
    kind = mn_core.CONFIG_KEYS[thekey][2]
    if kind == "str":
        return thetext
    if kind == "optfloat" and thetext.lower() == "none":
        return None
    if kind == "int":
        try:
            return int(thetext)
        except ValueError:
            thevalue = float(thetext)
            if not thevalue.is_integer():
                raise
            return int(thevalue)
    return float(thetext)


def parseconfigtext(thetext, thesource="<string>"):
    r"""Parse the text of a config file.

    One "key = value" per line, "#" starts a comment.  Keys not present keep their defaults.

    Parameters
    ----------
    thetext : str
    thesource : str, optional
        Name used in error messages.

    Returns
    -------
    config : DesignConfig

    Raises
    ------
    ConfigError
        Listing every malformed line, unknown or repeated key, unparsable value and
        violated parameter invariant.
    """
    errors = []
    config = mn_core.DesignConfig()
    seen = {}
    for linenum, rawline in enumerate(thetext.splitlines(), start=1):
        theline = rawline.split("#", 1)[0].strip()
        if theline == "":
            continue
        where = f"{thesource}:{linenum}"
        if "=" not in theline:
            errors.append((where, f"expected 'key = value', got '{theline}'"))
            continue
        thekey, thevaluetext = (part.strip() for part in theline.split("=", 1))
        if "detun" in thekey.lower():
            errors.append((where, f"{thekey}: detuned signal recycling is not supported"))
            continue
        if thekey not in mn_core.CONFIG_KEYS:
            errors.append((where, f"unknown key '{thekey}'"))
            continue
        if thekey in seen:
            errors.append((where, f"duplicate key '{thekey}' (first set on line {seen[thekey]})"))
            continue
        seen[thekey] = linenum
        try:
            thevalue = _parsevalue(thekey, thevaluetext)
        except ValueError:
            errors.append((where, f"{thekey}: cannot parse value '{thevaluetext}'"))
            continue
        config = mn_core.setconfigvalue(config, thekey, thevalue)
    if errors:
        raise ConfigError(errors)
    errors = mn_core.validate(config)
    if errors:
        raise ConfigError(errors)
    LGR.debug(f"parsed {len(seen)} keys from {thesource}")
    return config


def readconfig(inputfilename):
    r"""Read a config file into a DesignConfig.

    Parameters
    ----------
    inputfilename : str

    Returns
    -------
    config : DesignConfig
    """
    if not os.path.isfile(inputfilename):
        raise ConfigError([(inputfilename, "config file does not exist")])
    try:
        with open(inputfilename, "r", encoding="utf-8") as thefile:
            thetext = thefile.read()
    except UnicodeDecodeError:
        raise ConfigError([(inputfilename, "config file is not valid UTF-8")])
    return parseconfigtext(thetext, thesource=inputfilename)


def _formatvalue(thevalue):
    if thevalue is None:
        return "none"
    if isinstance(thevalue, float):
        return repr(thevalue)
    return str(thevalue)


def formatconfig(config):
    """Config file text for config; parseconfigtext(formatconfig(c)) == c."""
    lines = [
        f"{thekey} = {_formatvalue(thevalue)}"
        for thekey, thevalue in mn_core.configtodict(config).items()
    ]
    return "\n".join(lines) + "\n"


def writeconfig(config, outputfile):
    thetext = formatconfig(config)
    if _isstdout(outputfile):
        sys.stdout.write(thetext)
    else:
        with open(outputfile, "w", encoding="utf-8") as thefile:
            thefile.write(thetext)


def presettext(thename):
    """Text of a bundled preset config file."""
    if thename not in PRESETS:
        raise ParameterError(
            [("preset", f"unknown preset '{thename}' - must be one of {', '.join(PRESETS)}")]
        )
    with open(os.path.join(datadir(), PRESETS[thename]), "r", encoding="utf-8") as thefile:
        return thefile.read()


# ---------------------------------------- Spectrum output ----------------------------------------
def spectrumtodataframe(thespectrum):
    df = pd.DataFrame({"frequency_hz": thespectrum.frequencies})
    for thename in thespectrum.channelnames:
        df[thename] = thespectrum[thename]
    return df


def writespectrumcsv(thespectrum, outputfile=None):
    r"""Write a NoiseSpectrum as CSV.

    Columns are frequency_hz followed by the channels present, in scientific notation with 9
    significant digits.

    Parameters
    ----------
    thespectrum : NoiseSpectrum
    outputfile : str, optional
        File name.  None or "-" writes to stdout.
    """
    df = spectrumtodataframe(thespectrum)
    if _isstdout(outputfile):
        df.to_csv(sys.stdout, index=False, float_format=CSVFLOATFORMAT)
    else:
        df.to_csv(outputfile, index=False, float_format=CSVFLOATFORMAT)


def _jsonable(thevalue):
    if isinstance(thevalue, dict):
        return {thekey: _jsonable(theitem) for thekey, theitem in thevalue.items()}
    if isinstance(thevalue, (list, tuple)):
        return [_jsonable(theitem) for theitem in thevalue]
    if isinstance(thevalue, np.ndarray):
        return [_jsonable(theitem) for theitem in thevalue.tolist()]
    if isinstance(thevalue, (bool, np.bool_)):
        return bool(thevalue)
    if isinstance(thevalue, np.integer):
        return int(thevalue)
    if isinstance(thevalue, (float, np.floating)):
        # JSON has no inf or nan
        thevalue = float(thevalue)
        return thevalue if math.isfinite(thevalue) else None
    return thevalue


def writedicttojson(thedict, outputfile=None):
    r"""Write a dictionary as JSON, converting numpy types and non-finite floats (to null).

    Parameters
    ----------
    thedict : dict
    outputfile : str, optional
        File name.  None or "-" writes to stdout.
    """
    thetext = json.dumps(_jsonable(thedict), indent=4, separators=(",", ":")) + "\n"
    if _isstdout(outputfile):
        sys.stdout.write(thetext)
    else:
        with open(outputfile, "wb") as fp:
            fp.write(thetext.encode("utf-8"))


def writespectrumjson(thespectrum, outputfile=None, params=None):
    """Write a NoiseSpectrum as JSON with the CSV field names, units and a params echo block."""
    thedict = {"frequency_hz": thespectrum.frequencies}
    for thename in thespectrum.channelnames:
        thedict[thename] = thespectrum[thename]
    thedict["units"] = dict(thespectrum.units, frequency_hz="Hz")
    if params is not None:
        thedict["params"] = params
    writedicttojson(thedict, outputfile)


def writetable(thetable, outputfile=None, thetype="csv"):
    r"""Write a DataFrame (sweep or verification table) as CSV or JSON records.

    Parameters
    ----------
    thetable : pandas.DataFrame
    outputfile : str, optional
        File name.  None or "-" writes to stdout.
    thetype : {'csv', 'json'}, optional
    """
    if thetype == "json":
        writedicttojson({"rows": thetable.to_dict(orient="records")}, outputfile)
    elif _isstdout(outputfile):
        thetable.to_csv(sys.stdout, index=False, float_format=CSVFLOATFORMAT)
    else:
        thetable.to_csv(outputfile, index=False, float_format=CSVFLOATFORMAT)


def writedict(thedict, outputfile=None):
    """Write key value pairs one per line as "key:<tab>value"."""
    thelines = [f"{thekey}:\t{_formatvalue(thevalue)}\n" for thekey, thevalue in thedict.items()]
    if _isstdout(outputfile):
        sys.stdout.writelines(thelines)
    else:
        with open(outputfile, "w", encoding="utf-8") as thefile:
            thefile.writelines(thelines)
