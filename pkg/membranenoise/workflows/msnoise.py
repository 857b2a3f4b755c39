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
msnoise - noise budgets, design solvers and self-verification for a Michelson-Sagnac
interferometer with a membrane oscillator.
"""
import argparse
import logging
import sys

import pandas as pd

import membranenoise.budget as mn_budget
import membranenoise.core as mn_core
import membranenoise.io as mn_io
import membranenoise.oracle as mn_oracle
import membranenoise.parser_funcs as pf
import membranenoise.util as mn_util
from membranenoise.core import DomainError, ParameterError

LGR = logging.getLogger("membranenoise.msnoise")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INVALID = 2


def _get_parser():
    """
    Argument parser for msnoise
    """
    parser = argparse.ArgumentParser(
        prog="msnoise",
        description=(
            "Displacement noise budget of a Michelson-Sagnac interferometer with a translucent "
            "membrane, with power and signal recycling."
        ),
        formatter_class=argparse.RawTextHelpFormatter,
    )
    pf.addversionopts(parser)
    subparsers = parser.add_subparsers(dest="verb", metavar="verb")
    subparsers.required = True

    # budget
    budget_parser = subparsers.add_parser(
        "budget", help="Noise spectra over the config's frequency grid."
    )
    pf.addconfigopts(budget_parser)
    pf.addsropts(budget_parser)
    pf.adddampingopts(budget_parser)
    pf.addoutputopts(budget_parser)
    pf.adddebugopts(budget_parser)

    # sweep
    sweep_parser = subparsers.add_parser(
        "sweep", help="Noise at one frequency while stepping one config parameter."
    )
    pf.addconfigopts(sweep_parser)
    sweep_parser.add_argument(
        "--param",
        dest="param",
        metavar="K",
        choices=list(mn_core.CONFIG_KEYS),
        required=True,
        help="Config key to step, e.g. recycling.r_SR.",
    )
    sweep_parser.add_argument(
        "--values",
        dest="values",
        metavar="v1,v2,...",
        type=lambda x: pf.is_floatlist(sweep_parser, x),
        required=True,
        help="Comma separated values of the parameter.",
    )
    pf.addfevalopts(sweep_parser, default=None, defaulttext="the config's grid.f_min")
    pf.addsropts(sweep_parser)
    pf.adddampingopts(sweep_parser)
    sweep_parser.add_argument(
        "--nprocs",
        dest="nprocs",
        metavar="N",
        type=lambda x: pf.is_int(sweep_parser, x),
        default=1,
        help="Evaluate rows in N parallel workers (-1 for all cores).  Default is 1.",
    )
    pf.addoutputopts(sweep_parser)
    pf.adddebugopts(sweep_parser)

    # solve-power
    solvepower_parser = subparsers.add_parser(
        "solve-power", help="Power giving a target rad/shot ratio."
    )
    pf.addconfigopts(solvepower_parser)
    solvepower_parser.add_argument(
        "--ratio",
        dest="ratio",
        metavar="K",
        type=lambda x: pf.is_positive_float(solvepower_parser, x),
        required=True,
        help="Target rad/shot amplitude ratio.",
    )
    pf.addfevalopts(solvepower_parser, default=0.0)
    pf.addsropts(solvepower_parser)
    pf.addoutputopts(solvepower_parser, formats=("text", "json"))
    pf.adddebugopts(solvepower_parser)

    # solve-thermal
    solvethermal_parser = subparsers.add_parser(
        "solve-thermal",
        help="Power keeping rad noise a margin above thermal noise at a new T and Q.",
    )
    pf.addconfigopts(solvethermal_parser)
    solvethermal_parser.add_argument(
        "--T",
        dest="T",
        metavar="K",
        type=lambda x: pf.is_nonnegative_float(solvethermal_parser, x),
        required=True,
        help="Membrane temperature in K.",
    )
    solvethermal_parser.add_argument(
        "--Q",
        dest="Q",
        metavar="Q",
        type=lambda x: pf.is_positive_float(solvethermal_parser, x),
        required=True,
        help="Mechanical quality factor.",
    )
    solvethermal_parser.add_argument(
        "--margin",
        dest="margin",
        metavar="M",
        type=lambda x: pf.is_positive_float(solvethermal_parser, x),
        default=None,
        help=(
            "Desired rad/thermal amplitude ratio.  Default is the ratio the config design "
            "achieves at f-eval."
        ),
    )
    pf.addfevalopts(solvethermal_parser, default=0.0)
    pf.addsropts(solvethermal_parser)
    pf.adddampingopts(solvethermal_parser, allowboth=False)
    pf.addoutputopts(solvethermal_parser, formats=("text", "json"))
    pf.adddebugopts(solvethermal_parser)

    # verify
    verify_parser = subparsers.add_parser(
        "verify", help="Check the closed forms against independent computations."
    )
    verify_parser.add_argument(
        "--draws",
        dest="draws",
        metavar="N",
        type=lambda x: pf.is_int(verify_parser, x),
        default=mn_oracle.DEFAULT_DRAWS,
        help=f"Random parameter draws per check.  Default is {mn_oracle.DEFAULT_DRAWS}.",
    )
    verify_parser.add_argument(
        "--seed",
        dest="seed",
        metavar="SEED",
        type=lambda x: pf.is_int(verify_parser, x),
        default=mn_oracle.DEFAULT_SEED,
        help=f"Random number seed.  Default is {mn_oracle.DEFAULT_SEED}.",
    )
    pf.addoutputopts(verify_parser)
    pf.adddebugopts(verify_parser)

    # preset
    preset_parser = subparsers.add_parser("preset", help="Print a bundled config file.")
    preset_parser.add_argument("name", choices=list(mn_io.PRESETS), help="Preset name.")
    preset_parser.add_argument(
        "--out", dest="out", metavar="F", default=None, help="Write to F rather than stdout."
    )
    pf.adddebugopts(preset_parser)

    return parser


# ---------------------------------------- Verbs --------------------------------------------------
def dobudget(args, timer):
    config = mn_io.readconfig(args.config)
    options = mn_budget.BudgetOptions(sr_enabled=args.sr_enabled, damping_model=args.damping)
    thespectrum = mn_budget.budget_from_config(config, options=options, debug=args.debug)
    timer.mark("Budget computed", number=len(thespectrum.frequencies), units="bins")
    thecrossings = mn_budget.crossover_frequencies(thespectrum, "rad", "shot")
    if len(thecrossings) > 0:
        LGR.info(
            "rad = shot at " + ", ".join(f"{thefreq:.6g}" for thefreq in thecrossings) + " Hz"
        )
    if args.format == "json":
        theparams = mn_core.configtodict(config)
        theparams.update(mn_core.deriveddict(config, sr_enabled=args.sr_enabled))
        theparams["damping_model"] = args.damping
        mn_io.writespectrumjson(thespectrum, args.out, params=theparams)
    else:
        mn_io.writespectrumcsv(thespectrum, args.out)
    return EXIT_OK


def dosweep(args, timer):
    config = mn_io.readconfig(args.config)
    f_eval = config.grid.f_min if args.f_eval is None else args.f_eval
    options = mn_budget.BudgetOptions(sr_enabled=args.sr_enabled, damping_model=args.damping)
    thetable = mn_budget.sweep(
        args.param, args.values, f_eval, config, options=options, n_jobs=args.nprocs
    )
    timer.mark("Sweep computed", number=len(thetable), units="rows")
    mn_io.writetable(thetable, args.out, thetype=args.format)
    return EXIT_OK


def _writesolution(thesolution, args):
    if args.format == "json":
        mn_io.writedicttojson(thesolution.todict(), args.out)
    else:
        mn_io.writedict(thesolution.todict(), args.out)


def dosolvepower(args, timer):
    config = mn_io.readconfig(args.config)
    thesolution = mn_budget.solve_power(
        args.ratio,
        args.f_eval,
        config.optics,
        config.membrane,
        config.recycling,
        sr_enabled=args.sr_enabled,
    )
    timer.mark("Power solved")
    _writesolution(thesolution, args)
    return EXIT_OK


def dosolvethermal(args, timer):
    config = mn_io.readconfig(args.config)
    thesolution = mn_budget.solve_thermal_power(
        args.T,
        args.Q,
        config.optics,
        config.membrane,
        config.recycling,
        margin=args.margin,
        f_eval=args.f_eval,
        sr_enabled=args.sr_enabled,
        damping=args.damping,
    )
    timer.mark("Thermal power solved")
    _writesolution(thesolution, args)
    return EXIT_OK


def doverify(args, timer):
    if args.draws < 1:
        raise ParameterError([("draws", "at least one draw is required")])
    thereport = mn_oracle.run_verification(draws=args.draws, seed=args.seed, debug=args.debug)
    timer.mark("Verification run")
    thetable = pd.DataFrame(thereport, columns=["check", "max_error", "tolerance", "passed"])
    mn_io.writetable(thetable, args.out, thetype=args.format)
    failed = [theentry["check"] for theentry in thereport if not theentry["passed"]]
    for thecheck in failed:
        LGR.error(f"verification failed: {thecheck}")
    if failed:
        return EXIT_INTERNAL
    LGR.info(f"all {len(thereport)} checks passed")
    return EXIT_OK


def dopreset(args, timer):
    thetext = mn_io.presettext(args.name)
    if args.out is None or args.out == "-":
        sys.stdout.write(thetext)
    else:
        with open(args.out, "w", encoding="utf-8") as thefile:
            thefile.write(thetext)
    return EXIT_OK


VERBS = {
    "budget": dobudget,
    "sweep": dosweep,
    "solve-power": dosolvepower,
    "solve-thermal": dosolvethermal,
    "verify": doverify,
    "preset": dopreset,
}


def msnoise(args):
    r"""Run one verb.

    Parameters
    ----------
    args : argparse.Namespace
        Parsed arguments from _get_parser().

    Returns
    -------
    exitcode : int
        0 on success, 2 if the inputs are invalid, 1 otherwise.
    """
    mn_util.setup_logger(debug=args.debug, logfile=args.logfile)
    timer = mn_util.Timer()
    LGR.debug(f"msnoise {args.verb}: {vars(args)}")
    try:
        exitcode = VERBS[args.verb](args, timer)
    except ParameterError as theerror:
        for thefield, themessage in theerror.errors:
            LGR.error(f"{thefield}: {themessage}")
        return EXIT_INVALID
    except DomainError as theerror:
        LGR.error(str(theerror))
        return EXIT_INVALID
    except Exception as theerror:
        LGR.error(f"internal error: {type(theerror).__name__}: {theerror}")
        LGR.debug("traceback:", exc_info=True)
        return EXIT_INTERNAL
    timer.mark("Done")
    if args.debug:
        timer.report()
    return exitcode


def run(argv=None):
    """Parse argv (default sys.argv[1:]) and run; returns the exit code instead of exiting."""
    try:
        args = _get_parser().parse_args(argv)
    except SystemExit as theexit:
        if isinstance(theexit.code, int):
            return theexit.code
        return EXIT_OK if theexit.code is None else EXIT_INVALID
    return msnoise(args)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
