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
Noise budget over a frequency grid, and closed-form design solvers.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

import membranenoise.core as mn_core
import membranenoise.mechanics as mn_mech
import membranenoise.quantum as mn_quant
from membranenoise.core import CONSTANTS, DomainError, ParameterError

LGR = logging.getLogger(__name__)

ALL_CHANNELS = ("shot", "rad", "thermal_viscous", "thermal_structural", "total", "sql")
DAMPINGCHOICES = ("viscous", "structural", "both")
DISPLACEMENTUNITS = "m/rtHz"


@dataclass(frozen=True)
class BudgetOptions:
    """What compute_budget evaluates.

    Parameters
    ----------
    sr_enabled : bool
        Use the signal-recycling mirror of the config (if there is one).
    damping_model : {'viscous', 'structural', 'both'}
        Thermal models to evaluate.  With 'both', total uses viscous damping.
    channels : tuple of str
        Subset of ALL_CHANNELS to compute.
    """

    sr_enabled: bool = True
    damping_model: str = "both"
    channels: Tuple[str, ...] = ALL_CHANNELS

    def validate(self):
        errors = []
        if self.damping_model not in DAMPINGCHOICES:
            errors.append(("damping_model", f"must be one of {', '.join(DAMPINGCHOICES)}"))
        if len(self.channels) == 0:
            errors.append(("channels", "at least one channel must be selected"))
        for thechannel in self.channels:
            if thechannel not in ALL_CHANNELS:
                errors.append(("channels", f"unknown channel {thechannel}"))
        return errors

    @property
    def thermalmodels(self):
        if self.damping_model == "both":
            return mn_mech.DAMPINGMODELS
        return (self.damping_model,)

    @property
    def totalmodel(self):
        """Thermal model entering the total: viscous unless only structural is requested."""
        if self.damping_model == "structural":
            return "structural"
        return "viscous"


@dataclass(frozen=True)
class PowerSolution:
    """Result of a power solve.

    effective_power is g_SR * P_bs (the combination the noise depends on), power_at_bs is
    g_PR * P0 and laser_power is P0.
    """

    effective_power: float
    power_at_bs: float
    laser_power: float
    g_SR: float
    f_eval: float
    target: float
    thermal_scale: Optional[float] = None

    def todict(self):
        thedict = {
            "effective_power": self.effective_power,
            "power_at_bs": self.power_at_bs,
            "laser_power": self.laser_power,
            "g_SR": self.g_SR,
            "f_eval": self.f_eval,
            "target": self.target,
        }
        if self.thermal_scale is not None:
            thedict["thermal_scale"] = self.thermal_scale
        return thedict


def _checkall(optics, membrane, recycling, options=None):
    errors = []
    for section, params in (
        ("optics", optics),
        ("membrane", membrane),
        ("recycling", recycling),
    ):
        errors += [(f"{section}.{thefield}", msg) for thefield, msg in mn_core.validate(params)]
    if options is not None:
        errors += options.validate()
    if errors:
        raise ParameterError(errors)


def compute_budget(grid, optics, membrane, recycling, options=None, debug=False):
    r"""Evaluate every selected noise channel on a frequency grid.

    Parameters
    ----------
    grid : FrequencyGrid
    optics : OpticsParams
    membrane : MembraneParams
    recycling : RecyclingParams
    options : BudgetOptions, optional
    debug : bool, optional

    Returns
    -------
    thespectrum : NoiseSpectrum
        Displacement ASDs in m/rtHz.  total is the quadrature sum of the selected shot, rad and
        thermal (see BudgetOptions.totalmodel) channels.
    """
    if options is None:
        options = BudgetOptions()
    _checkall(optics, membrane, recycling, options)
    thefreqs = grid.frequencies()
    theinputs = mn_quant.QuantumNoiseInputs.from_params(
        optics, membrane, recycling, sr_enabled=options.sr_enabled
    )
    if debug:
        LGR.debug(
            f"compute_budget: {len(thefreqs)} bins, g_SR={theinputs.g_SR}, "
            f"f_SR={theinputs.f_SR}, P_eff={theinputs.effective_power}"
        )
    if options.sr_enabled and recycling.r_SR is None:
        LGR.info("signal recycling requested but no signal-recycling mirror is configured")
    if theinputs.sr_enabled and optics.phi0 != 0.0:
        LGR.warning(
            f"phi0 = {optics.phi0}: the dark fringe offset penalty is applied to a "
            "signal-recycled readout; only valid for small offsets"
        )

    selected = set(options.channels)
    channels = {}
    if "shot" in selected:
        channels["shot"] = mn_quant.shot_asd(thefreqs, theinputs)
    if "rad" in selected:
        channels["rad"] = mn_quant.rad_asd(thefreqs, theinputs)
    for themodel in options.thermalmodels:
        thename = f"thermal_{themodel}"
        if thename in selected:
            channels[thename] = mn_mech.thermal_displacement_asd(
                thefreqs, membrane, model=themodel
            )
    if "total" in selected:
        thesum = np.zeros_like(thefreqs)
        if "shot" in channels:
            thesum += channels["shot"] ** 2
        if "rad" in channels:
            thesum += channels["rad"] ** 2
        thermalname = f"thermal_{options.totalmodel}"
        if thermalname in channels:
            thesum += channels[thermalname] ** 2
        channels["total"] = np.sqrt(thesum)
    if "sql" in selected:
        channels["sql"] = mn_quant.sql_asd(thefreqs, membrane)

    # fixed column order, independent of the order channels were requested in
    ordered = {thename: channels[thename] for thename in ALL_CHANNELS if thename in channels}
    return mn_core.NoiseSpectrum(
        grid=grid,
        frequencies=thefreqs,
        channels=ordered,
        units={thename: DISPLACEMENTUNITS for thename in ordered},
    )


def budget_from_config(config, options=None, debug=False):
    return compute_budget(
        config.grid, config.optics, config.membrane, config.recycling, options=options, debug=debug
    )


def ratio_at(f, channel_a, channel_b, optics, membrane, recycling, options=None):
    r"""Amplitude ratio channel_a / channel_b at a single frequency.

    Parameters
    ----------
    f : float
        Frequency in Hz.
    channel_a, channel_b : str
        Channel names from ALL_CHANNELS.

    Returns
    -------
    theratio : float
    """
    if options is None:
        options = BudgetOptions()
    if "total" not in (channel_a, channel_b):
        # skip channels that could fail (e.g. shot at zero power) when they are not asked for
        options = replace(options, channels=tuple(sorted({channel_a, channel_b})))
    thespectrum = compute_budget(
        mn_core.FrequencyGrid.single(f), optics, membrane, recycling, options=options
    )
    for thechannel in (channel_a, channel_b):
        if thechannel not in thespectrum.channels:
            raise ParameterError([(thechannel, "channel not defined with these options")])
    thedenom = thespectrum[channel_b][0]
    if thedenom == 0.0:
        raise DomainError(f"ratio undefined: {channel_b} is zero at {f} Hz")
    return float(thespectrum[channel_a][0] / thedenom)


def _cavitywarning(f_eval, theinputs):
    if f_eval >= theinputs.f_SR:
        LGR.warning(
            f"evaluation frequency {f_eval} Hz is not below the signal-recycling "
            f"cavity pole ({theinputs.f_SR:.4g} Hz)"
        )


def solve_power(target_ratio, f_eval, optics, membrane, recycling, sr_enabled=True):
    r"""Power that gives a requested rad/shot amplitude ratio at f_eval.

    The ratio is |H(f)| 16 pi g_SR r**2 P_bs / (c lambda) / (1 + (f/f_SR)**2), linear in power,
    so the inversion is exact.

    Parameters
    ----------
    target_ratio : float
        Desired rad/shot ratio k > 0.
    f_eval : float
        Frequency in Hz (0 for the low frequency asymptote).

    Returns
    -------
    thesolution : PowerSolution
    """
    if not (target_ratio > 0.0 and math.isfinite(target_ratio)):
        raise ParameterError([("target_ratio", "target ratio must be positive and finite")])
    _checkall(optics, membrane, recycling)
    if membrane.R <= 0.0:
        raise DomainError("no solution: a transparent membrane has no readout signal")
    theinputs = mn_quant.QuantumNoiseInputs.from_params(
        optics, membrane, recycling, sr_enabled=sr_enabled
    )
    _cavitywarning(f_eval, theinputs)
    thesusc = np.abs(mn_mech.susceptibility(f_eval, membrane))
    effective_power = (
        target_ratio
        * CONSTANTS.c
        * optics.wavelength
        * mn_quant.pole_factor(f_eval, theinputs) ** 2
        / (16.0 * np.pi * membrane.R * thesusc)
    )
    power_at_bs = effective_power / theinputs.g_SR
    return PowerSolution(
        effective_power=float(effective_power),
        power_at_bs=float(power_at_bs),
        laser_power=float(power_at_bs / theinputs.g_PR),
        g_SR=theinputs.g_SR,
        f_eval=f_eval,
        target=target_ratio,
    )


def reference_margin(f_eval, optics, membrane, recycling, sr_enabled=True, damping="viscous"):
    """rad/thermal amplitude ratio of the given design at f_eval."""
    _checkall(optics, membrane, recycling)
    theinputs = mn_quant.QuantumNoiseInputs.from_params(
        optics, membrane, recycling, sr_enabled=sr_enabled
    )
    thethermal = mn_mech.thermal_displacement_asd(f_eval, membrane, model=damping)
    if thethermal == 0.0:
        raise DomainError("reference margin undefined: thermal noise is zero (T = 0)")
    return float(mn_quant.rad_asd(f_eval, theinputs) / thethermal)


def solve_thermal_power(
    T,
    Q,
    optics,
    membrane,
    recycling,
    margin=None,
    f_eval=0.0,
    sr_enabled=True,
    damping="viscous",
):
    r"""Beam splitter power keeping rad noise a given factor above thermal noise at (T, Q).

    rad scales as sqrt(P) and thermal as sqrt(T/Q), so the required power scales as
    (T/Q) * margin**2.

    Parameters
    ----------
    T : float
        Membrane temperature in K.
    Q : float
        Mechanical quality factor.
    margin : float, optional
        Desired rad/thermal amplitude ratio at f_eval.  Default is the ratio the supplied design
        (optics, membrane, recycling) already achieves, so the answer is the power needed to keep
        the reference design's margin at the new temperature and Q.
    f_eval : float, optional
        Frequency in Hz.  Must be > 0 for structural damping.

    Returns
    -------
    thesolution : PowerSolution
        thermal_scale holds the thermal amplitude factor relative to the reference (T, Q),
        or None when the reference is at T = 0.
    """
    errors = []
    if not (T >= 0.0 and math.isfinite(T)):
        errors.append(("T", "temperature must be non-negative"))
    if not (Q > 0.0 and math.isfinite(Q)):
        errors.append(("Q", "Q must be positive"))
    if margin is not None and not (margin > 0.0 and math.isfinite(margin)):
        errors.append(("margin", "margin must be positive"))
    if errors:
        raise ParameterError(errors)
    _checkall(optics, membrane, recycling)
    if membrane.R <= 0.0:
        raise DomainError("no solution: a transparent membrane feels no radiation pressure")
    if margin is None:
        margin = reference_margin(
            f_eval, optics, membrane, recycling, sr_enabled=sr_enabled, damping=damping
        )
        LGR.info(f"using the reference design margin {margin:.4g}")
    theinputs = mn_quant.QuantumNoiseInputs.from_params(
        optics, membrane, recycling, sr_enabled=sr_enabled
    )
    _cavitywarning(f_eval, theinputs)
    newmembrane = replace(membrane, T_mem=T, Q_mem=Q)
    thethermalforce = mn_mech.thermal_force_asd(f_eval, newmembrane, model=damping)
    effective_power = (
        margin**2
        * thethermalforce**2
        * mn_quant.pole_factor(f_eval, theinputs) ** 2
        * CONSTANTS.c
        * optics.wavelength
        / (16.0 * np.pi * CONSTANTS.hbar * membrane.R)
    )
    power_at_bs = effective_power / theinputs.g_SR
    thescale = mn_mech.thermal_scale_factor(T, Q, membrane.T_mem, membrane.Q_mem)
    # undefined against a reference at T = 0
    thermal_scale = float(thescale) if np.isfinite(thescale) else None
    return PowerSolution(
        effective_power=float(effective_power),
        power_at_bs=float(power_at_bs),
        laser_power=float(power_at_bs / theinputs.g_PR),
        g_SR=theinputs.g_SR,
        f_eval=f_eval,
        target=float(margin),
        thermal_scale=thermal_scale,
    )


# ---------------------------------------- Sweeps -------------------------------------------------
SWEEPCOLUMNS = (
    "value",
    "g_PR",
    "g_SR",
    "f_SR",
    "power_at_bs",
    "shot",
    "rad",
    "thermal",
    "rad_over_shot",
    "rad_over_thermal",
)


def _safedivide(a, b):
    if b == 0.0 or not np.isfinite(b):
        return np.nan
    return a / b


def _sweeprow(config, param_name, thevalue, f_eval, options):
    newconfig = mn_core.setconfigvalue(config, param_name, thevalue)
    _checkall(newconfig.optics, newconfig.membrane, newconfig.recycling, options)
    theinputs = mn_quant.QuantumNoiseInputs.from_params(
        newconfig.optics, newconfig.membrane, newconfig.recycling, sr_enabled=options.sr_enabled
    )
    try:
        theshot = float(mn_quant.shot_asd(f_eval, theinputs))
    except DomainError:
        theshot = np.inf
    therad = float(mn_quant.rad_asd(f_eval, theinputs))
    thethermal = float(
        mn_mech.thermal_displacement_asd(f_eval, newconfig.membrane, model=options.totalmodel)
    )
    return (
        thevalue,
        theinputs.g_PR,
        theinputs.g_SR,
        theinputs.f_SR,
        newconfig.optics.P_bs,
        theshot,
        therad,
        thethermal,
        _safedivide(therad, theshot),
        _safedivide(therad, thethermal),
    )


def sweep(param_name, values, f_eval, config, options=None, n_jobs=1):
    r"""Evaluate the noise at one frequency while stepping one config parameter.

    Parameters
    ----------
    param_name : str
        A config file key, e.g. "recycling.r_SR" or "power_at_bs".
    values : sequence of float
        Values to step through, in order.
    f_eval : float
        Frequency in Hz.
    config : DesignConfig
    options : BudgetOptions, optional
        sr_enabled and the thermal model (BudgetOptions.totalmodel) are used.
    n_jobs : int, optional
        Rows are independent and may be evaluated in parallel; row order is always the order
        of values.

    Returns
    -------
    thetable : pandas.DataFrame
        One row per value with columns SWEEPCOLUMNS.  Unbounded shot noise (zero signal) is
        reported as inf and undefined ratios as nan.
    """
    if options is None:
        options = BudgetOptions()
    if param_name not in mn_core.CONFIG_KEYS:
        raise ParameterError([(param_name, "unknown parameter name")])
    if mn_core.CONFIG_KEYS[param_name][2] not in ("float", "optfloat", "int"):
        raise ParameterError([(param_name, "parameter is not numeric and cannot be swept")])
    values = list(values)
    for thevalue in values:
        if thevalue is None or not math.isfinite(thevalue):
            raise ParameterError([(param_name, f"sweep value {thevalue} is not finite")])
    if mn_core.CONFIG_KEYS[param_name][2] == "int":
        values = [int(thevalue) for thevalue in values]
    rows = Parallel(n_jobs=n_jobs)(
        delayed(_sweeprow)(config, param_name, thevalue, f_eval, options) for thevalue in values
    )
    thetable = pd.DataFrame(rows, columns=list(SWEEPCOLUMNS))
    thetable.insert(0, "param", param_name)
    return thetable


# ---------------------------------------- Spectrum analysis --------------------------------------
def crossover_frequencies(thespectrum, channel_a, channel_b):
    r"""Frequencies where channel_a and channel_b cross.

    Located by a sign change of log(a/b) between adjacent bins and interpolated linearly in
    log-frequency.

    Returns
    -------
    thecrossings : list of float
    """
    a = thespectrum[channel_a]
    b = thespectrum[channel_b]
    valid = (a > 0.0) & (b > 0.0)
    thefreqs = thespectrum.frequencies
    thecrossings = []
    logratio = np.where(valid, np.log(np.where(valid, a, 1.0) / np.where(valid, b, 1.0)), np.nan)
    for i in range(len(thefreqs) - 1):
        left, right = logratio[i], logratio[i + 1]
        if not (np.isfinite(left) and np.isfinite(right)):
            continue
        if left == 0.0:
            thecrossings.append(float(thefreqs[i]))
        elif left * right < 0.0:
            thefrac = left / (left - right)
            logf = np.log(thefreqs[i]) + thefrac * (np.log(thefreqs[i + 1]) - np.log(thefreqs[i]))
            thecrossings.append(float(np.exp(logf)))
    if len(thefreqs) > 0 and logratio[-1] == 0.0:
        thecrossings.append(float(thefreqs[-1]))
    return thecrossings
