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
Physical constants, parameter containers, derived recycling quantities and the
frequency grid / spectrum containers shared by the rest of the package.
"""
import logging
import math
from dataclasses import dataclass, field, fields, replace
from typing import Dict, NamedTuple, Optional

import numpy as np
import scipy.constants as spc

LGR = logging.getLogger(__name__)


# ---------------------------------------- Exceptions 
class ParameterError(ValueError):
    """One or more parameter invariants are violated.

    Attributes
    ----------
    errors : list of (str, str)
        (field name, message) for every violation found.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__(
            "; ".join(f"{thefield}: {themessage}" for thefield, themessage in self.errors)
        )


class DomainError(ValueError):
    """A quantity was requested where it is mathematically undefined."""


# ---------------------------------------- Global constants 
@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    c: float
    k_B: float
    epsilon_0: float


CONSTANTS = PhysicalConstants(
    hbar=spc.hbar,  # J s
    c=spc.c,  # m / s
    k_B=spc.k,  # J / K
    epsilon_0=spc.epsilon_0,  # F / m
)

SPACINGS = ("log", "linear")

DEFAULT_WAVELENGTH = 1064e-9
DEFAULT_POWER_AT_BS = 1.0
DEFAULT_PHI0 = 0.0
DEFAULT_ARMLENGTH = 0.6
DEFAULT_SRLENGTH = 0.03
DEFAULT_FMIN = 1e3
DEFAULT_FMAX = 1e6
DEFAULT_NPOINTS = 1000
DEFAULT_SPACING = "log"


# ---------------------------------------- Parameter types 
@dataclass(frozen=True)
class MembraneParams:
    """Fundamental mode of the membrane oscillator.

    Parameters
    ----------
    R : float
        Power reflectance r**2.
    f_mem : float
        Resonant frequency in Hz.
    m_mem : float
        Effective mass in kg.
    Q_mem : float
        Mechanical quality factor.
    T_mem : float
        Temperature in K.
    """

    R: float = 0.35
    f_mem: float = 75e3
    m_mem: float = 125e-12
    Q_mem: float = 1e7
    T_mem: float = 1.0

    @property
    def r(self):
        return math.sqrt(self.R)

    @property
    def t(self):
        return math.sqrt(1.0 - self.R)


@dataclass(frozen=True)
class OpticsParams:
    wavelength: float = DEFAULT_WAVELENGTH
    P_bs: float = DEFAULT_POWER_AT_BS
    phi0: float = DEFAULT_PHI0

    @property
    def omega0(self):
        return 2.0 * np.pi * CONSTANTS.c / self.wavelength


@dataclass(frozen=True)
class RecyclingParams:
    """Recycling mirrors and interferometer geometry.

    A mirror reflectance of None means the mirror is absent.
    """

    r_SR: Optional[float] = None
    r_PR: Optional[float] = None
    L: float = DEFAULT_ARMLENGTH
    L_SR: float = DEFAULT_SRLENGTH


class RecyclingGains(NamedTuple):
    g_PR: float
    g_SR: float
    f_SR: float


@dataclass(frozen=True)
class FrequencyGrid:
    f_min: float = DEFAULT_FMIN
    f_max: float = DEFAULT_FMAX
    n_points: int = DEFAULT_NPOINTS
    spacing: str = DEFAULT_SPACING

    def frequencies(self):
        r"""Return the grid as a strictly increasing array in Hz.

        Returns
        -------
        thefreqs : 1D numpy array
        """
        check(self)
        if self.n_points == 1:
            return np.array([float(self.f_min)])
        if self.spacing == "log":
            return np.geomspace(self.f_min, self.f_max, self.n_points)
        return np.linspace(self.f_min, self.f_max, self.n_points)

    @classmethod
    def single(cls, thefreq):
        return cls(f_min=thefreq, f_max=thefreq, n_points=1, spacing="linear")


@dataclass(frozen=True)
class NoiseSpectrum:
    """Amplitude spectral densities evaluated on a frequency grid.

    Parameters
    ----------
    grid : FrequencyGrid
    frequencies : 1D numpy array
        The abscissa in Hz.
    channels : dict
        Channel name -> ASD array, each the same length as frequencies.
    units : dict
        Channel name -> units tag ("m/rtHz" or "N/rtHz").
    """

    grid: FrequencyGrid
    frequencies: np.ndarray
    channels: Dict[str, np.ndarray] = field(default_factory=dict)
    units: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        errors = []
        for thename, thevals in self.channels.items():
            if len(thevals) != len(self.frequencies):
                errors.append((thename, "length does not match the frequency grid"))
            elif not np.all(np.isfinite(thevals)):
                errors.append((thename, "values must be finite"))
            elif np.any(thevals < 0.0):
                errors.append((thename, "values must be non-negative"))
            if thename not in self.units:
                errors.append((thename, "missing units tag"))
        if errors:
            raise ParameterError(errors)

    @property
    def channelnames(self):
        return list(self.channels.keys())

    def __getitem__(self, thename):
        return self.channels[thename]


@dataclass(frozen=True)
class DesignConfig:
    """Everything one config file describes."""

    optics: OpticsParams = field(default_factory=OpticsParams)
    membrane: MembraneParams = field(default_factory=MembraneParams)
    recycling: RecyclingParams = field(default_factory=RecyclingParams)
    grid: FrequencyGrid = field(default_factory=FrequencyGrid)


def tableI_config():
    """The design example: 1 W at the beam splitter with signal recycling, 1 K membrane."""
    return DesignConfig(
        optics=OpticsParams(wavelength=1064e-9, P_bs=1.0, phi0=0.0),
        membrane=MembraneParams(R=0.35, f_mem=75e3, m_mem=125e-12, Q_mem=1e7, T_mem=1.0),
        recycling=RecyclingParams(r_SR=0.998, r_PR=None, L=0.6, L_SR=0.03),
        grid=FrequencyGrid(f_min=1e3, f_max=1e6, n_points=1000, spacing="log"),
    )


# ---------------------------------------- Config key table 
# key -> (section attribute on DesignConfig, field name, value kind)
CONFIG_KEYS = {
    "lambda": ("optics", "wavelength", "float"),
    "power_at_bs": ("optics", "P_bs", "float"),
    "phi0": ("optics", "phi0", "float"),
    "membrane.R": ("membrane", "R", "float"),
    "membrane.f_mem": ("membrane", "f_mem", "float"),
    "membrane.m_eff": ("membrane", "m_mem", "float"),
    "membrane.Q": ("membrane", "Q_mem", "float"),
    "membrane.T": ("membrane", "T_mem", "float"),
    "recycling.r_SR": ("recycling", "r_SR", "optfloat"),
    "recycling.r_PR": ("recycling", "r_PR", "optfloat"),
    "geometry.L": ("recycling", "L", "float"),
    "geometry.L_SR": ("recycling", "L_SR", "float"),
    "grid.f_min": ("grid", "f_min", "float"),
    "grid.f_max": ("grid", "f_max", "float"),
    "grid.n_points": ("grid", "n_points", "int"),
    "grid.spacing": ("grid", "spacing", "str"),
}


def getconfigvalue(config, thekey):
    section, thefield, dummy = CONFIG_KEYS[thekey]
    return getattr(getattr(config, section), thefield)


def setconfigvalue(config, thekey, thevalue):
    r"""Return a copy of config with one config-file key replaced.

    Parameters
    ----------
    config : DesignConfig
    thekey : str
        One of the config file keys (e.g. "membrane.R").
    thevalue : float, int, str or None

    Returns
    -------
    newconfig : DesignConfig
    """
    try:
        section, thefield, dummy = CONFIG_KEYS[thekey]
    except KeyError:
        raise ParameterError([(thekey, "unknown parameter name")])
    newsection = replace(getattr(config, section), **{thefield: thevalue})
    return replace(config, **{section: newsection})


def configtodict(config):
    """Flat key -> value dictionary using the config file keys."""
    return {thekey: getconfigvalue(config, thekey) for thekey in CONFIG_KEYS}


# ---------------------------------------- Validation 
def _isfinite(thevalue):
    try:
        return math.isfinite(thevalue)
    except TypeError:
        return False


def _validatemembrane(mem):
    errors = []
    for thefield in fields(mem):
        if not _isfinite(getattr(mem, thefield.name)):
            errors.append((thefield.name, "must be a finite number"))
    if errors:
        return errors
    if not (0.0 <= mem.R <= 1.0):
        errors.append(("R", "R out of [0,1]"))
    if mem.f_mem <= 0.0:
        errors.append(("f_mem", "resonant frequency must be positive"))
    if mem.m_mem <= 0.0:
        errors.append(("m_mem", "mass must be positive"))
    if mem.Q_mem <= 0.0:
        errors.append(("Q_mem", "Q must be positive"))
    if mem.T_mem < 0.0:
        errors.append(("T_mem", "temperature must be non-negative"))
    return errors


def _validateoptics(optics):
    errors = []
    for thefield in fields(optics):
        if not _isfinite(getattr(optics, thefield.name)):
            thename = "lambda" if thefield.name == "wavelength" else thefield.name
            errors.append((thename, "must be a finite number"))
    if errors:
        return errors
    if optics.wavelength <= 0.0:
        errors.append(("lambda", "wavelength must be positive"))
    if optics.P_bs < 0.0:
        errors.append(("P_bs", "power must be non-negative"))
    if not (-np.pi <= optics.phi0 < np.pi):
        errors.append(("phi0", "phi0 out of [-pi, pi)"))
    return errors


def _validaterecycling(rp):
    errors = []
    for thename in ("r_SR", "r_PR"):
        thevalue = getattr(rp, thename)
        if thevalue is None:
            continue
        if not _isfinite(thevalue):
            errors.append((thename, "must be a finite number"))
        elif not (0.0 <= thevalue < 1.0):
            errors.append((thename, f"{thename} out of [0,1) (recycling gain diverges at 1)"))
    for thename in ("L", "L_SR"):
        if not _isfinite(getattr(rp, thename)):
            errors.append((thename, "must be a finite number"))
    if _isfinite(rp.L) and rp.L <= 0.0:
        errors.append(("L", "arm length must be positive"))
    if _isfinite(rp.L_SR) and rp.L_SR < 0.0:
        errors.append(("L_SR", "signal-recycling distance must be non-negative"))
    return errors


def _validategrid(grid):
    errors = []
    if grid.spacing not in SPACINGS:
        errors.append(("spacing", f"spacing must be one of {', '.join(SPACINGS)}"))
    if isinstance(grid.n_points, bool) or not isinstance(grid.n_points, (int, np.integer)):
        errors.append(("n_points", "n_points must be an integer"))
    elif grid.n_points < 1:
        errors.append(("n_points", "n_points must be at least 1"))
    if not (_isfinite(grid.f_min) and _isfinite(grid.f_max)):
        errors.append(("f_min", "grid limits must be finite numbers"))
        return errors
    if grid.f_min <= 0.0:
        errors.append(("f_min", "f_min must be positive"))
    if grid.f_min > grid.f_max:
        errors.append(("f_max", "f_max must not be below f_min"))
    elif (
        grid.f_min == grid.f_max
        and isinstance(grid.n_points, (int, np.integer))
        and grid.n_points > 1
    ):
        errors.append(("n_points", "grid is not strictly increasing (f_min == f_max)"))
    return errors


def validate(params):
    r"""Check the invariants of a parameter object.

    Parameters
    ----------
    params : MembraneParams, OpticsParams, RecyclingParams, FrequencyGrid or DesignConfig

    Returns
    -------
    errors : list of (str, str)
        Every violated invariant with its field name.  Empty means ok.
    """
    if isinstance(params, MembraneParams):
        return _validatemembrane(params)
    elif isinstance(params, OpticsParams):
        return _validateoptics(params)
    elif isinstance(params, RecyclingParams):
        return _validaterecycling(params)
    elif isinstance(params, FrequencyGrid):
        return _validategrid(params)
    elif isinstance(params, DesignConfig):
        errors = []
        for section in ("optics", "membrane", "recycling", "grid"):
            errors += [
                (f"{section}.{thefield}", themessage)
                for thefield, themessage in validate(getattr(params, section))
            ]
        return errors
    else:
        return [("params", f"cannot validate object of type {type(params).__name__}")]


def check(*theparams):
    """Raise ParameterError listing every violation in the given parameter objects."""
    errors = []
    for params in theparams:
        errors += validate(params)
    if errors:
        raise ParameterError(errors)


# ---------------------------------------- Derived quantities 
def recycling_gain(thereflectance):
    """(1 + r) / (1 - r); an absent mirror (None) has gain 1."""
    if thereflectance is None:
        return 1.0
    if thereflectance >= 1.0:
        raise ParameterError([("reflectance", "reflectance >= 1: recycling gain diverges")])
    return (1.0 + thereflectance) / (1.0 - thereflectance)


def derive_recycling(rp):
    r"""Power- and signal-recycling gains and the signal-recycling cavity pole.

    Parameters
    ----------
    rp : RecyclingParams

    Returns
    -------
    gains : RecyclingGains
        g_PR, g_SR and f_SR (Hz).  Without a signal-recycling mirror f_SR is +inf.
    """
    check(rp)
    g_PR = recycling_gain(rp.r_PR)
    g_SR = recycling_gain(rp.r_SR)
    if rp.r_SR is None:
        f_SR = np.inf
    else:
        f_SR = CONSTANTS.c * (1.0 - rp.r_SR) / (4.0 * np.pi * (rp.L_SR + rp.L))
    LGR.debug(f"derive_recycling: g_PR={g_PR}, g_SR={g_SR}, f_SR={f_SR}")
    return RecyclingGains(g_PR=g_PR, g_SR=g_SR, f_SR=f_SR)


def laser_power(optics, rp):
    """Input laser power P0 = P_bs / g_PR."""
    return optics.P_bs / recycling_gain(rp.r_PR)


def effective_power(optics, rp, sr_enabled=True):
    """The combination g_SR * g_PR * P0 that sets both quantum noises at low frequency."""
    if sr_enabled:
        return recycling_gain(rp.r_SR) * optics.P_bs
    return optics.P_bs


def sr_loss_tolerance(r_SR):
    """Round-trip interferometer loss at which the signal-recycling gain is lost (1 - r_SR**2).

    The gain formulas assume the loss stays well below this; loss itself is not modelled.
    """
    if r_SR is None:
        return np.inf
    return 1.0 - r_SR**2


def deriveddict(config, sr_enabled=True):
    """Derived quantities reported alongside outputs."""
    gains = derive_recycling(config.recycling)
    thedict = {
        "g_PR": gains.g_PR,
        "g_SR": gains.g_SR if sr_enabled else 1.0,
        "sqrt_g_SR": math.sqrt(gains.g_SR) if sr_enabled else 1.0,
        "f_SR": gains.f_SR if sr_enabled else np.inf,
        "laser_power": laser_power(config.optics, config.recycling),
        "effective_power": effective_power(config.optics, config.recycling, sr_enabled),
        "sr_loss_tolerance": sr_loss_tolerance(config.recycling.r_SR),
        "sr_enabled": sr_enabled,
    }
    return thedict
