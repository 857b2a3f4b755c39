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
Closed-form quantum noise of the Michelson-Sagnac interferometer: output power, shot noise,
radiation pressure force and displacement noise, with power and (tuned) signal recycling.

All spectral densities are single-sided amplitude spectral densities.
"""
import logging
from dataclasses import dataclass

import numpy as np

import membranenoise.core as mn_core
import membranenoise.mechanics as mn_mech
from membranenoise.core import CONSTANTS, DomainError

LGR = logging.getLogger(__name__)

# |cos(phi0/2)| below this is treated as the bright-fringe singularity
MINFRINGEFACTOR = 1e-12


@dataclass(frozen=True)
class QuantumNoiseInputs:
    """Everything the quantum noise formulas depend on.

    With sr_enabled False the signal-recycling gain is forced to 1 and the cavity pole to
    infinity, so the (1 + (f/f_SR)**2) factors are identically 1.
    """

    optics: mn_core.OpticsParams
    membrane: mn_core.MembraneParams
    g_PR: float = 1.0
    g_SR: float = 1.0
    f_SR: float = np.inf
    sr_enabled: bool = False

    def __post_init__(self):
        if not self.sr_enabled:
            object.__setattr__(self, "g_SR", 1.0)
            object.__setattr__(self, "f_SR", np.inf)

    @classmethod
    def from_params(cls, optics, membrane, recycling, sr_enabled=True):
        gains = mn_core.derive_recycling(recycling)
        return cls(
            optics=optics,
            membrane=membrane,
            g_PR=gains.g_PR,
            g_SR=gains.g_SR,
            f_SR=gains.f_SR,
            sr_enabled=sr_enabled and (recycling.r_SR is not None),
        )

    @property
    def effective_power(self):
        """g_SR * (g_PR * P0); P_bs already includes the power-recycling gain."""
        return self.g_SR * self.optics.P_bs


def pole_factor(f, inputs):
    r"""Amplitude factor sqrt(1 + (f/f_SR)**2) of the tuned signal-recycling cavity."""
    thefreqs = np.asarray(f, dtype=float)
    return np.sqrt(1.0 + (thefreqs / inputs.f_SR) ** 2)


# ---------------------------------------- Readout ------------------------------------------------
def output_power(x, inputs):
    r"""Power at the output port for membrane displacement x (exact, not linearised).

    Parameters
    ----------
    x : float or array-like
        Displacement of the membrane from the operating point, in m.
    inputs : QuantumNoiseInputs

    Returns
    -------
    P_out : float or numpy array
        Output power in W.
    """
    optics = inputs.optics
    thephase = optics.phi0 + (8.0 * np.pi / optics.wavelength) * np.asarray(x, dtype=float)
    return 0.5 * inputs.membrane.R * optics.P_bs * (1.0 - np.cos(thephase))


def output_power_linear(x, inputs):
    r"""First order Taylor expansion of output_power around x = 0."""
    optics = inputs.optics
    return (
        0.5
        * inputs.membrane.R
        * optics.P_bs
        * (
            1.0
            - np.cos(optics.phi0)
            + (8.0 * np.pi / optics.wavelength) * np.asarray(x, dtype=float) * np.sin(optics.phi0)
        )
    )


def signal_slope(inputs, signed=False):
    r"""|dP_out/dx| at x = 0, in W/m.

    Zero on the dark and bright fringes; the caller decides whether that matters.
    """
    optics = inputs.optics
    theslope = 0.5 * inputs.membrane.R * optics.P_bs * (8.0 * np.pi / optics.wavelength)
    if signed:
        return theslope * np.sin(optics.phi0)
    return theslope * np.abs(np.sin(optics.phi0))


def output_light_asd(inputs, x=0.0):
    r"""Shot noise of the light leaving the output port, sqrt(2 hbar omega0 P_out), in W/rtHz."""
    return np.sqrt(2.0 * CONSTANTS.hbar * inputs.optics.omega0 * output_power(x, inputs))


# ---------------------------------------- Shot noise ---------------------------------------------
def fringe_factor(phi0):
    """Shot noise penalty 1/|cos(phi0/2)| for operating off the dark fringe."""
    thecos = np.abs(np.cos(0.5 * phi0))
    if thecos < MINFRINGEFACTOR:
        raise DomainError("zero fringe slope: shot noise undefined at phi0 = pi")
    return 1.0 / thecos


def shot_asd(f, inputs):
    r"""Signal-normalised shot noise, in m/rtHz.

    sqrt(hbar c lambda / (16 pi g_PR g_SR r**2 P0)) * sqrt(1 + (f/f_SR)**2) / |cos(phi0/2)|

    Parameters
    ----------
    f : float or array-like
        Frequency in Hz.
    inputs : QuantumNoiseInputs

    Returns
    -------
    theasd : float or numpy array
    """
    optics = inputs.optics
    thepower = inputs.effective_power
    if inputs.membrane.R <= 0.0 or thepower <= 0.0:
        raise DomainError("no signal: shot noise unbounded")
    thefac = fringe_factor(optics.phi0)
    if optics.phi0 != 0.0 and inputs.sr_enabled:
        LGR.debug("applying the dark fringe offset penalty to a signal-recycled readout")
    floor = np.sqrt(
        CONSTANTS.hbar
        * CONSTANTS.c
        * optics.wavelength
        / (16.0 * np.pi * inputs.membrane.R * thepower)
    )
    return floor * pole_factor(f, inputs) * thefac


# ---------------------------------------- Radiation pressure -------------------------------------
def rp_force_asd(inputs):
    r"""Radiation pressure force noise below the cavity pole, in N/rtHz.

    The reflected and transmitted quadratures add to
    (2/c)**2 * 2 hbar omega0 P * r**2 (r**2 + t**2), which is r**2-only for a lossless membrane.
    """
    return np.sqrt(
        16.0
        * np.pi
        * CONSTANTS.hbar
        * inputs.membrane.R
        * inputs.effective_power
        / (CONSTANTS.c * inputs.optics.wavelength)
    )


def rad_asd(f, inputs):
    r"""Displacement noise driven by radiation pressure, |H(f)| F_RP / sqrt(1 + (f/f_SR)**2)."""
    return (
        np.abs(mn_mech.susceptibility(f, inputs.membrane))
        * rp_force_asd(inputs)
        / pole_factor(f, inputs)
    )


def sql_asd(f, mem):
    r"""Standard quantum limit, sqrt(2 hbar |H(f)|), in m/rtHz.

    This is the minimum over power of sqrt(G_shot + G_rad) at the dark fringe.
    """
    return np.sqrt(2.0 * CONSTANTS.hbar * np.abs(mn_mech.susceptibility(f, mem)))


def quantum_total_asd(f, inputs):
    """Quadrature sum of shot and radiation pressure noise."""
    return np.sqrt(shot_asd(f, inputs) ** 2 + rad_asd(f, inputs) ** 2)
