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
Mechanical susceptibility of the membrane fundamental mode and its thermal noise.
"""
import logging

import numpy as np

from membranenoise.core import CONSTANTS, DomainError

LGR = logging.getLogger(__name__)

DAMPINGMODELS = ("viscous", "structural")


def _asfreqs(f):
    thefreqs = np.asarray(f, dtype=float)
    if np.any(thefreqs < 0.0):
        raise DomainError("frequencies must be non-negative")
    return thefreqs


def susceptibility(f, mem):
    r"""Complex displacement response to a force, in m/N.

    The loss term enters as i f / (Q f_mem), so the response is finite at resonance
    for any finite Q, and the same H is used for both damping models.

    Parameters
    ----------
    f : float or array-like
        Frequency in Hz (>= 0).
    mem : MembraneParams

    Returns
    -------
    H : complex or complex numpy array
    """
    thefreqs = _asfreqs(f)
    w = 2.0 * np.pi * thefreqs
    w0 = 2.0 * np.pi * mem.f_mem
    return 1.0 / (
        -mem.m_mem * w**2 + mem.m_mem * w0**2 * (1.0 + 1j * thefreqs / (mem.Q_mem * mem.f_mem))
    )


def thermal_force_asd(f, mem, model="viscous"):
    r"""Thermal force noise, single-sided ASD in N/rtHz.

    Parameters
    ----------
    f : float or array-like
        Frequency in Hz.  Must be > 0 for structural damping.
    mem : MembraneParams
    model : {'viscous', 'structural'}

    Returns
    -------
    theasd : float or numpy array
    """
    thefreqs = _asfreqs(f)
    w0 = 2.0 * np.pi * mem.f_mem
    prefac = 4.0 * CONSTANTS.k_B * mem.T_mem * mem.m_mem / mem.Q_mem
    if model == "viscous":
        thepsd = prefac * w0 * np.ones_like(thefreqs)
    elif model == "structural":
        if np.any(thefreqs == 0.0):
            raise DomainError("structural damping thermal noise diverges at f = 0")
        thepsd = prefac * w0**2 / (2.0 * np.pi * thefreqs)
    else:
        raise ValueError(f"unknown damping model {model} - must be one of {DAMPINGMODELS}")
    return np.sqrt(thepsd)


def thermal_displacement_asd(f, mem, model="viscous"):
    r"""Thermal displacement noise |H(f)| * force ASD, in m/rtHz.

    Flat below resonance for viscous damping, falling as 1/f**(1/2) for structural damping.
    """
    return np.abs(susceptibility(f, mem)) * thermal_force_asd(f, mem, model=model)


def thermal_scale_factor(T, Q, T_ref, Q_ref):
    """Thermal amplitude at (T, Q) relative to (T_ref, Q_ref): sqrt((T/Q) / (T_ref/Q_ref)).

    inf when only the reference is at T = 0, nan when both are.
    """
    thereference = T_ref / Q_ref
    if thereference == 0.0:
        return np.inf if T > 0.0 else np.nan
    return np.sqrt((T / Q) / thereference)
