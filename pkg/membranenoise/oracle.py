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
Independent check of the closed-form quantum noise.

The four travelling waves at the membrane are written as coefficient vectors over the
basis modes (D, E_v1, E_v2), one vector for the cos(omega0 t) quadrature and one for
sin(omega0 t).  D is the carrier (its coefficient holds the amplitude, so D**2 is the photon
rate), E_v1/E_v2 are the unit-spectrum vacuum quadratures entering from the output port.

The field normalisation sqrt(hbar omega0 / (A c eps0)) carries a beam area A and vacuum
permittivity eps0 that cancel in every output; both are set to 1.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize

import membranenoise.core as mn_core
import membranenoise.mechanics as mn_mech
import membranenoise.quantum as mn_quant
import membranenoise.util as mn_util
from membranenoise.core import CONSTANTS

LGR = logging.getLogger(__name__)

MODES = ("D", "v1", "v2")
UNIT_AREA = 1.0
UNIT_PERMITTIVITY = 1.0
LOSSLESS_TOL = 1e-12

DEFAULT_DRAWS = 100
DEFAULT_SEED = 20081


@dataclass(frozen=True)
class QuadratureField:
    """A travelling wave: cos and sin quadrature coefficients over MODES, times norm."""

    # scalars from numpy must defer to __rmul__
    __array_ufunc__ = None

    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray
    norm: float

    def __post_init__(self):
        for thename in ("cos_coeffs", "sin_coeffs"):
            thecoeffs = np.asarray(getattr(self, thename), dtype=float)
            if thecoeffs.shape != (len(MODES),):
                raise ValueError(f"{thename} must have exactly {len(MODES)} entries")
            object.__setattr__(self, thename, thecoeffs)

    def gram(self):
        """Matrix G with <E**2> = norm**2 / 2 * a^T G a, a = (1, E_v1, E_v2)."""
        return np.outer(self.cos_coeffs, self.cos_coeffs) + np.outer(
            self.sin_coeffs, self.sin_coeffs
        )

    def rotated(self):
        """The same wave delayed by a quarter period (pi/2 phase shift)."""
        return QuadratureField(self.sin_coeffs, -self.cos_coeffs, self.norm)

    def __add__(self, other):
        return QuadratureField(
            self.cos_coeffs + other.cos_coeffs, self.sin_coeffs + other.sin_coeffs, self.norm
        )

    def __rmul__(self, thescalar):
        return QuadratureField(thescalar * self.cos_coeffs, thescalar * self.sin_coeffs, self.norm)


@dataclass(frozen=True)
class ForceLinearForm:
    """Radiation pressure force F = dc + v1 * E_v1 + v2 * E_v2 (in N)."""

    dc: float
    v1: float
    v2: float


def fieldnorm(optics, area=UNIT_AREA, permittivity=UNIT_PERMITTIVITY):
    return np.sqrt(CONSTANTS.hbar * optics.omega0 / (area * CONSTANTS.c * permittivity))


def carrier_amplitude(P0, optics):
    """D with P0 = hbar omega0 D**2."""
    return np.sqrt(P0 / (CONSTANTS.hbar * optics.omega0))


def incident_fields(P0, optics, vacuumport="output"):
    r"""The two waves arriving at the membrane from the beam splitter.

    Parameters
    ----------
    P0 : float
        Carrier power in W.
    optics : OpticsParams
    vacuumport : {'output', 'input'}, optional
        Where the vacuum enters.  Output-port vacuum arrives anti-correlated in the two arms
        (the physical case); 'input' gives the positively correlated pattern used as a null test.

    Returns
    -------
    E_A, E_B : QuadratureField
    """
    if P0 < 0.0:
        raise mn_core.ParameterError([("P0", "power must be non-negative")])
    if vacuumport == "output":
        thesign = -1.0
    elif vacuumport == "input":
        thesign = 1.0
    else:
        raise ValueError(f"vacuumport must be 'output' or 'input', not {vacuumport}")
    thenorm = fieldnorm(optics)
    D = carrier_amplitude(P0, optics)
    invroot2 = 1.0 / np.sqrt(2.0)
    E_A = QuadratureField(
        cos_coeffs=np.array([D, invroot2, 0.0]),
        sin_coeffs=np.array([0.0, 0.0, invroot2]),
        norm=thenorm,
    )
    E_B = QuadratureField(
        cos_coeffs=np.array([D, thesign * invroot2, 0.0]),
        sin_coeffs=np.array([0.0, 0.0, thesign * invroot2]),
        norm=thenorm,
    )
    return E_A, E_B


def membrane_scatter(E_A, E_B, r, t):
    r"""Waves leaving a lossless symmetric membrane.

    Transmission carries no phase shift, reflection a pi/2 shift:
    E_C = t E_B + r rot(E_A), E_D = t E_A + r rot(E_B).

    Parameters
    ----------
    E_A, E_B : QuadratureField
    r, t : float
        Amplitude reflectance and transmittance, r**2 + t**2 = 1.

    Returns
    -------
    E_C, E_D : QuadratureField
    """
    if abs(r**2 + t**2 - 1.0) > LOSSLESS_TOL:
        raise mn_core.ParameterError([("r, t", "lossy membrane: r**2 + t**2 must equal 1")])
    E_C = t * E_B + r * E_A.rotated()
    E_D = t * E_A + r * E_B.rotated()
    return E_C, E_D


def energy_balance(E_A, E_B, E_C, E_D):
    """Relative mismatch between incoming and outgoing quadrature forms (0 when conserved)."""
    gram_in = E_A.gram() + E_B.gram()
    gram_out = E_C.gram() + E_D.gram()
    return np.max(np.abs(gram_out - gram_in)) / np.max(np.abs(gram_in))


def rp_force_coefficients(E_A, E_B, E_C, E_D, area=UNIT_AREA, permittivity=UNIT_PERMITTIVITY):
    r"""Linear form of the radiation pressure force over the vacuum quadratures.

    F = A eps0 [(<E_C**2> - <E_D**2>) - (<E_B**2> - <E_A**2>)], keeping the terms linear in the
    vacuum modes (the quadratic ones are second order and dropped).

    Returns
    -------
    coeffs : ForceLinearForm
    """
    themats = E_C.gram() - E_D.gram() - E_B.gram() + E_A.gram()
    # <E**2> = norm**2/2 * a^T G a; the cross term between D and E_k appears twice
    prefac = area * permittivity * E_A.norm**2
    return ForceLinearForm(
        dc=0.5 * prefac * themats[0, 0],
        v1=prefac * themats[0, 1],
        v2=prefac * themats[0, 2],
    )


def force_psd_from_coefficients(coeffs):
    """Single-sided force PSD in N**2/Hz for unit, uncorrelated vacuum spectra."""
    return coeffs.v1**2 + coeffs.v2**2


def oracle_force_psd(P0, R, optics, vacuumport="output"):
    """Full pipeline: incident fields -> membrane -> force PSD."""
    E_A, E_B = incident_fields(P0, optics, vacuumport=vacuumport)
    E_C, E_D = membrane_scatter(E_A, E_B, np.sqrt(R), np.sqrt(1.0 - R))
    return force_psd_from_coefficients(rp_force_coefficients(E_A, E_B, E_C, E_D))


def closedform_force_psd(P0, R, optics):
    thememb = mn_core.MembraneParams(R=R)
    theinputs = mn_quant.QuantumNoiseInputs(
        optics=mn_core.OpticsParams(wavelength=optics.wavelength, P_bs=P0, phi0=optics.phi0),
        membrane=thememb,
    )
    return mn_quant.rp_force_asd(theinputs) ** 2


def slope_oracle(inputs, step=None):
    r"""Signed central difference of output_power at x = 0, in W/m.

    Parameters
    ----------
    inputs : QuantumNoiseInputs
    step : float, optional
        Finite difference step in m.  Default is wavelength * 1e-6.
    """
    if step is None:
        step = inputs.optics.wavelength * 1e-6
    return (mn_quant.output_power(step, inputs) - mn_quant.output_power(-step, inputs)) / (
        2.0 * step
    )


# ---------------------------------------- Verification suite -------------------------------------
def _checkentry(name, maxerr, tolerance):
    return {
        "check": name,
        "max_error": float(maxerr),
        "tolerance": tolerance,
        "passed": bool(maxerr <= tolerance),
    }


def _randommembrane(rng):
    return mn_core.MembraneParams(
        R=rng.uniform(0.01, 0.99),
        f_mem=10.0 ** rng.uniform(3.0, 6.0),
        m_mem=10.0 ** rng.uniform(-13.0, -6.0),
        Q_mem=10.0 ** rng.uniform(1.0, 8.0),
        T_mem=rng.uniform(0.0, 300.0),
    )


def _randomrecycling(rng):
    return mn_core.RecyclingParams(
        r_SR=rng.uniform(0.0, 0.999),
        r_PR=rng.uniform(0.0, 0.99),
        L=rng.uniform(0.1, 5.0),
        L_SR=rng.uniform(0.0, 1.0),
    )


def run_verification(draws=DEFAULT_DRAWS, seed=DEFAULT_SEED, debug=False):
    r"""Compare the closed-form noise expressions against independent computations.

    Parameters
    ----------
    draws : int, optional
        Number of random parameter draws for the randomised checks.
    seed : int, optional
        Seed for numpy.random.default_rng.
    debug : bool, optional

    Returns
    -------
    report : list of dict
        One entry per check with keys check, max_error, tolerance, passed.
    """
    rng = np.random.default_rng(seed)
    optics = mn_core.OpticsParams()
    report = []

    # force PSD on the fixed reflectance/power grid
    maxerr = 0.0
    for R in np.linspace(0.0, 1.0, 11):
        for P0 in (1e-3, 1.0, 1e3):
            maxerr = max(
                maxerr,
                mn_util.relerr(
                    oracle_force_psd(P0, R, optics), closedform_force_psd(P0, R, optics)
                ),
            )
    report.append(_checkentry("force PSD vs closed form (grid)", maxerr, 1e-12))

    # force PSD and energy conservation on random draws
    maxerr = 0.0
    maxbalance = 0.0
    maxnull = 0.0
    for i in range(draws):
        R = rng.uniform(0.0, 1.0)
        P0 = 10.0 ** rng.uniform(-3.0, 3.0)
        maxerr = max(
            maxerr,
            mn_util.relerr(oracle_force_psd(P0, R, optics), closedform_force_psd(P0, R, optics)),
        )
        E_A, E_B = incident_fields(P0, optics)
        E_C, E_D = membrane_scatter(E_A, E_B, np.sqrt(R), np.sqrt(1.0 - R))
        maxbalance = max(maxbalance, energy_balance(E_A, E_B, E_C, E_D))
        maxnull = max(maxnull, np.sqrt(oracle_force_psd(P0, R, optics, vacuumport="input")))
    report.append(_checkentry("force PSD vs closed form (random)", maxerr, 1e-12))
    report.append(_checkentry("energy conservation at the membrane", maxbalance, 1e-14))
    report.append(_checkentry("input-port vacuum force (N/rtHz)", maxnull, 0.0))

    # readout slope
    maxerr = 0.0
    for i in range(draws):
        theinputs = mn_quant.QuantumNoiseInputs(
            optics=mn_core.OpticsParams(
                P_bs=10.0 ** rng.uniform(-3.0, 3.0), phi0=rng.uniform(0.1, np.pi - 0.1)
            ),
            membrane=mn_core.MembraneParams(R=rng.uniform(0.01, 1.0)),
        )
        maxerr = max(
            maxerr, mn_util.relerr(slope_oracle(theinputs), mn_quant.signal_slope(theinputs))
        )
    report.append(_checkentry("finite difference slope vs signal_slope", maxerr, 1e-6))

    # shot * rad = hbar |H|
    maxerr = 0.0
    for i in range(draws):
        themembrane = _randommembrane(rng)
        therecycling = _randomrecycling(rng)
        thefreqs = 10.0 ** rng.uniform(2.0, 7.0, size=10)
        for sr_enabled in (True, False):
            theinputs = mn_quant.QuantumNoiseInputs.from_params(
                mn_core.OpticsParams(P_bs=10.0 ** rng.uniform(-3.0, 3.0)),
                themembrane,
                therecycling,
                sr_enabled=sr_enabled,
            )
            theproduct = mn_quant.shot_asd(thefreqs, theinputs) * mn_quant.rad_asd(
                thefreqs, theinputs
            )
            expected = CONSTANTS.hbar * np.abs(mn_mech.susceptibility(thefreqs, themembrane))
            maxerr = max(maxerr, mn_util.relerr(theproduct, expected))
    report.append(_checkentry("shot x rad product invariant", maxerr, 1e-12))

    # minimum over power of the quantum total touches the SQL
    maxerr = 0.0
    for i in range(min(draws, 20)):
        themembrane = _randommembrane(rng)
        thefreq = 10.0 ** rng.uniform(2.0, 6.0)
        maxerr = max(maxerr, sql_touching_error(thefreq, optics, themembrane))
    report.append(_checkentry("minimum quantum noise vs SQL", maxerr, 1e-3))

    if debug:
        for theentry in report:
            LGR.debug(f"{theentry['check']}: {theentry['max_error']:.3e}")
    return report


def sql_touching_error(thefreq, optics, membrane):
    """Relative gap between min over power of the dark-fringe quantum noise and the SQL."""

    def quantumnoise(logpower):
        theinputs = mn_quant.QuantumNoiseInputs(
            optics=mn_core.OpticsParams(wavelength=optics.wavelength, P_bs=10.0**logpower),
            membrane=membrane,
        )
        return mn_quant.quantum_total_asd(thefreq, theinputs)

    # the optimum lies where rad = shot; bracket around it in decades
    optimum = np.log10(
        CONSTANTS.c
        * optics.wavelength
        / (16.0 * np.pi * membrane.R * np.abs(mn_mech.susceptibility(thefreq, membrane)))
    )
    theresult = optimize.minimize_scalar(
        quantumnoise,
        bracket=(optimum - 3.0, optimum + 0.5, optimum + 3.0),
        tol=1e-10,
    )
    return mn_util.relerr(theresult.fun, mn_quant.sql_asd(thefreq, membrane))
