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
from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose

import membranenoise.core as mn_core
import membranenoise.oracle as mn_oracle
import membranenoise.quantum as mn_quant
import membranenoise.util as mn_util
from membranenoise.core import CONSTANTS, ParameterError

OPTICS = mn_core.OpticsParams()


def _pipeline(P0, R, vacuumport="output"):
    E_A, E_B = mn_oracle.incident_fields(P0, OPTICS, vacuumport=vacuumport)
    E_C, E_D = mn_oracle.membrane_scatter(E_A, E_B, np.sqrt(R), np.sqrt(1.0 - R))
    return E_A, E_B, E_C, E_D


def _forceamplitude(P0):
    """(2/c) sqrt(2 hbar omega0 P0)"""
    return 2.0 * np.sqrt(2.0 * CONSTANTS.hbar * OPTICS.omega0 * P0) / CONSTANTS.c


def test_quadrature_field_shape():
    with pytest.raises(ValueError):
        mn_oracle.QuadratureField(np.zeros(2), np.zeros(3), 1.0)
    thefield = mn_oracle.QuadratureField([1.0, 2.0, 3.0], [0.0, 1.0, 0.0], 1.0)
    assert np.trace(thefield.gram()) == pytest.approx(15.0)
    assert_allclose(thefield.rotated().cos_coeffs, [0.0, 1.0, 0.0])
    assert_allclose(thefield.rotated().sin_coeffs, [-1.0, -2.0, -3.0])


def test_incident_fields_dark():
    E_A, E_B = mn_oracle.incident_fields(0.0, OPTICS)
    assert E_A.cos_coeffs[0] == 0.0
    assert E_B.cos_coeffs[0] == 0.0
    assert_allclose(np.abs(E_A.cos_coeffs[1:]), [1.0 / np.sqrt(2.0), 0.0])
    assert_allclose(np.abs(E_A.sin_coeffs[1:]), [0.0, 1.0 / np.sqrt(2.0)])


def test_incident_fields_anticorrelated_vacuum():
    E_A, E_B = mn_oracle.incident_fields(1.0, OPTICS)
    assert E_A.cos_coeffs[1] == -E_B.cos_coeffs[1]
    assert E_A.sin_coeffs[2] == -E_B.sin_coeffs[2]


def test_incident_carrier_power():
    P0 = 2.5
    E_A, E_B = mn_oracle.incident_fields(P0, OPTICS)
    D = mn_oracle.carrier_amplitude(P0, OPTICS)
    assert CONSTANTS.hbar * OPTICS.omega0 * D**2 == pytest.approx(P0, rel=1e-14)
    thecarrier = E_A.cos_coeffs[0] ** 2 + E_B.cos_coeffs[0] ** 2
    assert thecarrier * E_A.norm**2 == pytest.approx(
        2.0 * P0 * mn_oracle.fieldnorm(OPTICS) ** 2 / (CONSTANTS.hbar * OPTICS.omega0), rel=1e-14
    )


def test_perfect_mirror_and_transparent_membrane():
    E_A, E_B = mn_oracle.incident_fields(1.0, OPTICS)
    E_C, E_D = mn_oracle.membrane_scatter(E_A, E_B, 1.0, 0.0)
    assert_allclose(E_C.cos_coeffs, E_A.rotated().cos_coeffs)
    assert_allclose(E_D.sin_coeffs, E_B.rotated().sin_coeffs)
    E_C, E_D = mn_oracle.membrane_scatter(E_A, E_B, 0.0, 1.0)
    assert_allclose(E_C.cos_coeffs, E_B.cos_coeffs)
    assert_allclose(E_D.sin_coeffs, E_A.sin_coeffs)


def test_lossy_membrane_rejected():
    E_A, E_B = mn_oracle.incident_fields(1.0, OPTICS)
    with pytest.raises(ParameterError, match="lossy"):
        mn_oracle.membrane_scatter(E_A, E_B, 0.5, 0.5)


def test_energy_conservation(rng):
    for i in range(1000):
        R = rng.uniform(0.0, 1.0)
        P0 = 10.0 ** rng.uniform(-3.0, 3.0)
        assert mn_oracle.energy_balance(*_pipeline(P0, R)) <= 1e-14


def test_dc_force_cancels():
    for R in (0.0, 0.35, 1.0):
        coeffs = mn_oracle.rp_force_coefficients(*_pipeline(1.0, R))
        assert coeffs.dc == 0.0


def test_force_coefficients_limits():
    coeffs = mn_oracle.rp_force_coefficients(*_pipeline(1.0, 0.0))
    assert coeffs.v1 == 0.0
    assert coeffs.v2 == 0.0
    coeffs = mn_oracle.rp_force_coefficients(*_pipeline(1.0, 1.0))
    assert coeffs.v2 == 0.0
    assert abs(coeffs.v1) == pytest.approx(_forceamplitude(1.0), rel=1e-12)


def test_force_coefficients_match_closed_form():
    R = 0.35
    coeffs = mn_oracle.rp_force_coefficients(*_pipeline(1.0, R))
    r, t = np.sqrt(R), np.sqrt(1.0 - R)
    assert abs(coeffs.v1) == pytest.approx(_forceamplitude(1.0) * r**2, rel=1e-12)
    assert abs(coeffs.v2) == pytest.approx(_forceamplitude(1.0) * r * t, rel=1e-12)


def test_force_psd_grid():
    maxerr = 0.0
    for R in np.linspace(0.0, 1.0, 11):
        for P0 in (1e-3, 1.0, 1e3):
            maxerr = max(
                maxerr,
                mn_util.relerr(
                    mn_oracle.oracle_force_psd(P0, R, OPTICS),
                    mn_oracle.closedform_force_psd(P0, R, OPTICS),
                ),
            )
    assert maxerr <= 1e-12


def test_force_psd_random(rng):
    for i in range(100):
        R = rng.uniform(0.0, 1.0)
        P0 = 10.0 ** rng.uniform(-3.0, 3.0)
        assert mn_oracle.oracle_force_psd(P0, R, OPTICS) == pytest.approx(
            mn_oracle.closedform_force_psd(P0, R, OPTICS), rel=1e-12
        )


def test_force_psd_depends_on_reflectance_only():
    assert mn_oracle.oracle_force_psd(1.0, 0.35, OPTICS) == pytest.approx(
        0.5 * mn_oracle.oracle_force_psd(1.0, 0.70, OPTICS), rel=1e-12
    )
    assert mn_oracle.oracle_force_psd(0.0, 0.35, OPTICS) == 0.0


def test_input_port_vacuum_exerts_no_force():
    for R in (0.1, 0.35, 0.9):
        coeffs = mn_oracle.rp_force_coefficients(*_pipeline(10.0, R, vacuumport="input"))
        assert coeffs.v1 == 0.0
        assert coeffs.v2 == 0.0


def test_slope_oracle(unrecycled_inputs):
    halffringe = replace(
        unrecycled_inputs, optics=replace(unrecycled_inputs.optics, phi0=np.pi / 2)
    )
    assert mn_oracle.slope_oracle(halffringe) == pytest.approx(
        mn_quant.signal_slope(halffringe), rel=1e-6
    )
    assert mn_oracle.slope_oracle(unrecycled_inputs) == pytest.approx(0.0, abs=1e-6)
    for phi0 in (0.3, 1.2):
        plus = replace(unrecycled_inputs, optics=replace(unrecycled_inputs.optics, phi0=phi0))
        minus = replace(unrecycled_inputs, optics=replace(unrecycled_inputs.optics, phi0=-phi0))
        assert mn_oracle.slope_oracle(plus) == pytest.approx(
            -mn_oracle.slope_oracle(minus), rel=1e-9
        )


def test_sql_touching(tableI):
    for f in (1e3, 1e4, 75e3, 3e5):
        assert mn_oracle.sql_touching_error(f, tableI.optics, tableI.membrane) <= 1e-3


def test_run_verification_passes():
    thereport = mn_oracle.run_verification(draws=10, seed=1)
    assert len(thereport) == 7
    for theentry in thereport:
        assert theentry["passed"], theentry["check"]
    assert {theentry["check"] for theentry in thereport} >= {
        "force PSD vs closed form (grid)",
        "energy conservation at the membrane",
        "shot x rad product invariant",
    }
