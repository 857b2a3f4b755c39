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

import membranenoise.mechanics as mn_mech
from membranenoise.core import DomainError


def test_susceptibility_static_and_resonant(tableI):
    mem = tableI.membrane
    H0 = np.abs(mn_mech.susceptibility(0.0, mem))
    assert H0 == pytest.approx(1.0 / (mem.m_mem * (2.0 * np.pi * mem.f_mem) ** 2), rel=1e-14)
    assert H0 == pytest.approx(3.602e-2, rel=1e-3)
    Hres = np.abs(mn_mech.susceptibility(mem.f_mem, mem))
    assert Hres == pytest.approx(3.602e5, rel=1e-3)
    assert Hres / H0 == pytest.approx(mem.Q_mem, rel=1e-12)


def test_susceptibility_free_mass_limit(tableI):
    mem = tableI.membrane
    theratio = np.abs(mn_mech.susceptibility(10.0 * mem.f_mem, mem)) / np.abs(
        mn_mech.susceptibility(0.0, mem)
    )
    assert theratio == pytest.approx(0.01, rel=0.02)


def test_susceptibility_peaks_at_resonance(tableI):
    for Q in (10.0, 1e3, 1e7):
        mem = replace(tableI.membrane, Q_mem=Q)
        Hres = np.abs(mn_mech.susceptibility(mem.f_mem, mem))
        for f in (0.0, 2.0 * mem.f_mem):
            assert Hres >= np.abs(mn_mech.susceptibility(f, mem))


def test_susceptibility_vectorised(tableI):
    thefreqs = np.array([0.0, 1e3, 75e3, 1e6])
    H = mn_mech.susceptibility(thefreqs, tableI.membrane)
    assert H.shape == (4,)
    assert np.all(np.isfinite(H))
    assert np.all(np.abs(H) > 0.0)


def test_negative_frequency_rejected(tableI):
    with pytest.raises(DomainError):
        mn_mech.susceptibility(-1.0, tableI.membrane)


def test_thermal_force_viscous(tableI):
    for f in (0.0, 1e3, 75e3, 1e6):
        assert mn_mech.thermal_force_asd(f, tableI.membrane) == pytest.approx(1.80e-17, rel=5e-3)


def test_thermal_displacement_floor(tableI):
    assert mn_mech.thermal_displacement_asd(1.0, tableI.membrane) == pytest.approx(
        6.50e-19, rel=5e-3
    )


def test_thermal_models_equal_at_resonance(tableI):
    mem = tableI.membrane
    viscous = mn_mech.thermal_displacement_asd(mem.f_mem, mem, model="viscous")
    structural = mn_mech.thermal_displacement_asd(mem.f_mem, mem, model="structural")
    assert structural == pytest.approx(viscous, rel=1e-12)
    assert mn_mech.thermal_force_asd(mem.f_mem, mem, model="structural") == pytest.approx(
        mn_mech.thermal_force_asd(mem.f_mem, mem, model="viscous"), rel=1e-12
    )


def test_structural_falls_as_inverse_root_f(tableI):
    mem = tableI.membrane
    f = mem.f_mem / 4.0
    theratio = mn_mech.thermal_displacement_asd(
        f, mem, model="structural"
    ) / mn_mech.thermal_displacement_asd(f, mem, model="viscous")
    assert theratio == pytest.approx(2.0, rel=1e-12)
    f = 100.0
    theratio = mn_mech.thermal_displacement_asd(
        4.0 * f, mem, model="structural"
    ) / mn_mech.thermal_displacement_asd(f, mem, model="structural")
    assert theratio == pytest.approx(0.5, rel=1e-4)


def test_viscous_shape_follows_susceptibility(tableI):
    mem = tableI.membrane
    thefreqs = np.array([10.0, 1e3, 5e4, 2e5])
    thermal = mn_mech.thermal_displacement_asd(thefreqs, mem)
    H = np.abs(mn_mech.susceptibility(thefreqs, mem))
    assert_allclose(thermal / thermal[0], H / H[0], rtol=1e-12)


def test_zero_temperature(tableI):
    mem = replace(tableI.membrane, T_mem=0.0)
    for model in mn_mech.DAMPINGMODELS:
        assert mn_mech.thermal_force_asd(1e3, mem, model=model) == 0.0
        assert mn_mech.thermal_displacement_asd(1e3, mem, model=model) == 0.0


def test_temperature_over_q_scaling(tableI):
    mem = tableI.membrane
    doubled = replace(mem, T_mem=2.0 * mem.T_mem, Q_mem=2.0 * mem.Q_mem)
    thefreqs = np.array([1e3, 7e4, 3e5])
    for model in mn_mech.DAMPINGMODELS:
        # Q also enters |H|; away from resonance that is far below the tolerance
        assert_allclose(
            mn_mech.thermal_force_asd(thefreqs, doubled, model=model),
            mn_mech.thermal_force_asd(thefreqs, mem, model=model),
            rtol=1e-12,
        )
        assert_allclose(
            mn_mech.thermal_displacement_asd(thefreqs, doubled, model=model),
            mn_mech.thermal_displacement_asd(thefreqs, mem, model=model),
            rtol=1e-6,
        )


def test_structural_diverges_at_dc(tableI):
    with pytest.raises(DomainError):
        mn_mech.thermal_force_asd(0.0, tableI.membrane, model="structural")
    with pytest.raises(DomainError):
        mn_mech.thermal_displacement_asd(
            np.array([0.0, 1e3]), tableI.membrane, model="structural"
        )


def test_unknown_damping_model(tableI):
    with pytest.raises(ValueError, match="unknown damping model"):
        mn_mech.thermal_force_asd(1e3, tableI.membrane, model="coulomb")


def test_room_temperature_scale_factor():
    thescale = mn_mech.thermal_scale_factor(300.0, 1e6, 1.0, 1e7)
    assert thescale == pytest.approx(np.sqrt(3000.0), rel=1e-12)
    assert thescale == pytest.approx(54.8, abs=0.05)


def test_scale_factor_from_zero_temperature_reference():
    assert mn_mech.thermal_scale_factor(300.0, 1e6, 0.0, 1e7) == np.inf
    assert np.isnan(mn_mech.thermal_scale_factor(0.0, 1e6, 0.0, 1e7))
