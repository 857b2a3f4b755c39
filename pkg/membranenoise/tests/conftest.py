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

import membranenoise.core as mn_core
import membranenoise.quantum as mn_quant


@pytest.fixture
def tableI():
    return mn_core.tableI_config()


@pytest.fixture
def tableI_inputs(tableI):
    """Quantum noise inputs of the design example, signal recycling on."""
    return mn_quant.QuantumNoiseInputs.from_params(
        tableI.optics, tableI.membrane, tableI.recycling, sr_enabled=True
    )


@pytest.fixture
def unrecycled_inputs(tableI):
    """The design example membrane at 1 W with no recycling at all."""
    return mn_quant.QuantumNoiseInputs(optics=tableI.optics, membrane=tableI.membrane)


@pytest.fixture
def kilowatt_nosr(tableI):
    """1 kW at the beam splitter without signal recycling."""
    return replace(
        tableI,
        optics=replace(tableI.optics, P_bs=1e3),
        recycling=replace(tableI.recycling, r_SR=None),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def randomdesign(rng):
    """One random but valid (optics, membrane, recycling) set."""
    optics = mn_core.OpticsParams(
        wavelength=10.0 ** rng.uniform(-7.0, -5.0), P_bs=10.0 ** rng.uniform(-3.0, 3.0)
    )
    membrane = mn_core.MembraneParams(
        R=rng.uniform(0.01, 0.99),
        f_mem=10.0 ** rng.uniform(3.0, 6.0),
        m_mem=10.0 ** rng.uniform(-13.0, -6.0),
        Q_mem=10.0 ** rng.uniform(1.0, 8.0),
        T_mem=rng.uniform(0.0, 300.0),
    )
    recycling = mn_core.RecyclingParams(
        r_SR=rng.uniform(0.0, 0.999),
        r_PR=rng.uniform(0.0, 0.99),
        L=rng.uniform(0.1, 5.0),
        L_SR=rng.uniform(0.0, 1.0),
    )
    return optics, membrane, recycling


@pytest.fixture
def random_designs(rng):
    """100 random designs, reproducible across runs."""
    return [randomdesign(rng) for i in range(100)]
