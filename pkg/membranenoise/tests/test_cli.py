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

import pandas as pd
import pytest

import membranenoise.budget as mn_budget
import membranenoise.core as mn_core
import membranenoise.io as mn_io
import membranenoise.util as mn_util
from membranenoise.workflows import msnoise


@pytest.fixture(autouse=True)
def resetlogging():
    yield
    for thelogger in (logging.getLogger("membranenoise"), mn_util.TimingLGR):
        for thehandler in list(thelogger.handlers):
            thelogger.removeHandler(thehandler)
            thehandler.close()
        thelogger.setLevel(logging.NOTSET)


@pytest.fixture
def tableIfile(tmp_path):
    thefile = tmp_path / "tableI.cfg"
    thefile.write_text(mn_io.presettext("tableI"))
    return str(thefile)


def test_preset_to_stdout(capsys):
    assert msnoise.run(["preset", "tableI"]) == 0
    assert capsys.readouterr().out == mn_io.presettext("tableI")


def test_budget_round_trip(tmp_path):
    clioutput = tmp_path / "cli.csv"
    assert msnoise.run(["preset", "tableI", "--out", str(tmp_path / "preset.cfg")]) == 0
    assert (
        msnoise.run(["budget", "--config", str(tmp_path / "preset.cfg"), "--out", str(clioutput)])
        == 0
    )
    libraryoutput = tmp_path / "library.csv"
    mn_io.writespectrumcsv(
        mn_budget.budget_from_config(mn_core.tableI_config()), str(libraryoutput)
    )
    assert clioutput.read_text() == libraryoutput.read_text()


def test_budget_json_without_sr(tableIfile, tmp_path):
    theoutput = tmp_path / "budget.json"
    assert (
        msnoise.run(
            [
                "budget",
                "--config",
                tableIfile,
                "--sr",
                "off",
                "--damping",
                "viscous",
                "--format",
                "json",
                "--out",
                str(theoutput),
            ]
        )
        == 0
    )
    thedict = json.loads(theoutput.read_text())
    assert "thermal_structural" not in thedict
    assert len(thedict["total"]) == 1000
    assert thedict["params"]["sr_enabled"] is False
    assert thedict["params"]["g_SR"] == 1.0
    assert thedict["params"]["damping_model"] == "viscous"


def test_invalid_config_value(tmp_path, capsys):
    thefile = tmp_path / "design.cfg"
    thefile.write_text("membrane.R = 1.5\n")
    assert msnoise.run(["budget", "--config", str(thefile)]) == 2
    assert "R out of [0,1]" in capsys.readouterr().err


def test_parse_errors_exit_with_2(tableIfile, tmp_path):
    assert msnoise.run(["transmogrify"]) == 2
    assert msnoise.run(["budget", "--config", tableIfile, "--colour", "blue"]) == 2
    assert msnoise.run(["budget"]) == 2
    assert msnoise.run(["budget", "--config", str(tmp_path / "missing.cfg")]) == 2
    assert msnoise.run(["budget", "--config", tableIfile, "--sr", "maybe"]) == 2
    thermalargs = ["solve-thermal", "--config", tableIfile, "--T", "300", "--Q", "1e6"]
    assert msnoise.run(thermalargs + ["--damping", "both"]) == 2


def test_version(capsys):
    assert msnoise.run(["--version"]) == 0
    assert capsys.readouterr().out.startswith("msnoise")


def test_verify(tmp_path):
    theoutput = tmp_path / "verify.csv"
    assert msnoise.run(["verify", "--draws", "5", "--out", str(theoutput)]) == 0
    df = pd.read_csv(theoutput)
    assert list(df.columns) == ["check", "max_error", "tolerance", "passed"]
    assert len(df) == 7
    assert df["passed"].all()


def test_verify_needs_draws(capsys):
    assert msnoise.run(["verify", "--draws", "0"]) == 2
    assert "at least one draw" in capsys.readouterr().err


def test_sweep(tableIfile, tmp_path):
    theoutput = tmp_path / "sweep.json"
    assert (
        msnoise.run(
            [
                "sweep",
                "--config",
                tableIfile,
                "--param",
                "recycling.r_SR",
                "--values",
                "0,0.9,0.998",
                "--f-eval",
                "1000",
                "--format",
                "json",
                "--out",
                str(theoutput),
            ]
        )
        == 0
    )
    therows = json.loads(theoutput.read_text())["rows"]
    assert [therow["g_SR"] for therow in therows] == pytest.approx([1.0, 19.0, 999.0])
    assert all(therow["param"] == "recycling.r_SR" for therow in therows)


def test_sweep_default_frequency_is_grid_start(tableIfile, tmp_path):
    theoutput = tmp_path / "sweep.csv"
    assert (
        msnoise.run(
            [
                "sweep",
                "--config",
                tableIfile,
                "--param",
                "power_at_bs",
                "--values",
                "1",
                "--out",
                str(theoutput),
            ]
        )
        == 0
    )
    df = pd.read_csv(theoutput)
    config = mn_core.tableI_config()
    expected = mn_budget.ratio_at(
        config.grid.f_min, "rad", "shot", config.optics, config.membrane, config.recycling
    )
    assert df["rad_over_shot"][0] == pytest.approx(expected, rel=1e-7)


def test_sweep_rejects_unknown_parameter(tableIfile):
    assert (
        msnoise.run(
            ["sweep", "--config", tableIfile, "--param", "membrane.mass", "--values", "1"]
        )
        == 2
    )


def test_solve_power(tableIfile, tmp_path):
    theoutput = tmp_path / "power.txt"
    assert (
        msnoise.run(
            ["solve-power", "--config", tableIfile, "--ratio", "2", "--out", str(theoutput)]
        )
        == 0
    )
    thesolution = dict(
        theline.split(":\t", 1) for theline in theoutput.read_text().splitlines() if theline
    )
    assert float(thesolution["power_at_bs"]) == pytest.approx(1.0, rel=0.02)
    assert float(thesolution["target"]) == 2.0


def test_solve_power_transparent_membrane(tmp_path, capsys):
    thefile = tmp_path / "design.cfg"
    thefile.write_text("membrane.R = 0\n")
    assert msnoise.run(["solve-power", "--config", str(thefile), "--ratio", "2"]) == 2
    assert "no solution" in capsys.readouterr().err


def test_solve_thermal(tableIfile, tmp_path):
    theoutput = tmp_path / "thermal.json"
    assert (
        msnoise.run(
            [
                "solve-thermal",
                "--config",
                tableIfile,
                "--T",
                "300",
                "--Q",
                "1e6",
                "--format",
                "json",
                "--out",
                str(theoutput),
            ]
        )
        == 0
    )
    thesolution = json.loads(theoutput.read_text())
    assert thesolution["power_at_bs"] == pytest.approx(3.0e3, rel=1e-9)
    assert thesolution["thermal_scale"] == pytest.approx(3000.0**0.5, rel=1e-12)


def test_solve_thermal_from_cold_reference(tableIfile, tmp_path):
    thefile = tmp_path / "cold.cfg"
    thefile.write_text(
        open(tableIfile, encoding="utf-8").read().replace("membrane.T = 1.0", "membrane.T = 0.0")
    )
    theoutput = tmp_path / "thermal.json"
    assert (
        msnoise.run(
            [
                "solve-thermal",
                "--config",
                str(thefile),
                "--T",
                "300",
                "--Q",
                "1e6",
                "--margin",
                "3",
                "--format",
                "json",
                "--out",
                str(theoutput),
            ]
        )
        == 0
    )
    thesolution = json.loads(theoutput.read_text())
    assert thesolution["target"] == 3.0
    assert thesolution["power_at_bs"] > 0.0
    assert "thermal_scale" not in thesolution


def test_config_not_utf8(tmp_path, capsys):
    thefile = tmp_path / "bad.cfg"
    thefile.write_bytes(b"\xff\xfe membrane.R = 0.35\n")
    assert msnoise.run(["budget", "--config", str(thefile)]) == 2
    assert "not valid UTF-8" in capsys.readouterr().err


def test_logfile_handlers_are_replaced(tableIfile, tmp_path):
    for thename in ("first.log", "second.log"):
        assert (
            msnoise.run(
                [
                    "budget",
                    "--config",
                    tableIfile,
                    "--out",
                    str(tmp_path / "noise.csv"),
                    "--logfile",
                    str(tmp_path / thename),
                ]
            )
            == 0
        )
    thehandlers = [
        thehandler
        for thehandler in logging.getLogger("membranenoise").handlers
        if isinstance(thehandler, logging.FileHandler)
    ]
    assert [thehandler.baseFilename for thehandler in thehandlers] == [
        str(tmp_path / "second.log")
    ]
