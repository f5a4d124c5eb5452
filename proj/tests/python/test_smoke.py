# Copyright 2026 The fbcheck Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os

import pytest

import fbcheck

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))


def test_timer_operators():
    p = [False, True, True, True]
    assert fbcheck.timer_i(p, 100, delta=10, samples=[0, 2]) == [0, 0, 0, 0]
    assert fbcheck.timer_i([True] * 4, 100, delta=10) == [0, 10, 20, 30]
    assert fbcheck.held_for_i([True] * 4, 20, delta=10) == [False, False, True, True]


def test_ton_every_tick():
    q, et = fbcheck.ton([True] * 6, 30, delta=10)
    assert q == [False, False, False, True, True, True]
    assert et == [0, 10, 20, 30, 30, 30]


def test_waveform_scenario():
    run = fbcheck.simulate(os.path.join(ROOT, "scenarios", "ton_waveform.json"))
    q = run["lanes"]["Q"]
    assert [t for t, v in enumerate(q) if v] == [6, 7, 8, 21, 22, 23]
    with open(os.path.join(ROOT, "tests", "golden", "ton_waveform.txt"), encoding="utf-8") as f:
        assert run["diagram"] == f.read()
    assert run["csv"].startswith("tick,IN:bool,Q:bool,ET:duration\n")


def test_verify_sealed_in():
    small = {
        "discipline": "sample-aligned",
        "delta": 10,
        "tmin": 10,
        "tmax": 20,
        "schedules": [{"gaps": [1, 2], "tail": 1}],
    }
    bad = fbcheck.verify("trip-sealed-in", "original", small, workers=1)
    assert bad["verdict"] == "fail"
    correctness = [c for c in bad["checks"] if c["check"] == "correctness"][0]
    assert correctness["counterexample"]["tick"] == 0
    assert correctness["counterexample"]["category"] == "init"
    good = fbcheck.verify("trip-sealed-in", "revised", small)
    assert good["verdict"] == "pass"
    assert all(c["cases_checked"] == good["cases"] for c in good["checks"])


def test_errors():
    with pytest.raises(fbcheck.ConfigError):
        fbcheck.simulate("{\"domain\": 1}")
    huge = {
        "discipline": "per-tick",
        "delta": 10,
        "tmin": 20,
        "tmax": 20,
        "schedules": [{"period": 2, "horizon": 30}],
    }
    with pytest.raises(fbcheck.CardinalityRefused):
        fbcheck.verify("pushbutton", "revised", huge)


def test_netlist_documents():
    doc = fbcheck.netlist("trip-sealed-in", "revised")
    with open(os.path.join(ROOT, "netlists", "trip_sealed_in_revised.json"), encoding="utf-8") as f:
        assert doc == json.load(f)
