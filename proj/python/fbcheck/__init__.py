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

"""Function block simulation and bounded verification."""

import json
import os

from ._core import (
    CardinalityRefused,
    ConfigError,
    DomainError,
    held_for_i,
    timer_i,
    ton,
)
from . import _core

__all__ = [
    "CardinalityRefused",
    "ConfigError",
    "DomainError",
    "held_for_i",
    "netlist",
    "simulate",
    "timer_i",
    "ton",
    "verify",
]


def simulate(scenario, base_dir=None):
    """Run a scenario given as a dict, JSON text or a file path.

    Returns a dict with per-lane values, the sample ticks, the CSV trace and
    the ASCII diagram (plus the replay outcome when the scenario has an
    ``expect`` block).
    """
    if isinstance(scenario, dict):
        text = json.dumps(scenario)
    elif os.path.exists(str(scenario)):
        with open(scenario, encoding="utf-8") as f:
            text = f.read()
        base_dir = base_dir or os.path.dirname(os.path.abspath(scenario))
    else:
        text = str(scenario)
    return json.loads(_core._simulate_json(text, base_dir or "."))


def verify(subsystem, variant, space=None, workers=0):
    """Check a case-study subsystem; ``space`` is an optional dict."""
    text = None if space is None else json.dumps(space)
    return json.loads(_core._verify_json(subsystem, variant, text, workers))


def netlist(subsystem, variant="original"):
    return json.loads(_core._netlist_json(subsystem, variant))
