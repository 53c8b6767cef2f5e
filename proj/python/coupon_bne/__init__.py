# Copyright 2026 The Coupon BNE Authors
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
"""Equilibrium solvers for coupon signaling games."""

import json as _json

from . import _core
from ._core import (
    Error,
    classify_optout,
    dp_epsilon,
    expected_payment,
    tally_cases,
    two_player_z_star,
    x_game,
)

__all__ = [
    "Error",
    "classify_optout",
    "dp_epsilon",
    "enumerate_equilibria",
    "expected_payment",
    "solve",
    "tally_cases",
    "two_player_z_star",
    "verify",
    "x_game",
]


def _dump(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def solve(config):
    """Solve a game config (dict or JSON string); returns the report dict."""
    return _json.loads(_core.solve_json(_dump(config)))


def verify(config, profile, grid_step=1e-3, tol=1e-4):
    """Best-response gaps of `profile` (a profile or a solve report)."""
    return _json.loads(
        _core.verify_json(_dump(config), _dump(profile), grid_step, tol))


def enumerate_equilibria(config, grid_step, tol):
    """Connected components of approximate equilibria on a grid."""
    return _json.loads(_core.enumerate_json(_dump(config), grid_step, tol))
