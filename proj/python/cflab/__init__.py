# Copyright 2026 The cflab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Continued-fraction experiments on an exact C++ core.

Big integers come back as Python ints and rationals as fractions.Fraction.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Mapping

from . import _cflab
from ._cflab import (
    ConfigError,
    Error,
    InvalidArgument,
    StreamExhausted,
    UndecidableAtCap,
    derive_seed,
)

__version__ = _cflab.__version__

__all__ = [
    "ConfigError",
    "Error",
    "InvalidArgument",
    "StreamExhausted",
    "UndecidableAtCap",
    "canonical_config",
    "config_hash",
    "convergents",
    "derive_seed",
    "evaluate",
    "expand_rational",
    "renyi_cylinder_check",
    "run",
]


def _rational_text(x: Fraction | int | str) -> str:
    if isinstance(x, str):
        return x
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def expand_rational(x: Fraction | str) -> list[int]:
    """Canonical digits of x in (0, 1) (last digit >= 2)."""
    return [int(a) for a in _cflab.expand_rational(_rational_text(x))]


def convergents(digits: Iterable[int]) -> list[tuple[int, int]]:
    return [(int(p), int(q)) for p, q in _cflab.convergents([str(int(a)) for a in digits])]


def evaluate(digits: Iterable[int]) -> Fraction:
    return Fraction(_cflab.evaluate([str(int(a)) for a in digits]))


def _config_text(config: Mapping[str, Any] | str) -> str:
    return config if isinstance(config, str) else json.dumps(dict(config))


def run(config: Mapping[str, Any] | str) -> dict[str, Any]:
    """Runs one experiment.

    Returns the JSON report document plus a "tables" entry mapping each
    table name to its CSV text.
    """
    return json.loads(_cflab.run(_config_text(config)))


def canonical_config(config: Mapping[str, Any] | str) -> dict[str, Any]:
    return json.loads(_cflab.canonical_config(_config_text(config)))


def config_hash(config: Mapping[str, Any] | str) -> str:
    return _cflab.config_hash(_config_text(config))


def renyi_cylinder_check(
    max_prefix_len: int, max_digit: int, max_future_len: int = 0, include_pairs: bool = False
) -> dict[str, Any]:
    return json.loads(
        _cflab.renyi_cylinder_check(max_prefix_len, max_digit, max_future_len, include_pairs)
    )
