# Copyright (C) 2026 Enlab Developers
#
# Enlab is free software: you can redistribute it and/or modify it under the terms of the
# GNU General Public License as published by the Free Software Foundation,
# either version 3 of the License, or (at your option) any later version.
#
# Enlab is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY;
# without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.
# See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with Enlab.
# If not, see <https://www.gnu.org/licenses/>.


"""
Enlab utility functions.
"""


from __future__ import annotations

import math
import zlib

from fractions import Fraction
from typing import Iterable, Union

import numpy as np

Number = Union[int, float, Fraction]


def rng_stream(seed: int, name: str) -> np.random.Generator:
    """
    Create the named random sub-stream of a run seed.

    Every component draws from its own stream, so adding or removing a component
    does not shift the draws any other component sees.

    Args:
        seed (int): Per-run seed.
        name (str): Component name (e.g. `ising`, `gen-dataset`).

    Returns:
        Independent, deterministic numpy random generator
    """

    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(name.encode("utf-8"))]))


def format_number(value: Number) -> str:
    """
    Render a number for trace output in a stable, lossless textual form.

    Fractions are written as `numerator/denominator`, integers as-is,
    and floats using their shortest round-trip representation.

    Args:
        value (Number): Value to render.

    Returns:
        Text form of the value
    """

    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def format_vector(values: Iterable[Number]) -> str:
    """
    Render a vector of numbers as space-separated text.

    Args:
        values (Iterable[Number]): Values to render.

    Returns:
        Space-separated text form
    """

    return " ".join(format_number(v) for v in values)
