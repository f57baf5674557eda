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
Random sub-streams and number formatting.
"""


from __future__ import annotations

from fractions import Fraction

import numpy as np

from enlab.util import format_number, format_vector, rng_stream


def test_streams_are_reproducible():
    a = rng_stream(7, "ising").random(5)
    b = rng_stream(7, "ising").random(5)
    np.testing.assert_array_equal(a, b)


def test_streams_are_independent_by_name_and_seed():
    base = rng_stream(7, "ising").random(5)
    assert not np.array_equal(base, rng_stream(7, "hopfield").random(5))
    assert not np.array_equal(base, rng_stream(8, "ising").random(5))


def test_format_number():
    assert format_number(Fraction(3, 4)) == "3/4"
    assert format_number(3) == "3"
    assert format_number(np.int64(3)) == "3"
    assert format_number(0.1) == "0.1"
    assert format_number(True) == "1"
    assert format_number(float("-inf")) == "-inf"
    assert format_number(float("nan")) == "nan"


def test_format_vector():
    assert format_vector([1, 0.5, Fraction(1, 3)]) == "1 0.5 1/3"
    assert format_vector([]) == ""
