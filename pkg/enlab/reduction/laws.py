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
Entropy and energy of a structure as functions of its weight coefficient `w`.

Restricting a structure to its significant components shrinks the number of
accessible microstates to `Omega(w) = Omega_0 w^gamma_exp`. Entropy therefore grows
with `w`, and the free energy `E = E_0 - T S` falls with it.
"""


from __future__ import annotations

import math

from ..entropy import NATURAL_UNITS, PhysicalConstants
from ..exceptions import EnlabDomainError
from .structures import SignificanceStats


def _w(stats: SignificanceStats) -> float:
    if stats.n_true == 0:
        raise EnlabDomainError("The entropy of a structure with w = 0 diverges")
    return float(stats.w)


def _check_omega0(omega0: int) -> None:
    if omega0 < 1:
        raise EnlabDomainError(f"omega0 must be at least 1 (got {omega0!r})")


def entropy_of_w(
    stats: SignificanceStats,
    omega0: int,
    consts: PhysicalConstants = NATURAL_UNITS,
) -> float:
    """
    Entropy `k_B ln Omega_0 + k_B gamma_exp ln w`.

    Raises:
        EnlabDomainError: If `w = 0` or `omega0 < 1`.
    """

    _check_omega0(omega0)
    return consts.k_b * (math.log(omega0) + stats.gamma_exp * math.log(_w(stats)))


def energy_vs_w(
    stats: SignificanceStats,
    e0: float,
    temperature: float,
    omega0: int,
    consts: PhysicalConstants = NATURAL_UNITS,
) -> float:
    """
    Total energy `E_0 - T S(w)`.
    """

    return e0 - temperature * entropy_of_w(stats, omega0, consts)


def energy_vs_w_derivative(
    stats: SignificanceStats,
    temperature: float,
    consts: PhysicalConstants = NATURAL_UNITS,
) -> float:
    """
    Slope `dE/dw = -k_B T gamma_exp / w`, negative for every `w > 0`.
    """

    return -consts.k_b * temperature * stats.gamma_exp / _w(stats)
