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
Structure energy: the Lyapunov measure the reduction operators descend.
"""


from __future__ import annotations

from collections import Counter
from typing import Dict, Union

from pydantic import root_validator

from ..exceptions import EnlabValidationError
from ..types import EnlabModel
from .scales import DEFAULT_SCALE_ENERGIES, ScaleEnergyTable, ScaleLevel
from .structures import OrderedStructure, ReducedStructure

LEDGER_TOLERANCE = 1e-12

Structure = Union[OrderedStructure, ReducedStructure]


class EnergyLedger(EnlabModel):
    """
    Energy of a structure: its units (element parameters) plus its connections
    (relations between consecutive elements), with the number of parameters and
    relations held on each measurement scale.
    """

    unit_energy: float
    connection_energy: float
    total: float
    units_by_scale: Dict[str, int] = {}
    links_by_scale: Dict[str, int] = {}

    @root_validator(skip_on_failure=True)
    def validate_total(cls, values: Dict[str, float]) -> Dict[str, float]:
        if abs(values["unit_energy"] + values["connection_energy"] - values["total"]) > (
            LEDGER_TOLERANCE
        ):
            raise EnlabValidationError("Ledger total must equal unit plus connection energy")
        return values


def structure_energy(
    s: Structure,
    table: ScaleEnergyTable = DEFAULT_SCALE_ENERGIES,
) -> EnergyLedger:
    """
    Ledger of a structure's energy.

    For an ordered structure every parameter of every element is a unit, and each
    parameter implicitly relates every pair of consecutive elements, on the
    interval scale for quantitative parameters. A reduced structure counts its
    critical points and explicit links.

    Args:
        s (Structure): Ordered or reduced structure.
        table (ScaleEnergyTable, optional): Energy per measurement scale.

    Returns:
        Energy ledger
    """

    units: Counter = Counter()
    links: Counter = Counter()
    if isinstance(s, ReducedStructure):
        for node in s.nodes:
            units.update(param.scale for param in node.params.values())
        links.update(link.scale for link in s.links)
    else:
        for element in s.elements:
            units.update(param.scale for param in element.params.values())
        for element in s.elements[1:]:
            links.update(param.scale.link_scale() for param in element.params.values())

    unit_energy = _ledger_sum(units, table)
    connection_energy = _ledger_sum(links, table)
    return EnergyLedger(
        unit_energy=unit_energy,
        connection_energy=connection_energy,
        total=unit_energy + connection_energy,
        units_by_scale={level.value: count for level, count in units.items()},
        links_by_scale={level.value: count for level, count in links.items()},
    )


def _ledger_sum(counts: Counter, table: ScaleEnergyTable) -> float:
    return sum(
        (table.energy(level) * counts[level] for level in ScaleLevel if counts[level]),
        0.0,
    )
