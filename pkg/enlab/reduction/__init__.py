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
Self-organisation engine: measurement scales, reduction operators, the structure
energy ledger and the entropy-versus-weight laws.
"""


from __future__ import annotations

from .laws import energy_vs_w, energy_vs_w_derivative, entropy_of_w
from .ledger import EnergyLedger, structure_energy
from .operators import (
    ChainWeights,
    attach_weights,
    composite_reduce,
    demotion_path,
    param_reduce,
    relation_vector,
    select_principal,
    sp_reduce,
    sp_reduce_all,
    structural_prune,
    structural_weight,
)
from .scales import (
    DEFAULT_SCALE_ENERGIES,
    ScaleEnergyTable,
    ScaleLevel,
    Segmentation,
    compare,
    gradient_sign,
    segment_index,
)
from .structures import (
    ChainLink,
    CriticalPoint,
    OrderedStructure,
    Param,
    ReducedStructure,
    RelationLabel,
    SignificanceStats,
    StructElement,
)

__all__ = [
    "DEFAULT_SCALE_ENERGIES",
    "ChainLink",
    "ChainWeights",
    "CriticalPoint",
    "EnergyLedger",
    "OrderedStructure",
    "Param",
    "ReducedStructure",
    "RelationLabel",
    "ScaleEnergyTable",
    "ScaleLevel",
    "Segmentation",
    "SignificanceStats",
    "StructElement",
    "attach_weights",
    "compare",
    "composite_reduce",
    "demotion_path",
    "energy_vs_w",
    "energy_vs_w_derivative",
    "entropy_of_w",
    "gradient_sign",
    "param_reduce",
    "relation_vector",
    "segment_index",
    "select_principal",
    "sp_reduce",
    "sp_reduce_all",
    "structural_prune",
    "structural_weight",
    "structure_energy",
]
