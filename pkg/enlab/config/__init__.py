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
Command run configuration.
"""


from __future__ import annotations

from .dynamics import HopfieldConfig, IsingConfig
from .neuron import EntropySweepConfig, McpCensusConfig
from .structures import (
    ConceptDiversityConfig,
    ConceptInferConfig,
    ConceptTrainConfig,
    GenerateDatasetConfig,
    ReduceConfig,
)
from .types import EnlabConfigBase, load_config

__all__ = [
    "ConceptDiversityConfig",
    "ConceptInferConfig",
    "ConceptTrainConfig",
    "EnlabConfigBase",
    "EntropySweepConfig",
    "GenerateDatasetConfig",
    "HopfieldConfig",
    "IsingConfig",
    "McpCensusConfig",
    "ReduceConfig",
    "load_config",
]
