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
Internal world model: concept graphs trained from reduced structures, interpretation
of inputs against them, readouts and winner-take-all competition.
"""


from __future__ import annotations

from .graph import (
    ConceptGraph,
    ConceptLink,
    ConceptNode,
    Readout,
    ReadoutKind,
    readout,
    topologically_stable,
    train_concept,
)
from .interpret import (
    Inference,
    InterpretationResult,
    Verdict,
    diversity,
    infer,
    interpret,
    response,
    wta,
)
from .perception import DetectorChannel, DetectorConfig, perceive
from .store import STORE_FORMAT_VERSION, ConceptStore

__all__ = [
    "STORE_FORMAT_VERSION",
    "ConceptGraph",
    "ConceptLink",
    "ConceptNode",
    "ConceptStore",
    "DetectorChannel",
    "DetectorConfig",
    "Inference",
    "InterpretationResult",
    "Readout",
    "ReadoutKind",
    "Verdict",
    "diversity",
    "infer",
    "interpret",
    "perceive",
    "readout",
    "response",
    "topologically_stable",
    "train_concept",
    "wta",
]
