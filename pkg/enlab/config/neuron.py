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
Threshold neuron command configuration.
"""


from __future__ import annotations

from typing import List

from pydantic import PositiveFloat, conint, validator

from ..exceptions import EnlabValidationError
from ..mcp import MAX_ENUMERATION_INPUTS, McpNeuron
from .types import EnlabConfigBase


class McpCensusConfig(EnlabConfigBase):
    """
    Microstate census, entropy and Gibbs decomposition of McCulloch-Pitts neurons.

    ```json5
    {
      neurons: [
        {weights: [1, 1], threshold: 0},
        {weights: [0.5, -0.5, 0.25], threshold: 0.1},
      ],
      random_neurons: 10,
      random_inputs: 8,
    }
    ```

    Explicit neurons are reported first, then the seeded random ones.
    """

    neurons: List[McpNeuron] = []
    """
    Neurons to analyse.
    """

    random_neurons: conint(ge=0) = 0  # type: ignore[valid-type]
    """
    Number of additional neurons with weights drawn uniformly from `[-1, 1]`.
    """

    random_inputs: conint(ge=1, le=MAX_ENUMERATION_INPUTS) = 4  # type: ignore[valid-type]
    """
    Number of inputs of the random neurons.
    """

    random_threshold: float = 0.0
    """
    Threshold of the random neurons.
    """

    temperature: PositiveFloat = 1.0
    """
    Temperature of the Gibbs decomposition.
    """

    si_units: bool = False
    """
    Use the SI Boltzmann constant instead of natural units (`k_B = 1`).
    """


class EntropySweepConfig(EnlabConfigBase):
    """
    Sweep of all neurons whose weights lie on a grid, reporting activation probability
    and entropy, with the maximum-entropy rows flagged.

    ```json5
    {
      grid: [-1, -0.5, 0, 0.5, 1],
      n_inputs: 2,
      threshold: 0,
    }
    ```
    """

    grid: List[float] = [-1.0, -0.5, 0.0, 0.5, 1.0]
    """
    Values every weight is swept over, each within `[-1, 1]`.
    """

    n_inputs: conint(ge=1, le=MAX_ENUMERATION_INPUTS) = 2  # type: ignore[valid-type]
    threshold: float = 0.0

    @validator("grid")
    def validate_grid(cls, value: List[float]) -> List[float]:
        if not value:
            raise EnlabValidationError("The weight grid must not be empty")
        if any(not -1 <= w <= 1 for w in value):
            raise EnlabValidationError("Grid weights must lie within [-1, 1]")
        return value
