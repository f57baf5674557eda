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
Hopfield and Ising command configuration.
"""


from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import PositiveFloat, conint, root_validator, validator

from ..exceptions import EnlabValidationError
from ..hopfield_ising import UpdateSchedule
from ..types import Spin
from .types import EnlabConfigBase


class HopfieldConfig(EnlabConfigBase):
    """
    Recall of stored patterns from corrupted copies.

    ```json5
    {
      n: 25,
      random_patterns: 2,
      flips: 1,
      trials: 20,
    }
    ```

    Each trial corrupts one of the stored patterns (in turn) at `flips` positions
    and relaxes the network from it.
    """

    n: conint(ge=1) = 25  # type: ignore[valid-type]
    """
    Number of units.
    """

    patterns: List[List[Spin]] = []
    """
    Explicit patterns to store, each of length `n`.
    """

    random_patterns: conint(ge=0) = 1  # type: ignore[valid-type]
    """
    Number of additional random patterns to store.
    """

    weights: Optional[List[List[float]]] = None
    """
    Explicit weight matrix (symmetric, zero diagonal). Replaces the Hebbian weights;
    the patterns are then only used as recall targets.
    """

    flips: conint(ge=0) = 1  # type: ignore[valid-type]
    trials: conint(ge=0) = 10  # type: ignore[valid-type]
    schedule: UpdateSchedule = UpdateSchedule.sequential
    max_sweeps: conint(ge=1) = 100  # type: ignore[valid-type]

    @root_validator(skip_on_failure=True)
    def validate_sizes(cls, values: Dict[str, object]) -> Dict[str, object]:
        n: int = values["n"]  # type: ignore[assignment]
        patterns: List[List[int]] = values["patterns"]  # type: ignore[assignment]
        if any(len(pattern) != n for pattern in patterns):
            raise EnlabValidationError(f"Every pattern must have {n} spins")
        if not patterns and not values["random_patterns"]:
            raise EnlabValidationError("At least one pattern is required")
        if values["flips"] > n:  # type: ignore[operator]
            raise EnlabValidationError(f"Cannot flip more than {n} spins")
        return values


class IsingConfig(EnlabConfigBase):
    """
    Metropolis sampling of an all-to-all ferromagnet.

    ```json5
    {
      n: 10,
      coupling: 1,
      temperatures: [0.5, 100],
      sweeps: 10000,
      runs: 20,
    }
    ```
    """

    n: conint(ge=1) = 10  # type: ignore[valid-type]
    coupling: float = 1.0
    field: float = 0.0

    temperatures: List[PositiveFloat] = [0.5]
    """
    Temperatures to sample at, in units of `k_B`.
    """

    sweeps: conint(ge=0) = 1000  # type: ignore[valid-type]

    runs: conint(ge=1) = 1  # type: ignore[valid-type]
    """
    Independent runs per temperature, each on its own random sub-stream.
    """

    initial: Literal["up", "random"] = "up"
    """
    Initial state: all spins up, or drawn at random.
    """

    record_series: bool = True
    """
    Include the per-sweep energy and magnetization series in the trace.
    """

    @validator("temperatures")
    def validate_temperatures(cls, value: List[float]) -> List[float]:
        if not value:
            raise EnlabValidationError("At least one temperature is required")
        return value
