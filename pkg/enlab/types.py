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
Enlab type hints and shared model base classes.
"""


from __future__ import annotations

import math

from enum import Enum
from fractions import Fraction
from typing import Any, Literal, Optional

from pydantic import BaseModel, Extra

OutputFormat = Literal["csv", "json"]

Spin = Literal[-1, 1]
Bit = Literal[0, 1]

LOG_BASE_TOLERANCE = 1e-12


class EnlabModel(BaseModel):
    """
    Base class for Enlab value objects.

    Instances are immutable after construction; derived values are produced as new objects.
    """

    class Config:
        allow_mutation = False
        extra = Extra.forbid
        arbitrary_types_allowed = True
        json_encoders = {Fraction: str}


class BaseEnum(Enum):
    """
    Enumeration base class that also accepts member names,
    in either `snake_case` or `kebab-case`, as input values.
    """

    @classmethod
    def _missing_(cls, value: Any) -> Optional[BaseEnum]:
        if isinstance(value, str):
            name = value.strip().lower().replace("-", "_")
            for member in cls:
                if member.name.lower() == name:
                    return member
        return None

    def to_name_str(self) -> str:
        """
        Return the member name in `kebab-case`, as used in files and on the command line.

        Returns:
            Member name string
        """

        return self.name.lower().replace("_", "-")


class LogBase(float, BaseEnum):
    """
    Logarithm bases accepted by the information-measure functions.
    """

    bits = 2.0
    nats = math.e

    @classmethod
    def _missing_(cls, value: Any) -> Optional[LogBase]:
        member = super()._missing_(value)
        if member is not None:
            return member  # type: ignore[return-value]
        if isinstance(value, (int, float)):
            for candidate in cls:
                if abs(float(value) - candidate.value) <= LOG_BASE_TOLERANCE:
                    return candidate
        return None
