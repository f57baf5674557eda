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
Measurement scales, their energy values, and the scale-level primitives of the
reduction operators: interval comparison, gradient signs and segmentation.
"""


from __future__ import annotations

import math

from bisect import bisect_right
from typing import Dict, List, Literal, Optional

from pydantic import PositiveFloat, root_validator, validator

from ..exceptions import EnlabDomainError, EnlabNumericError, EnlabValidationError
from ..types import BaseEnum, EnlabModel

DEFAULT_ZERO_TOLERANCE = 1e-9

GradientSign = Literal[-1, 0, 1]


class ScaleLevel(BaseEnum):
    """
    Measurement scales, from the strongest (`ratio`) to the weakest (`nominal`).
    """

    ratio = "ratio"
    interval = "interval"
    ordinal = "ordinal"
    nominal = "nominal"

    @property
    def rank(self) -> int:
        """
        Position in the strength order, 0 for the strongest scale.
        """

        return _SCALE_ORDER.index(self)

    def is_weaker_than(self, other: ScaleLevel) -> bool:
        return self.rank > other.rank

    def demoted(self) -> ScaleLevel:
        """
        The next weaker scale.

        Raises:
            EnlabValidationError: If the scale is already nominal.
        """

        if self is ScaleLevel.nominal:
            raise EnlabValidationError("The nominal scale cannot be demoted further")
        return _SCALE_ORDER[self.rank + 1]

    def link_scale(self) -> ScaleLevel:
        """
        Scale of the implicit relation between two consecutive values on this scale:
        quantitative values compare on the interval scale, qualitative ones on their own.
        """

        return ScaleLevel.interval if self is ScaleLevel.ratio else self


_SCALE_ORDER = [ScaleLevel.ratio, ScaleLevel.interval, ScaleLevel.ordinal, ScaleLevel.nominal]


def weakest(*levels: ScaleLevel) -> ScaleLevel:
    return max(levels, key=lambda level: level.rank)


class ScaleEnergyTable(EnlabModel):
    """
    Energy contributed by one parameter (or one relation) on each measurement scale.

    Any strictly decreasing, positive table satisfies the ordering the reduction
    operators rely on.
    """

    ratio: PositiveFloat = 4.0
    interval: PositiveFloat = 3.0
    ordinal: PositiveFloat = 2.0
    nominal: PositiveFloat = 1.0

    @root_validator(skip_on_failure=True)
    def validate_ordering(cls, values: Dict[str, float]) -> Dict[str, float]:
        if not values["ratio"] > values["interval"] > values["ordinal"] > values["nominal"]:
            raise EnlabValidationError(
                "Scale energies must strictly decrease from ratio to nominal",
            )
        return values

    def energy(self, level: ScaleLevel) -> float:
        return getattr(self, level.value)


DEFAULT_SCALE_ENERGIES = ScaleEnergyTable()


class Segmentation(EnlabModel):
    """
    Partition of a parameter's value range into segments bounded by thresholds.

    Segment `j` is the half-open interval `[thresholds[j], thresholds[j + 1])`;
    the last segment is unbounded above, or wraps around to the first
    threshold when the segmentation is cyclic.
    """

    parameter: str
    """
    Name of the parameter the segmentation applies to.
    """

    thresholds: List[float]
    """
    Segment thresholds, strictly increasing.
    """

    cyclic: bool = False
    """
    Whether values are taken modulo `period` (e.g. angles).
    """

    period: Optional[PositiveFloat] = None
    """
    Period of a cyclic parameter. Required when `cyclic` is true.
    """

    @validator("thresholds")
    def validate_thresholds(cls, value: List[float]) -> List[float]:
        if not value:
            raise EnlabValidationError("At least one threshold is required")
        if any(not math.isfinite(t) for t in value):
            raise EnlabValidationError("Thresholds must be finite")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise EnlabValidationError("Thresholds must be strictly increasing")
        return value

    @root_validator(skip_on_failure=True)
    def validate_period(cls, values: Dict[str, object]) -> Dict[str, object]:
        cyclic = values["cyclic"]
        period = values["period"]
        thresholds: List[float] = values["thresholds"]  # type: ignore[assignment]
        if cyclic:
            if period is None:
                raise EnlabValidationError("A cyclic segmentation requires a period")
            if thresholds[-1] - thresholds[0] >= period:  # type: ignore[operator]
                raise EnlabValidationError("Cyclic thresholds must span less than one period")
        elif period is not None:
            raise EnlabValidationError("A period is only valid for cyclic segmentations")
        return values

    @classmethod
    def quadrants(cls, parameter: str = "orientation") -> Segmentation:
        """
        Angular quadrants in degrees: thresholds 0, 90, 180 and 270, period 360.
        """

        return cls(parameter=parameter, thresholds=[0, 90, 180, 270], cyclic=True, period=360)

    @property
    def segments(self) -> int:
        return len(self.thresholds)

    def coarsen(self) -> Segmentation:
        """
        Coarser segmentation keeping every second threshold, merging pairs of
        neighbouring segments (e.g. quadrants into half-planes).
        """

        return self.copy(update={"thresholds": self.thresholds[::2]})


def compare(u_i: float, u_next: float) -> float:
    """
    Interval-scale difference `u_next - u_i` between consecutive values, positive
    for an increase.

    Raises:
        EnlabNumericError: If either value is not finite.
    """

    if not (math.isfinite(u_i) and math.isfinite(u_next)):
        raise EnlabNumericError(f"Cannot compare non-finite values {u_i!r} and {u_next!r}")
    return u_next - u_i


def gradient_sign(delta: float, zero_tol: float = DEFAULT_ZERO_TOLERANCE) -> GradientSign:
    """
    Ordinal label of a difference: `+1` for an increase, `0` for constancy
    (`|delta| <= zero_tol`) and `-1` for a decrease.
    """

    if zero_tol < 0:
        raise EnlabValidationError("zero_tol must be non-negative")
    if delta > zero_tol:
        return 1
    if abs(delta) <= zero_tol:
        return 0
    return -1


def segment_index(value: float, seg: Segmentation) -> int:
    """
    Index `j` of the segment `[Tr_j, Tr_j+1)` containing the value.

    Raises:
        EnlabNumericError: If the value is not finite.
        EnlabDomainError: If the value lies below the lowest threshold
            of a non-cyclic segmentation.
    """

    if not math.isfinite(value):
        raise EnlabNumericError(f"Cannot segment non-finite value {value!r}")
    first = seg.thresholds[0]
    if seg.cyclic:
        value = first + (value - first) % seg.period  # type: ignore[operator]
    elif value < first:
        raise EnlabDomainError(
            f"Value {value!r} lies below the lowest {seg.parameter!r} threshold {first!r}",
        )
    return bisect_right(seg.thresholds, value) - 1
