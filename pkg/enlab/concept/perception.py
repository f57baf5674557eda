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
Detection: mapping external sequence readings onto internal structure parameters.
"""


from __future__ import annotations

from typing import Dict, Iterable, Optional

from pydantic import validator

from ..dataset import SequenceRecord
from ..exceptions import EnlabParseError, EnlabValidationError
from ..reduction import OrderedStructure, Param, ScaleLevel, Segmentation, StructElement
from ..types import EnlabModel


class DetectorChannel(EnlabModel):
    """
    Linear detector for one external reading: `internal = gain * reading + offset`.
    """

    name: Optional[str] = None
    """
    Internal parameter name. Defaults to the external reading name.
    """

    scale: ScaleLevel = ScaleLevel.ratio
    """
    Measurement scale of the internal parameter.
    """

    gain: float = 1.0
    offset: float = 0.0


class DetectorConfig(EnlabModel):
    """
    Detector channels by external reading name. The default detector passes
    `orientation` readings through unchanged.
    """

    channels: Dict[str, DetectorChannel] = {"orientation": DetectorChannel()}

    @validator("channels")
    def validate_channels(cls, value: Dict[str, DetectorChannel]) -> Dict[str, DetectorChannel]:
        if not value:
            raise EnlabValidationError("A detector needs at least one channel")
        names = [channel.name or reading for reading, channel in value.items()]
        if len(set(names)) != len(names):
            raise EnlabValidationError("Detector channels must map to distinct parameters")
        return value

    def internal_name(self, reading: str) -> str:
        return self.channels[reading].name or reading


DEFAULT_DETECTOR = DetectorConfig()


def perceive(
    raw: SequenceRecord,
    segmentations: Iterable[Segmentation] = (),
    detector: DetectorConfig = DEFAULT_DETECTOR,
    index: Optional[int] = None,
) -> OrderedStructure:
    """
    Map an external sequence record onto an internal ordered structure.

    Args:
        raw (SequenceRecord): External record.
        segmentations (Iterable[Segmentation], optional): Segmentations that will be
            applied to the internal parameters.
        detector (DetectorConfig, optional): Detector. Defaults to the identity detector.
        index (Optional[int], optional): Record index, for error messages.

    Raises:
        EnlabValidationError: If the record has no elements, or a segmentation names
            a parameter the detector does not produce.
        EnlabParseError: If a reading has no detector channel.

    Returns:
        Ordered structure with elements `s1` to `sn`
    """

    if not raw.elements:
        raise EnlabValidationError(f"Record {raw.id!r} has no elements")
    internal = {detector.internal_name(reading) for reading in detector.channels}
    for seg in segmentations:
        if seg.parameter not in internal:
            raise EnlabValidationError(
                f"Segmentation parameter {seg.parameter!r} is not produced by the detector",
            )

    elements = []
    for i, element in enumerate(raw.elements):
        params = {}
        for reading, value in element.params.items():
            channel = detector.channels.get(reading)
            if channel is None:
                raise EnlabParseError(
                    f"Record {raw.id!r} has a reading {reading!r} with no detector channel",
                    index=index,
                )
            params[channel.name or reading] = Param(
                value=channel.gain * value + channel.offset,
                scale=channel.scale,
            )
        elements.append(StructElement(id=f"s{i + 1}", params=params))
    try:
        return OrderedStructure(elements=elements)
    except ValueError as err:
        raise EnlabParseError(f"Record {raw.id!r}: {err}", index=index) from None
