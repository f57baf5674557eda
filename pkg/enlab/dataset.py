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
Sequence record files, segmentation sidecar files and the synthetic stroke dataset.

A dataset file holds one JSON object per line:

```json
{"id": "rise-000", "class_label": "rise", "elements": [{"params": {"orientation": "20.0"}}]}
```

Parameter values are written as decimal text. Segmentation sidecar files are JSON5
objects with the fields of `Segmentation`.
"""


from __future__ import annotations

import json
import math

from logging import getLogger
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import json5

from pydantic import NonNegativeFloat, PositiveInt, ValidationError, validator

from .exceptions import EnlabParseError, EnlabValidationError
from .reduction import Segmentation
from .reduction.scales import DEFAULT_ZERO_TOLERANCE
from .types import EnlabModel
from .util import format_number, rng_stream

logger = getLogger(__name__)


class RawElement(EnlabModel):
    """
    External parameter readings of one sequence element.
    """

    params: Dict[str, float]

    @validator("params")
    def validate_params(cls, value: Dict[str, float]) -> Dict[str, float]:
        for name, reading in value.items():
            if not math.isfinite(reading):
                raise EnlabValidationError(f"Reading {name!r} must be finite")
        return value


class SequenceRecord(EnlabModel):
    """
    One externally observed sequence, optionally labelled with its class.
    """

    id: str
    class_label: Optional[str] = None
    elements: List[RawElement]

    def to_json_line(self) -> str:
        document = {
            "id": self.id,
            "class_label": self.class_label,
            "elements": [
                {"params": {name: format_number(v) for name, v in sorted(e.params.items())}}
                for e in self.elements
            ],
        }
        return json.dumps(document, sort_keys=True)


def parse_records(text: str) -> List[SequenceRecord]:
    """
    Parse a dataset document. Blank lines are skipped.

    Raises:
        EnlabParseError: If a line is not a valid record; carries the 1-based line number.
    """

    records: List[SequenceRecord] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(SequenceRecord.parse_obj(json5.loads(line)))
        except (ValueError, TypeError, ValidationError) as err:
            raise EnlabParseError(str(err), index=line_number) from None
    return records


def load_records(path: Path) -> List[SequenceRecord]:
    """
    Load a dataset file.
    """

    logger.debug("Loading records from '%s'", path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise EnlabValidationError(f"Unable to read dataset '{path}': {err}") from None
    return parse_records(text)


def dump_records(records: Sequence[SequenceRecord], path: Path) -> None:
    Path(path).write_text(
        "".join(f"{record.to_json_line()}\n" for record in records),
        encoding="utf-8",
    )


def load_segmentation(path: Path) -> Segmentation:
    """
    Load a segmentation sidecar file.

    Raises:
        EnlabParseError: If the file is not a valid segmentation description.
    """

    try:
        document = json5.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise EnlabValidationError(f"Unable to read segmentation '{path}': {err}") from None
    except ValueError as err:
        raise EnlabParseError(f"Invalid segmentation '{path}': {err}") from None
    try:
        return Segmentation.parse_obj(document)
    except ValidationError as err:
        raise EnlabParseError(f"Invalid segmentation '{path}': {err}") from None


def dump_segmentation(seg: Segmentation, path: Path) -> None:
    Path(path).write_text(seg.json(indent=2, sort_keys=True) + "\n", encoding="utf-8")


class StrokeClass(EnlabModel):
    """
    Prototype stroke sequence of one class.
    """

    label: str
    prototype: List[float]

    @validator("prototype")
    def validate_prototype(cls, value: List[float]) -> List[float]:
        if len(value) < 2:  # noqa: PLR2004
            raise EnlabValidationError("A prototype needs at least 2 elements")
        return value


DEFAULT_STROKE_CLASSES = [
    StrokeClass(label="rise", prototype=[20, 40, 60, 120, 150]),
    StrokeClass(label="arch", prototype=[30, 50, 70, 50, 30]),
    StrokeClass(label="hook", prototype=[200, 230, 260, 300, 280]),
]


class SyntheticStrokeDataset(EnlabModel):
    """
    Noisy variants of orientation-parameterised prototype strokes.
    """

    classes: List[StrokeClass] = DEFAULT_STROKE_CLASSES
    parameter: str = "orientation"
    segmentation: Segmentation = Segmentation.quadrants()

    noise: NonNegativeFloat = 5.0
    """
    Amplitude of the uniform noise added to every reading.
    """

    samples_per_class: PositiveInt = 50
    seed: int = 0

    @validator("segmentation")
    def validate_segmentation(cls, value: Segmentation, values: Dict[str, object]) -> Segmentation:
        if "parameter" in values and value.parameter != values["parameter"]:
            raise EnlabValidationError(
                f"Segmentation applies to {value.parameter!r}, not {values['parameter']!r}",
            )
        return value


class GeneratedDataset(EnlabModel):
    """
    Generated records with their label-preservation bound.
    """

    records: List[SequenceRecord]

    margin: float
    """
    Largest noise amplitude guaranteed to preserve every prototype's reduced chain.
    """

    label_preserving: bool


def _threshold_distance(value: float, seg: Segmentation) -> float:
    if seg.cyclic:
        period: float = seg.period  # type: ignore[assignment]
        return min(
            min(abs(value - t) % period, period - abs(value - t) % period)
            for t in seg.thresholds
        )
    return min(abs(value - t) for t in seg.thresholds)


def label_margin(
    prototype: Sequence[float],
    seg: Optional[Segmentation],
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> float:
    """
    Noise amplitude below which perturbing the prototype changes no gradient sign and
    crosses no segment threshold, so its reduced chain is preserved.

    Returns:
        Margin, 0 when the prototype holds a constant step
    """

    deltas = [abs(b - a) for a, b in zip(prototype, prototype[1:])]
    if any(d <= zero_tol for d in deltas):
        return 0.0
    margin = min((d - zero_tol) / 2 for d in deltas)
    if seg is not None:
        margin = min(margin, min(_threshold_distance(v, seg) for v in prototype))
    return margin


def generate_strokes(config: SyntheticStrokeDataset) -> GeneratedDataset:
    """
    Generate `samples_per_class` noisy variants of every class prototype.

    Args:
        config (SyntheticStrokeDataset): Generator configuration.

    Returns:
        Records in class order, with the label-preservation margin
    """

    rng = rng_stream(config.seed, "gen-dataset")
    records: List[SequenceRecord] = []
    for stroke in config.classes:
        for k in range(config.samples_per_class):
            if config.noise:
                readings = (
                    rng.uniform(-config.noise, config.noise, len(stroke.prototype))
                    + stroke.prototype
                ).tolist()
            else:
                readings = [float(v) for v in stroke.prototype]
            records.append(
                SequenceRecord(
                    id=f"{stroke.label}-{k:03d}",
                    class_label=stroke.label,
                    elements=[RawElement(params={config.parameter: v}) for v in readings],
                ),
            )
    margin = min(label_margin(s.prototype, config.segmentation) for s in config.classes)
    label_preserving = config.noise < margin
    if not label_preserving:
        logger.warning(
            "Noise amplitude %r is not below the label-preservation margin %r",
            config.noise,
            margin,
        )
    logger.info("Generated %i records in %i classes", len(records), len(config.classes))
    return GeneratedDataset(records=records, margin=margin, label_preserving=label_preserving)
