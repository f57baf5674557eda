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
Reduction, concept and dataset command configuration.
"""


from __future__ import annotations

from pathlib import Path
from typing import List, Optional

from pydantic import NonNegativeFloat, PositiveInt, confloat

from ..concept.perception import DEFAULT_DETECTOR, DetectorConfig
from ..dataset import DEFAULT_STROKE_CLASSES, StrokeClass
from ..reduction import DEFAULT_SCALE_ENERGIES, ScaleEnergyTable
from ..reduction.scales import DEFAULT_ZERO_TOLERANCE
from .types import EnlabConfigBase

GammaSig = confloat(gt=0, le=1)


class ReductionOptions(EnlabConfigBase):
    """
    Options shared by the commands that reduce structures.
    """

    segmentation: Optional[Path] = None
    """
    Segmentation sidecar file.
    """

    gamma_sig: GammaSig = 0.5  # type: ignore[valid-type]
    """
    Significance threshold of structural pruning.
    """

    zero_tol: NonNegativeFloat = DEFAULT_ZERO_TOLERANCE
    """
    Differences up to this magnitude count as parameter constancy.
    """

    detector: DetectorConfig = DEFAULT_DETECTOR
    """
    Mapping of dataset readings onto structure parameters.
    """


class ReduceConfig(ReductionOptions):
    """
    Composite reduction of every structure in a dataset, with its energy ledger.

    ```json5
    {
      dataset: "out/dataset.jsonl",
      segmentation: "out/segmentation.json",
      gamma_sig: 0.5,
    }
    ```
    """

    dataset: Path = Path("dataset.jsonl")

    parameter: Optional[str] = None
    """
    Reduction parameter. Defaults to the principal parameter of each structure.
    """

    scale_energies: ScaleEnergyTable = DEFAULT_SCALE_ENERGIES
    """
    Energy per measurement scale.
    """


class ConceptTrainConfig(ReductionOptions):
    """
    Training of one concept per class label of a dataset.

    ```json5
    {
      dataset: "out/dataset.jsonl",
      segmentation: "out/segmentation.json",
    }
    ```

    The concept store is written to `concepts.json` in the output directory.
    """

    dataset: Path = Path("dataset.jsonl")


class ConceptInferConfig(EnlabConfigBase):
    """
    Interpretation of every record of a dataset against a concept store.

    The segmentation, detector and thresholds are those stored with the concepts.

    ```json5
    {
      dataset: "out/dataset.jsonl",
      store: "out/concepts.json",
    }
    ```
    """

    dataset: Path = Path("dataset.jsonl")
    store: Path = Path("concepts.json")
    zero_tol: NonNegativeFloat = DEFAULT_ZERO_TOLERANCE


class ConceptDiversityConfig(EnlabConfigBase):
    """
    Informational diversity between stored concepts.

    ```json5
    {
      store: "out/concepts.json",
      concepts: ["rise", "arch"],
    }
    ```
    """

    store: Path = Path("concepts.json")

    concepts: List[str] = []
    """
    Class labels to compare pairwise. Defaults to every stored concept.
    """


class GenerateDatasetConfig(EnlabConfigBase):
    """
    Synthetic stroke dataset: noisy, orientation-parameterised variants of class
    prototypes, segmented into angular quadrants.

    ```json5
    {
      noise: 5,
      samples_per_class: 50,
    }
    ```

    Writes `dataset.jsonl` and `segmentation.json` to the output directory.
    """

    classes: List[StrokeClass] = DEFAULT_STROKE_CLASSES

    noise: NonNegativeFloat = 5.0
    """
    Amplitude of the uniform noise added to every reading.
    """

    samples_per_class: PositiveInt = 50
