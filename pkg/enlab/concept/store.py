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
Concept store: trained concepts persisted as a self-describing JSON document.
"""


from __future__ import annotations

from logging import getLogger
from pathlib import Path
from typing import List, Optional

import json5

from packaging.version import InvalidVersion, Version
from pydantic import ValidationError, validator
from typing_extensions import Self

from ..exceptions import EnlabParseError, EnlabValidationError
from ..reduction import Segmentation
from ..reduction.operators import DEFAULT_GAMMA_SIG
from ..types import EnlabModel
from .graph import ConceptGraph
from .perception import DEFAULT_DETECTOR, DetectorConfig

logger = getLogger(__name__)

STORE_FORMAT_VERSION = "1.0"


class ConceptStore(EnlabModel):
    """
    Registry of trained concepts, with the segmentation and detector they were
    trained with.
    """

    format_version: str = STORE_FORMAT_VERSION
    """
    Store format version. Stores with a different major version cannot be loaded.
    """

    segmentation: Optional[Segmentation] = None
    detector: DetectorConfig = DEFAULT_DETECTOR
    gamma_sig: float = DEFAULT_GAMMA_SIG
    concepts: List[ConceptGraph] = []

    @validator("format_version")
    def validate_format_version(cls, value: str) -> str:
        try:
            version = Version(value)
        except InvalidVersion:
            raise EnlabValidationError(f"Invalid store format version {value!r}") from None
        if version.major != Version(STORE_FORMAT_VERSION).major:
            raise EnlabValidationError(
                f"Unsupported store format version {value} "
                f"(this version of Enlab reads {STORE_FORMAT_VERSION})",
            )
        return value

    @validator("concepts")
    def validate_concepts(cls, value: List[ConceptGraph]) -> List[ConceptGraph]:
        labels = [con.class_label for con in value]
        if len(set(labels)) != len(labels):
            raise EnlabValidationError("Concept class labels must be unique")
        return value

    @property
    def labels(self) -> List[str]:
        return [con.class_label for con in self.concepts]

    def concept(self, class_label: str) -> ConceptGraph:
        for con in self.concepts:
            if con.class_label == class_label:
                return con
        raise EnlabValidationError(f"No concept for class {class_label!r} in the store")

    def with_concept(self, con: ConceptGraph) -> Self:
        """
        Return a store with the given concept added, replacing any concept of the same class.
        """

        concepts = [c for c in self.concepts if c.class_label != con.class_label]
        concepts.append(con)
        return self.copy(update={"concepts": sorted(concepts, key=lambda c: c.class_label)})

    def dumps(self) -> str:
        return self.json(indent=2, sort_keys=True) + "\n"

    def save(self, path: Path) -> None:
        logger.debug("Saving %i concepts to '%s'", len(self.concepts), path)
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def loads(cls, text: str) -> Self:
        """
        Parse a store document.

        Raises:
            EnlabParseError: If the document is malformed or of an incompatible version.
        """

        try:
            return cls.parse_obj(json5.loads(text))
        except (ValueError, ValidationError) as err:
            raise EnlabParseError(f"Invalid concept store: {err}") from None

    @classmethod
    def load(cls, path: Path) -> Self:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as err:
            raise EnlabValidationError(f"Unable to read concept store '{path}': {err}") from None
        store = cls.loads(text)
        logger.debug("Loaded %i concepts from '%s'", len(store.concepts), path)
        return store
