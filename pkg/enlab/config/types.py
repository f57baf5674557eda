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
Run configuration base class and file loader.
"""


from __future__ import annotations

from logging import getLogger
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

import json5

from pydantic import ValidationError

from ..exceptions import EnlabParseError, EnlabValidationError
from ..types import EnlabModel, OutputFormat

logger = getLogger(__name__)

ConfigType = TypeVar("ConfigType", bound="EnlabConfigBase")


class EnlabConfigBase(EnlabModel):
    """
    Options shared by every command. The command line overrides them.
    """

    seed: int = 0
    """
    Per-run seed. All randomness in a run is drawn from named sub-streams of it.
    """

    out: Path = Path("out")
    """
    Output directory.
    """

    format: OutputFormat = "csv"
    """
    Trace file format.
    """

    def with_overrides(
        self: ConfigType,
        seed: Optional[int] = None,
        out: Optional[Path] = None,
        format: Optional[OutputFormat] = None,  # noqa: A002
    ) -> ConfigType:
        """
        Return a copy with the given command-line options applied.
        """

        update: Dict[str, Any] = {}
        if seed is not None:
            update["seed"] = seed
        if out is not None:
            update["out"] = out
        if format is not None:
            update["format"] = format
        return self.copy(update=update)


def load_config(config_type: Type[ConfigType], path: Optional[Path]) -> ConfigType:
    """
    Load a command configuration from a flat JSON5 file. Without a file, the
    defaults are used.

    Args:
        config_type (Type[ConfigType]): Command configuration class.
        path (Optional[Path]): Configuration file path.

    Raises:
        EnlabParseError: If the file is not a JSON5 object.
        ValidationError: If the file's keys do not validate against the configuration.

    Returns:
        Configuration object
    """

    if path is None:
        return config_type()
    logger.debug("Loading %s from '%s'", config_type.__name__, path)
    try:
        document = json5.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise EnlabValidationError(f"Unable to read configuration '{path}': {err}") from None
    except ValueError as err:
        raise EnlabParseError(f"Invalid configuration '{path}': {err}") from None
    if not isinstance(document, dict):
        raise EnlabParseError(f"Configuration '{path}' must contain a JSON5 object")
    try:
        return config_type(**document)
    except ValidationError:
        logger.debug("Configuration '%s' failed validation", path)
        raise
