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
Trace file writer: one table per command, as CSV or JSON, plus a metadata sidecar.
"""


from __future__ import annotations

import csv
import io
import json
import sys

from fractions import Fraction
from logging import getLogger
from pathlib import Path
from typing import Any, Dict, Mapping, Sequence

import networkx as nx
import numpy as np
import scipy

from . import __version__
from .config import EnlabConfigBase
from .types import BaseEnum, OutputFormat
from .util import format_number, format_vector

logger = getLogger(__name__)

Row = Mapping[str, Any]


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, BaseEnum):
        return value.to_name_str()
    if isinstance(value, (list, tuple, np.ndarray)):
        return format_vector(value)
    return format_number(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, BaseEnum):
        return value.to_name_str()
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_json_value(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def render_table(
    command: str,
    columns: Sequence[str],
    rows: Sequence[Row],
    fmt: OutputFormat,
) -> str:
    """
    Render a trace table.

    CSV cells hold lossless text forms: fractions as `a/b`, vectors space-separated.
    The JSON document holds the same rows as objects.

    Args:
        command (str): Command name.
        columns (Sequence[str]): Column names, in order.
        rows (Sequence[Row]): Rows, keyed by column name.
        fmt (OutputFormat): Output format.

    Returns:
        Document text
    """

    if fmt == "json":
        document = {
            "command": command,
            "columns": list(columns),
            "rows": [{column: _json_value(row.get(column)) for column in columns} for row in rows],
        }
        return json.dumps(document, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({column: _csv_cell(row.get(column)) for column in columns})
    return buffer.getvalue()


def write_table(
    out: Path,
    command: str,
    columns: Sequence[str],
    rows: Sequence[Row],
    fmt: OutputFormat,
) -> Path:
    """
    Write `<out>/<command>.<fmt>`.

    Returns:
        Path of the written file
    """

    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{command}.{fmt}"
    path.write_text(render_table(command, columns, rows, fmt), encoding="utf-8")
    logger.info("Wrote %i rows to '%s'", len(rows), path)
    return path


def build_fingerprint() -> Dict[str, str]:
    return {
        "enlab": __version__,
        "networkx": nx.__version__,
        "numpy": np.__version__,
        "python": ".".join(str(v) for v in sys.version_info[:3]),
        "scipy": scipy.__version__,
    }


def write_metadata(
    out: Path,
    command: str,
    config: EnlabConfigBase,
    extra: Mapping[str, Any] = {},  # noqa: B006
) -> Path:
    """
    Write `<out>/<command>.meta.json`: the configuration echo, the seed, the build
    fingerprint and any command-specific results. No timestamps are recorded, so
    reruns produce identical files.

    Returns:
        Path of the written file
    """

    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{command}.meta.json"
    document: Dict[str, Any] = {
        "build": build_fingerprint(),
        "command": command,
        "config": json.loads(config.json()),
        "seed": config.seed,
    }
    document.update({key: _json_value(value) for key, value in extra.items()})
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path

