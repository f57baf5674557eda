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
Trace tables and metadata sidecars.
"""


from __future__ import annotations

import json

from fractions import Fraction

import numpy as np

from enlab.concept import Verdict
from enlab.config import IsingConfig
from enlab.output import render_table, write_metadata, write_table

COLUMNS = ["name", "p", "vector", "flag", "verdict", "missing"]
ROW = {
    "name": "a",
    "p": Fraction(3, 4),
    "vector": np.array([1, -1]),
    "flag": True,
    "verdict": Verdict.associative_input,
}


def test_csv_cells():
    text = render_table("demo", COLUMNS, [ROW], "csv")
    assert text == "name,p,vector,flag,verdict,missing\na,3/4,1 -1,1,associative-input,\n"


def test_json_rows():
    document = json.loads(render_table("demo", COLUMNS, [ROW], "json"))
    assert document["command"] == "demo"
    assert document["columns"] == COLUMNS
    assert document["rows"] == [
        {
            "name": "a",
            "p": "3/4",
            "vector": [1, -1],
            "flag": True,
            "verdict": "associative-input",
            "missing": None,
        },
    ]


def test_empty_table_has_header():
    assert render_table("demo", COLUMNS, [], "csv") == ",".join(COLUMNS) + "\n"


def test_write_table(tmp_path):
    path = write_table(tmp_path / "out", "demo", COLUMNS, [ROW], "json")
    assert path == tmp_path / "out" / "demo.json"
    assert path.exists()


def test_metadata(tmp_path):
    config = IsingConfig(seed=9, out=tmp_path)
    path = write_metadata(tmp_path, "ising", config, {"ratio": Fraction(1, 3)})
    document = json.loads(path.read_text())
    assert path.name == "ising.meta.json"
    assert document["seed"] == 9
    assert document["config"]["temperatures"] == [0.5]
    assert document["ratio"] == "1/3"
    assert set(document["build"]) == {"enlab", "networkx", "numpy", "python", "scipy"}
