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
Command line interface: trace files, exit codes and run determinism.
"""


from __future__ import annotations

import csv
import json

from pathlib import Path
from typing import Any, Dict, List

import pytest

from click.testing import CliRunner

from enlab import experiments
from enlab.cli import enlab
from enlab.exceptions import EnlabInvariantBreachError


def _config(tmp_path: Path, name: str, document: Dict[str, Any]) -> Path:
    path = tmp_path / f"{name}.json5"
    path.write_text(json.dumps(document))
    return path


def _invoke(*args: Any) -> Any:
    return CliRunner().invoke(enlab, [str(arg) for arg in args])


def _rows(path: Path) -> List[Dict[str, str]]:
    with path.open(newline="") as f:
        return list(csv.DictReader(f))


def _meta(out: Path, command: str) -> Dict[str, Any]:
    return json.loads((out / f"{command}.meta.json").read_text())


class TestGroup:
    def test_version(self):
        result = _invoke("--version")
        assert result.exit_code == 0
        assert "enlab" in result.output

    def test_commands(self):
        result = _invoke("--help")
        assert result.exit_code == 0
        for name in (
            "mcp-census",
            "entropy-sweep",
            "hopfield",
            "ising",
            "reduce",
            "concept-train",
            "concept-infer",
            "concept-diversity",
            "gen-dataset",
        ):
            assert name in result.output


class TestMcpCensus:
    def test_csv_trace(self, tmp_path):
        config = _config(tmp_path, "census", {"neurons": [{"weights": [1, 1], "threshold": 0}]})
        out = tmp_path / "out"
        result = _invoke("mcp-census", "-c", config, "-o", out)
        assert result.exit_code == 0, result.output
        (row,) = _rows(out / "mcp-census.csv")
        assert row["p_act"] == "3/4"
        assert row["omega_act"] == "3"
        assert row["omega_nonact"] == "1"
        assert float(row["h_bits"]) == pytest.approx(0.811278, abs=1e-6)
        meta = _meta(out, "mcp-census")
        assert meta["command"] == "mcp-census"
        assert meta["neurons"] == 1
        assert meta["seed"] == 0

    def test_json_trace(self, tmp_path):
        config = _config(tmp_path, "census", {"neurons": [{"weights": [1, -1]}]})
        out = tmp_path / "out"
        result = _invoke("mcp-census", "-c", config, "-o", out, "-f", "json")
        assert result.exit_code == 0, result.output
        document = json.loads((out / "mcp-census.json").read_text())
        assert document["command"] == "mcp-census"
        assert document["rows"][0]["p_act"] == "1/4"
        assert document["rows"][0]["weights"] == [1.0, -1.0]

    def test_random_neurons(self, tmp_path):
        config = _config(tmp_path, "census", {"random_neurons": 4, "random_inputs": 3})
        out = tmp_path / "out"
        assert _invoke("mcp-census", "-c", config, "-o", out, "-s", 5).exit_code == 0
        rows = _rows(out / "mcp-census.csv")
        assert len(rows) == 4
        assert all(row["p_act"] == row["p_act_conditional"] for row in rows)
        assert _meta(out, "mcp-census")["seed"] == 5

    def test_weight_out_of_range(self, tmp_path):
        config = _config(tmp_path, "census", {"neurons": [{"weights": [1.5, 0]}]})
        result = _invoke("mcp-census", "-c", config, "-o", tmp_path / "out")
        assert result.exit_code == 2

    def test_capacity(self, tmp_path):
        config = _config(tmp_path, "census", {"neurons": [{"weights": [0.1] * 25}]})
        result = _invoke("mcp-census", "-c", config, "-o", tmp_path / "out")
        assert result.exit_code == 3
        assert "EnlabCapacityError" in result.output


class TestEntropySweep:
    def test_grid(self, tmp_path):
        config = _config(tmp_path, "sweep", {"grid": [-1, 0, 1], "n_inputs": 2})
        out = tmp_path / "out"
        assert _invoke("entropy-sweep", "-c", config, "-o", out).exit_code == 0
        rows = _rows(out / "entropy-sweep.csv")
        assert len(rows) == 9
        assert [row["row"] for row in rows] == [str(k) for k in range(9)]
        assert any(row["is_max"] == "1" for row in rows)
        h_max = max(float(row["h_bits"]) for row in rows)
        assert _meta(out, "entropy-sweep")["h_max"] == pytest.approx(h_max)

    def test_flags_exactly_half_activation(self, tmp_path):
        grid = [-1, -0.5, 0, 0.5, 1]
        config = _config(tmp_path, "sweep", {"grid": grid, "n_inputs": 2})
        out = tmp_path / "out"
        assert _invoke("entropy-sweep", "-c", config, "-o", out).exit_code == 0
        rows = _rows(out / "entropy-sweep.csv")
        assert len(rows) == 25
        flagged = [row["row"] for row in rows if row["is_max"] == "1"]
        assert flagged == [row["row"] for row in rows if row["p_act"] == "1/2"]
        assert len(flagged) == 6


class TestDeterminism:
    def test_same_seed_same_bytes(self, tmp_path):
        config = _config(tmp_path, "hopfield", {"n": 16, "random_patterns": 2, "trials": 6})
        for out in (tmp_path / "a", tmp_path / "b"):
            assert _invoke("hopfield", "-c", config, "-o", out, "-s", 11).exit_code == 0
        a = (tmp_path / "a" / "hopfield.csv").read_bytes()
        assert a == (tmp_path / "b" / "hopfield.csv").read_bytes()

    def test_rerun_rewrites_identical_metadata(self, tmp_path):
        config = _config(tmp_path, "ising", {"n": 4, "sweeps": 20, "runs": 2})
        out = tmp_path / "out"
        assert _invoke("ising", "-c", config, "-o", out).exit_code == 0
        first = (out / "ising.meta.json").read_bytes()
        assert _invoke("ising", "-c", config, "-o", out).exit_code == 0
        assert (out / "ising.meta.json").read_bytes() == first

    def test_seed_changes_trace(self, tmp_path):
        config = _config(tmp_path, "hopfield", {"n": 16, "random_patterns": 2, "trials": 6})
        for seed in (1, 2):
            result = _invoke("hopfield", "-c", config, "-o", tmp_path / str(seed), "-s", seed)
            assert result.exit_code == 0
        a = (tmp_path / "1" / "hopfield.csv").read_bytes()
        assert a != (tmp_path / "2" / "hopfield.csv").read_bytes()


class TestIsing:
    def test_rows_per_temperature_and_run(self, tmp_path):
        config = _config(
            tmp_path,
            "ising",
            {"n": 4, "sweeps": 10, "runs": 2, "temperatures": [0.5, 100], "initial": "random"},
        )
        out = tmp_path / "out"
        assert _invoke("ising", "-c", config, "-o", out, "-f", "json").exit_code == 0
        rows = json.loads((out / "ising.json").read_text())["rows"]
        assert [(row["temperature"], row["run"]) for row in rows] == [
            (0.5, 0),
            (0.5, 1),
            (100, 0),
            (100, 1),
        ]
        assert all(len(row["energies"]) == 11 for row in rows)


class TestReduce:
    def test_empty_dataset(self, tmp_path):
        dataset = tmp_path / "empty.jsonl"
        dataset.write_text("")
        out = tmp_path / "out"
        config = _config(tmp_path, "reduce", {"dataset": str(dataset)})
        assert _invoke("reduce", "-c", config, "-o", out).exit_code == 0
        assert (out / "reduce.csv").read_text() == ",".join(experiments.REDUCE_COLUMNS) + "\n"

    def test_parse_failure(self, tmp_path):
        dataset = tmp_path / "bad.jsonl"
        dataset.write_text('{"id": "a", "elements": [{"params": {"orientation": 1}}]}\n{"id": \n')
        config = _config(tmp_path, "reduce", {"dataset": str(dataset)})
        result = _invoke("reduce", "-c", config, "-o", tmp_path / "out")
        assert result.exit_code == 2
        assert "Record 2" in result.output

    def test_invariant_breach(self, tmp_path, monkeypatch):
        def breach(*args: Any, **kwargs: Any) -> None:
            raise EnlabInvariantBreachError("energy did not decrease")

        assert _invoke("gen-dataset", "-o", tmp_path / "data").exit_code == 0
        monkeypatch.setattr(experiments, "composite_reduce", breach)
        config = _config(tmp_path, "reduce", {"dataset": str(tmp_path / "data" / "dataset.jsonl")})
        result = _invoke("reduce", "-c", config, "-o", tmp_path / "out")
        assert result.exit_code == 4

    def test_reduces_strokes(self, tmp_path):
        data = tmp_path / "data"
        gen = _config(tmp_path, "gen", {"samples_per_class": 3})
        assert _invoke("gen-dataset", "-c", gen, "-o", data).exit_code == 0
        config = _config(
            tmp_path,
            "reduce",
            {
                "dataset": str(data / "dataset.jsonl"),
                "segmentation": str(data / "segmentation.json"),
                "parameter": "orientation",
            },
        )
        out = tmp_path / "out"
        assert _invoke("reduce", "-c", config, "-o", out).exit_code == 0
        rows = _rows(out / "reduce.csv")
        assert len(rows) == 9
        assert all(row["monotone"] == "1" for row in rows)
        assert {row["labels"] for row in rows if row["class_label"] == "rise"} == {"+1/0 +1/1"}


class TestConceptCommands:
    @pytest.fixture()
    def data(self, tmp_path) -> Path:
        data = tmp_path / "data"
        gen = _config(tmp_path, "gen", {"samples_per_class": 5})
        assert _invoke("gen-dataset", "-c", gen, "-o", data).exit_code == 0
        return data

    def test_generated_dataset(self, data):
        lines = (data / "dataset.jsonl").read_text().splitlines()
        assert len(lines) == 15
        meta = _meta(data, "gen-dataset")
        assert meta["label_preserving"] is True
        assert meta["records"] == 15

    def test_generation_is_reproducible(self, data, tmp_path):
        gen = _config(tmp_path, "gen", {"samples_per_class": 5})
        assert _invoke("gen-dataset", "-c", gen, "-o", tmp_path / "again").exit_code == 0
        again = (tmp_path / "again" / "dataset.jsonl").read_bytes()
        assert again == (data / "dataset.jsonl").read_bytes()

    def test_train_infer_diversity(self, data, tmp_path):
        out = tmp_path / "out"
        train = _config(
            tmp_path,
            "train",
            {
                "dataset": str(data / "dataset.jsonl"),
                "segmentation": str(data / "segmentation.json"),
            },
        )
        assert _invoke("concept-train", "-c", train, "-o", out).exit_code == 0
        concepts = _meta(out, "concept-train")["concepts"]
        assert sorted(concepts) == ["arch", "hook", "rise"]
        assert concepts["hook"]["readout"] == 4.0
        assert all(c["samples"] == 5 and c["topologically_stable"] for c in concepts.values())

        infer = _config(
            tmp_path,
            "infer",
            {"dataset": str(data / "dataset.jsonl"), "store": str(out / "concepts.json")},
        )
        assert _invoke("concept-infer", "-c", infer, "-o", out).exit_code == 0
        rows = _rows(out / "concept-infer.csv")
        assert len(rows) == 45
        own = [row for row in rows if row["concept"] == row["class_label"]]
        assert all(row["verdict"] == "recognized" and row["diversity"] == "0" for row in own)
        assert all(row["winner"] == row["class_label"] for row in rows)
        assert _meta(out, "concept-infer")["winners_correct"] == 15

        diversity = _config(tmp_path, "diversity", {"store": str(out / "concepts.json")})
        assert _invoke("concept-diversity", "-c", diversity, "-o", out).exit_code == 0
        rows = _rows(out / "concept-diversity.csv")
        assert [(row["concept_a"], row["concept_b"]) for row in rows] == [
            ("arch", "hook"),
            ("arch", "rise"),
            ("hook", "rise"),
        ]
        assert all(int(row["diversity"]) > 0 for row in rows)

    def test_unlabelled_record(self, tmp_path):
        dataset = tmp_path / "unlabelled.jsonl"
        dataset.write_text('{"id": "a", "elements": [{"params": {"orientation": 1}}]}\n')
        config = _config(tmp_path, "train", {"dataset": str(dataset)})
        result = _invoke("concept-train", "-c", config, "-o", tmp_path / "out")
        assert result.exit_code == 2

    def test_missing_store(self, data, tmp_path):
        config = _config(
            tmp_path,
            "infer",
            {"dataset": str(data / "dataset.jsonl"), "store": str(tmp_path / "missing.json")},
        )
        result = _invoke("concept-infer", "-c", config, "-o", tmp_path / "out")
        assert result.exit_code == 2
