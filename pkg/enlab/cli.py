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
Enlab command line interface.
"""


from __future__ import annotations

import logging
import sys

from pathlib import Path
from typing import Callable, Optional, Type

import click

from pydantic import ValidationError

from . import __version__
from .config import (
    ConceptDiversityConfig,
    ConceptInferConfig,
    ConceptTrainConfig,
    EnlabConfigBase,
    EntropySweepConfig,
    GenerateDatasetConfig,
    HopfieldConfig,
    IsingConfig,
    McpCensusConfig,
    ReduceConfig,
    load_config,
)
from .exceptions import EnlabError, EnlabValidationError
from .experiments import (
    run_concept_diversity,
    run_concept_infer,
    run_concept_train,
    run_entropy_sweep,
    run_generate_dataset,
    run_hopfield,
    run_ising,
    run_mcp_census,
    run_reduce,
)
from .types import OutputFormat

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s [%(levelname)s] %(message)s"

Runner = Callable[[EnlabConfigBase], Path]


def _execute(
    config_type: Type[EnlabConfigBase],
    runner: Runner,
    config_path: Optional[Path],
    seed: Optional[int],
    out: Optional[Path],
    fmt: Optional[OutputFormat],
) -> None:
    try:
        config = load_config(config_type, config_path).with_overrides(
            seed=seed,
            out=out,
            format=fmt,
        )
        path = runner(config)
    except ValidationError as err:
        click.echo(f"Invalid configuration: {err}", err=True)
        sys.exit(EnlabValidationError.exit_code)
    except EnlabError as err:
        click.echo(f"{type(err).__name__}: {err}", err=True)
        sys.exit(err.exit_code)
    click.echo(str(path))


def _command(
    name: str,
    config_type: Type[EnlabConfigBase],
    runner: Runner,
    help: str,  # noqa: A002
) -> None:
    @enlab.command(name=name, help=help)
    @click.option(
        "-c",
        "--config",
        "config_path",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="JSON5 run configuration file. Defaults are used if undefined.",
    )
    @click.option("-s", "--seed", type=int, default=None, help="Per-run seed.")
    @click.option(
        "-o",
        "--out",
        type=click.Path(file_okay=False, path_type=Path),
        default=None,
        help="Output directory.",
    )
    @click.option(
        "-f",
        "--format",
        "fmt",
        type=click.Choice(["csv", "json"]),
        default=None,
        help="Trace file format.",
    )
    def command(
        config_path: Optional[Path],
        seed: Optional[int],
        out: Optional[Path],
        fmt: Optional[OutputFormat],
    ) -> None:
        _execute(config_type, runner, config_path, seed, out, fmt)


@click.group(help="Energy-landscape laboratory: neurons, associative memories and concepts.")
@click.option(
    "-l",
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="INFO",
    help="Logging level.",
)
@click.version_option(__version__, prog_name="enlab")
def enlab(log_level: str) -> None:
    """
    Energy-landscape laboratory.
    """

    logging.basicConfig(level=log_level.upper(), format=LOG_FORMAT, stream=sys.stderr)


_command(
    "mcp-census",
    McpCensusConfig,
    run_mcp_census,  # type: ignore[arg-type]
    "Microstate census, entropies and Gibbs decomposition of threshold neurons.",
)
_command(
    "entropy-sweep",
    EntropySweepConfig,
    run_entropy_sweep,  # type: ignore[arg-type]
    "Activation entropy of every threshold neuron on a weight grid.",
)
_command(
    "hopfield",
    HopfieldConfig,
    run_hopfield,  # type: ignore[arg-type]
    "Pattern storage and recall from corrupted cues in a Hopfield network.",
)
_command(
    "ising",
    IsingConfig,
    run_ising,  # type: ignore[arg-type]
    "Metropolis sampling of a ferromagnetic Ising model.",
)
_command(
    "reduce",
    ReduceConfig,
    run_reduce,  # type: ignore[arg-type]
    "Composite reduction of dataset structures, with their energy ledgers.",
)
_command(
    "concept-train",
    ConceptTrainConfig,
    run_concept_train,  # type: ignore[arg-type]
    "Train one concept per class label of a dataset.",
)
_command(
    "concept-infer",
    ConceptInferConfig,
    run_concept_infer,  # type: ignore[arg-type]
    "Interpret dataset records against stored concepts.",
)
_command(
    "concept-diversity",
    ConceptDiversityConfig,
    run_concept_diversity,  # type: ignore[arg-type]
    "Pairwise informational diversity of stored concepts.",
)
_command(
    "gen-dataset",
    GenerateDatasetConfig,
    run_generate_dataset,  # type: ignore[arg-type]
    "Generate the synthetic stroke dataset and its segmentation.",
)
