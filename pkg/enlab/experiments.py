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
Command implementations: seeded experiments over the Enlab modules, writing trace
tables and metadata sidecars.
"""


from __future__ import annotations

import itertools

from collections import defaultdict
from logging import getLogger
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .concept import (
    ConceptStore,
    diversity,
    infer,
    perceive,
    readout,
    topologically_stable,
    train_concept,
)
from .config import (
    ConceptDiversityConfig,
    ConceptInferConfig,
    ConceptTrainConfig,
    EntropySweepConfig,
    GenerateDatasetConfig,
    HopfieldConfig,
    IsingConfig,
    McpCensusConfig,
    ReduceConfig,
)
from .config.structures import ReductionOptions
from .dataset import (
    SequenceRecord,
    SyntheticStrokeDataset,
    dump_records,
    dump_segmentation,
    generate_strokes,
    load_records,
    load_segmentation,
)
from .entropy import NATURAL_UNITS, PhysicalConstants
from .exceptions import EnlabValidationError
from .hopfield_ising import (
    HopfieldNet,
    SpinState,
    corrupt,
    energy_floor,
    ferromagnet,
    hebbian_weights,
    metropolis_run,
    overlap,
    recall,
)
from .mcp import (
    McpNeuron,
    conditional_activation,
    entropy_report,
    gibbs_decomposition,
    microstate_census,
)
from .output import Row, write_metadata, write_table
from .reduction import OrderedStructure, Segmentation, composite_reduce, structure_energy
from .util import format_number, rng_stream

logger = getLogger(__name__)

MAXIMUM_TOLERANCE = 1e-12

MCP_CENSUS_COLUMNS = [
    "neuron",
    "n",
    "weights",
    "threshold",
    "omega_act",
    "omega_nonact",
    "p_act",
    "p_act_conditional",
    "h_bits",
    "s_act",
    "s_nonact",
    "e_str",
    "e_unstr",
    "s_total",
]
ENTROPY_SWEEP_COLUMNS = ["row", "weights", "threshold", "p_act", "h_bits", "is_max"]
HOPFIELD_COLUMNS = [
    "trial",
    "pattern",
    "flips",
    "converged",
    "steps",
    "sweeps",
    "initial_energy",
    "final_energy",
    "energy_floor",
    "overlap",
    "recalled",
    "energies",
    "flipped",
]
ISING_COLUMNS = [
    "temperature",
    "run",
    "sweeps",
    "mean_abs_magnetization",
    "acceptance_rate",
    "final_energy",
    "final_state",
    "energies",
    "magnetizations",
]
REDUCE_COLUMNS = [
    "id",
    "class_label",
    "parameter",
    "input_elements",
    "output_nodes",
    "output_links",
    "input_energy",
    "output_energy",
    "labels",
    "monotone",
]
CONCEPT_INFER_COLUMNS = [
    "id",
    "class_label",
    "concept",
    "verdict",
    "diversity",
    "response",
    "winner",
]
CONCEPT_DIVERSITY_COLUMNS = ["concept_a", "concept_b", "diversity"]


def _segmentations(path: Optional[Path]) -> List[Segmentation]:
    return [load_segmentation(path)] if path is not None else []


def _perceive_all(
    records: Sequence[SequenceRecord],
    options: ReductionOptions,
    segmentations: Sequence[Segmentation],
) -> List[OrderedStructure]:
    return [
        perceive(record, segmentations, options.detector, index=i)
        for i, record in enumerate(records, start=1)
    ]


def run_mcp_census(config: McpCensusConfig) -> Path:
    """
    Census, entropy report and Gibbs decomposition of every configured neuron.
    """

    consts = PhysicalConstants.si() if config.si_units else NATURAL_UNITS
    neurons = list(config.neurons)
    rng = rng_stream(config.seed, "mcp-census")
    neurons.extend(
        McpNeuron(
            weights=rng.uniform(-1.0, 1.0, config.random_inputs).tolist(),
            threshold=config.random_threshold,
        )
        for _ in range(config.random_neurons)
    )
    rows: List[Row] = []
    for i, neuron in enumerate(neurons):
        census = microstate_census(neuron)
        report = entropy_report(neuron, consts)
        gibbs = gibbs_decomposition(neuron, config.temperature, consts)
        rows.append(
            {
                "neuron": i,
                "n": neuron.n,
                "weights": neuron.weights,
                "threshold": neuron.threshold,
                "omega_act": census.omega_act,
                "omega_nonact": census.omega_nonact,
                "p_act": census.p_act,
                "p_act_conditional": conditional_activation(neuron).p_act,
                "h_bits": report.h_bits,
                "s_act": report.s_act,
                "s_nonact": report.s_nonact,
                "e_str": gibbs.e_str,
                "e_unstr": gibbs.e_unstr,
                "s_total": gibbs.s_total,
            },
        )
    write_metadata(config.out, "mcp-census", config, {"neurons": len(rows)})
    return write_table(config.out, "mcp-census", MCP_CENSUS_COLUMNS, rows, config.format)


def run_entropy_sweep(config: EntropySweepConfig) -> Path:
    """
    Activation probability and entropy of every neuron with weights on the grid,
    flagging the rows of maximum entropy.
    """

    rows: List[Dict[str, Any]] = []
    for k, weights in enumerate(itertools.product(config.grid, repeat=config.n_inputs)):
        neuron = McpNeuron(weights=list(weights), threshold=config.threshold)
        report = entropy_report(neuron)
        rows.append(
            {
                "row": k,
                "weights": neuron.weights,
                "threshold": neuron.threshold,
                "p_act": report.p_act,
                "h_bits": report.h_bits,
            },
        )
    h_max = max(row["h_bits"] for row in rows)
    for row in rows:
        row["is_max"] = h_max - row["h_bits"] <= MAXIMUM_TOLERANCE
    logger.info(
        "Entropy sweep: %i configurations, maximum %r bits at %i",
        len(rows),
        h_max,
        sum(row["is_max"] for row in rows),
    )
    write_metadata(config.out, "entropy-sweep", config, {"h_max": h_max})
    return write_table(config.out, "entropy-sweep", ENTROPY_SWEEP_COLUMNS, rows, config.format)


def run_hopfield(config: HopfieldConfig) -> Path:
    """
    Store patterns, then recall each of them in turn from corrupted copies.
    """

    pattern_rng = rng_stream(config.seed, "hopfield-patterns")
    patterns = [SpinState.of(p) for p in config.patterns]
    patterns.extend(
        SpinState.of(pattern_rng.choice([-1, 1], size=config.n).tolist())
        for _ in range(config.random_patterns)
    )
    net = (
        HopfieldNet(weights=config.weights, thresholds=[0.0] * config.n)
        if config.weights is not None
        else hebbian_weights(patterns, config.n)
    )
    floor = energy_floor(net)
    corrupt_rng = rng_stream(config.seed, "hopfield-corrupt")
    rows: List[Row] = []
    for trial in range(config.trials):
        k = trial % len(patterns)
        initial = corrupt(patterns[k], config.flips, corrupt_rng)
        trace = recall(
            net,
            initial,
            config.schedule,
            config.max_sweeps,
            seed=config.seed,
            stream=f"hopfield-{trial}",
        )
        m = overlap(trace.final, patterns[k])
        rows.append(
            {
                "trial": trial,
                "pattern": k,
                "flips": config.flips,
                "converged": trace.converged,
                "steps": trace.steps,
                "sweeps": trace.sweeps,
                "initial_energy": trace.energies[0],
                "final_energy": trace.energies[-1],
                "energy_floor": floor,
                "overlap": m,
                "recalled": m == 1.0,
                "energies": trace.energies,
                "flipped": trace.flipped,
            },
        )
    recalled = sum(1 for row in rows if row["recalled"])
    logger.info("Hopfield: %i of %i trials recalled their pattern", recalled, len(rows))
    write_metadata(
        config.out,
        "hopfield",
        config,
        {"patterns": [p.spins for p in patterns], "recalled": recalled},
    )
    return write_table(config.out, "hopfield", HOPFIELD_COLUMNS, rows, config.format)


def run_ising(config: IsingConfig) -> Path:
    """
    Metropolis runs of a ferromagnet at every configured temperature.
    """

    rows: List[Row] = []
    for temperature in config.temperatures:
        model = ferromagnet(config.n, config.coupling, config.field, temperature)
        for run in range(config.runs):
            stream = f"ising-{format_number(temperature)}-{run}"
            if config.initial == "up":
                initial = SpinState.of([1] * config.n)
            else:
                initial_rng = rng_stream(config.seed, f"{stream}-initial")
                initial = SpinState.of(initial_rng.choice([-1, 1], size=config.n).tolist())
            result = metropolis_run(model, initial, config.sweeps, config.seed, stream=stream)
            rows.append(
                {
                    "temperature": temperature,
                    "run": run,
                    "sweeps": config.sweeps,
                    "mean_abs_magnetization": result.mean_abs_magnetization,
                    "acceptance_rate": result.acceptance_rate,
                    "final_energy": result.energies[-1],
                    "final_state": result.final_state.spins,
                    "energies": result.energies if config.record_series else None,
                    "magnetizations": result.magnetizations if config.record_series else None,
                },
            )
            logger.debug(
                "Ising T=%r run %i: <|m|> = %.4f",
                temperature,
                run,
                result.mean_abs_magnetization,
            )
    write_metadata(config.out, "ising", config)
    return write_table(config.out, "ising", ISING_COLUMNS, rows, config.format)


def run_reduce(config: ReduceConfig) -> Path:
    """
    Composite reduction of every dataset structure, with the energy before and after.
    """

    records = load_records(config.dataset)
    segmentations = _segmentations(config.segmentation)
    seg = segmentations[0] if segmentations else None
    rows: List[Row] = []
    for record, structure in zip(records, _perceive_all(records, config, segmentations)):
        reduced = composite_reduce(
            structure,
            config.parameter,
            seg,
            gamma_sig=config.gamma_sig,
            zero_tol=config.zero_tol,
            table=config.scale_energies,
        )
        before = structure_energy(structure, config.scale_energies)
        after = structure_energy(reduced, config.scale_energies)
        rows.append(
            {
                "id": record.id,
                "class_label": record.class_label,
                "parameter": reduced.parameter,
                "input_elements": len(structure.elements),
                "output_nodes": len(reduced.nodes),
                "output_links": len(reduced.links),
                "input_energy": before.total,
                "output_energy": after.total,
                "labels": " ".join(str(link.label) for link in reduced.links),
                "monotone": after.total <= before.total,
            },
        )
    write_metadata(config.out, "reduce", config, {"structures": len(rows)})
    return write_table(config.out, "reduce", REDUCE_COLUMNS, rows, config.format)


def run_concept_train(config: ConceptTrainConfig) -> Path:
    """
    Train one concept per class label and write the concept store.
    """

    records = load_records(config.dataset)
    segmentations = _segmentations(config.segmentation)
    seg = segmentations[0] if segmentations else None
    classes: Dict[str, List[OrderedStructure]] = defaultdict(list)
    for i, (record, structure) in enumerate(
        zip(records, _perceive_all(records, config, segmentations)),
        start=1,
    ):
        if record.class_label is None:
            raise EnlabValidationError(f"Record {i} ({record.id!r}) has no class label")
        classes[record.class_label].append(structure)

    store = ConceptStore(segmentation=seg, detector=config.detector, gamma_sig=config.gamma_sig)
    for label in sorted(classes):
        store = store.with_concept(
            train_concept(
                classes[label],
                label,
                seg,
                gamma_sig=config.gamma_sig,
                zero_tol=config.zero_tol,
            ),
        )
    config.out.mkdir(parents=True, exist_ok=True)
    path = config.out / "concepts.json"
    store.save(path)
    write_metadata(
        config.out,
        "concept-train",
        config,
        {
            "concepts": {
                con.class_label: {
                    "links": len(con.links),
                    "nodes": len(con.nodes),
                    "readout": readout(con).value if con.nodes else None,
                    "samples": con.sample_count,
                    "topologically_stable": topologically_stable(con),
                }
                for con in store.concepts
            },
        },
    )
    logger.info("Trained %i concepts into '%s'", len(store.concepts), path)
    return path


def run_concept_infer(config: ConceptInferConfig) -> Path:
    """
    Interpret every dataset record against the stored concepts.
    """

    store = ConceptStore.load(config.store)
    records = load_records(config.dataset)
    segmentations = [store.segmentation] if store.segmentation is not None else []
    rows: List[Row] = []
    winners = 0
    for i, record in enumerate(records, start=1):
        structure = perceive(record, segmentations, store.detector, index=i)
        inference = infer(structure, store.concepts, store.segmentation, config.zero_tol)
        winners += inference.winner is not None and inference.winner == record.class_label
        for result in inference.results:
            rows.append(
                {
                    "id": record.id,
                    "class_label": record.class_label,
                    "concept": result.class_label,
                    "verdict": result.verdict,
                    "diversity": result.diversity,
                    "response": inference.responses[result.class_label],
                    "winner": inference.winner,
                },
            )
    logger.info("Inference: %i of %i records won by their own class", winners, len(records))
    write_metadata(
        config.out,
        "concept-infer",
        config,
        {"records": len(records), "winners_correct": winners},
    )
    return write_table(config.out, "concept-infer", CONCEPT_INFER_COLUMNS, rows, config.format)


def run_concept_diversity(config: ConceptDiversityConfig) -> Path:
    """
    Pairwise informational diversity of stored concepts.
    """

    store = ConceptStore.load(config.store)
    labels = config.concepts or store.labels
    concepts = [store.concept(label) for label in labels]
    rows: List[Row] = [
        {"concept_a": a.class_label, "concept_b": b.class_label, "diversity": diversity(a, b)}
        for a, b in itertools.combinations(concepts, 2)
    ]
    write_metadata(config.out, "concept-diversity", config)
    return write_table(
        config.out,
        "concept-diversity",
        CONCEPT_DIVERSITY_COLUMNS,
        rows,
        config.format,
    )


def run_generate_dataset(config: GenerateDatasetConfig) -> Path:
    """
    Generate the synthetic stroke dataset and its segmentation sidecar.
    """

    dataset = SyntheticStrokeDataset(
        classes=config.classes,
        noise=config.noise,
        samples_per_class=config.samples_per_class,
        seed=config.seed,
    )
    generated = generate_strokes(dataset)
    config.out.mkdir(parents=True, exist_ok=True)
    path = config.out / "dataset.jsonl"
    dump_records(generated.records, path)
    dump_segmentation(dataset.segmentation, config.out / "segmentation.json")
    write_metadata(
        config.out,
        "gen-dataset",
        config,
        {
            "label_preserving": generated.label_preserving,
            "margin": generated.margin,
            "records": len(generated.records),
        },
    )
    return path
