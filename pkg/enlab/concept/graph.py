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
Concept graphs: the weighted, reduced internal model of a class, built from the
reductions of its training samples.
"""


from __future__ import annotations

from collections import Counter
from logging import getLogger
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from pydantic import root_validator

from ..exceptions import EnlabDomainError, EnlabValidationError
from ..reduction import (
    OrderedStructure,
    RelationLabel,
    Segmentation,
    SignificanceStats,
    composite_reduce,
    structural_weight,
)
from ..reduction.operators import DEFAULT_GAMMA_SIG
from ..reduction.scales import DEFAULT_ZERO_TOLERANCE
from ..reduction.structures import LabelKey, threshold_fraction
from ..types import BaseEnum, EnlabModel

logger = getLogger(__name__)

NodeKey = Tuple[int, int]


class ConceptNode(EnlabModel):
    """
    Critical point of a concept, identified by its chain position and label.
    """

    id: str
    position: int
    label: int
    stats: SignificanceStats


class ConceptLink(EnlabModel):
    """
    Labelled relation between two concept nodes.
    """

    source: str
    target: str
    label: RelationLabel
    stats: SignificanceStats


class ConceptGraph(EnlabModel):
    """
    Concept of a class: a labelled chain, possibly with branches, whose components
    carry the weight coefficient of the training samples they occur in.
    """

    class_label: str
    parameter: str
    nodes: List[ConceptNode]
    links: List[ConceptLink]

    sample_count: int
    """
    Number of training samples the concept was built from.
    """

    gamma_sig: float = DEFAULT_GAMMA_SIG

    @root_validator(skip_on_failure=True)
    def validate_graph(cls, values: Dict[str, object]) -> Dict[str, object]:
        nodes: List[ConceptNode] = values["nodes"]  # type: ignore[assignment]
        links: List[ConceptLink] = values["links"]  # type: ignore[assignment]
        sample_count: int = values["sample_count"]  # type: ignore[assignment]
        if sample_count < 1:
            raise EnlabValidationError("A concept needs at least one sample")
        ids = {node.id for node in nodes}
        if len(ids) != len(nodes):
            raise EnlabValidationError("Concept node identifiers must be unique")
        for link in links:
            if link.source not in ids or link.target not in ids:
                raise EnlabValidationError(
                    f"Concept link {link.source}->{link.target} references an unknown node",
                )
        for component in [*nodes, *links]:
            if component.stats.n_total != sample_count:
                raise EnlabValidationError("Component statistics must count every sample")
        return values

    def to_digraph(self) -> nx.DiGraph:
        """
        Directed graph view, with a `label` attribute on every node and link.
        """

        graph = nx.DiGraph()
        for node in self.nodes:
            graph.add_node(node.id, label=node.label)
        for link in self.links:
            graph.add_edge(link.source, link.target, label=link.label.key)
        return graph


class ReadoutKind(BaseEnum):
    constant = "constant"


class Readout(EnlabModel):
    """
    Response of a concept.
    """

    value: float
    kind: ReadoutKind = ReadoutKind.constant


def _node_id(key: NodeKey) -> str:
    return f"{key[0]}:{key[1]}"


def train_concept(
    samples: Sequence[OrderedStructure],
    class_label: str,
    seg: Optional[Segmentation] = None,
    gamma_sig: float = DEFAULT_GAMMA_SIG,
    parameter: Optional[str] = None,
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> ConceptGraph:
    """
    Build the concept of a class from its training samples.

    Every sample is reduced with `composite_reduce`. The reduced chains are aligned by
    position from the start: a node is identified by its position and label, and a
    link by its two nodes and its label, so a label mismatch opens a branch with its
    own counter. Each component's weight is the fraction of samples it occurs in, and
    components with `w < gamma_sig` are pruned.

    Args:
        samples (Sequence[OrderedStructure]): Training samples sharing one parameter set.
        class_label (str): Class label.
        seg (Optional[Segmentation], optional): Segmentation of the reduction parameter.
        gamma_sig (float, optional): Significance threshold. Defaults to 0.5.
        parameter (Optional[str], optional): Reduction parameter. Defaults to the
            segmented parameter, or else the first parameter by name.
        zero_tol (float, optional): Tolerance below which a difference counts as zero.

    Returns:
        Concept graph
    """

    if not samples:
        raise EnlabValidationError(f"No training samples for class {class_label!r}")
    names = samples[0].parameters
    for i, sample in enumerate(samples):
        if sample.parameters != names:
            raise EnlabValidationError(
                f"Sample {i} of class {class_label!r} has parameters {sample.parameters}, "
                f"expected {names}",
            )
    if parameter is None:
        parameter = seg.parameter if seg is not None and seg.parameter in names else names[0]

    node_counts: Counter = Counter()
    link_counts: Counter = Counter()
    for sample in samples:
        reduced = composite_reduce(sample, parameter, seg, gamma_sig=gamma_sig, zero_tol=zero_tol)
        keys = list(enumerate(reduced.node_labels()))
        node_counts.update(keys)
        position = {node.id: k for k, node in enumerate(reduced.nodes)}
        link_counts.update(
            (keys[position[link.source]], keys[position[link.target]], link.label.key)
            for link in reduced.links
        )

    n = len(samples)
    threshold = threshold_fraction(gamma_sig)
    kept: Dict[NodeKey, ConceptNode] = {}
    for key in sorted(node_counts):
        stats = structural_weight(node_counts[key], n, gamma_sig)
        if stats.w >= threshold:
            kept[key] = ConceptNode(id=_node_id(key), position=key[0], label=key[1], stats=stats)
    links: List[ConceptLink] = []
    for source, target, label in sorted(link_counts):
        stats = structural_weight(link_counts[(source, target, label)], n, gamma_sig)
        if stats.w >= threshold and source in kept and target in kept:
            links.append(
                ConceptLink(
                    source=_node_id(source),
                    target=_node_id(target),
                    label=_relation_label(label),
                    stats=stats,
                ),
            )

    logger.info(
        "Concept %r: %i nodes and %i links kept from %i samples",
        class_label,
        len(kept),
        len(links),
        n,
    )
    return ConceptGraph(
        class_label=class_label,
        parameter=parameter,
        nodes=list(kept.values()),
        links=links,
        sample_count=n,
        gamma_sig=gamma_sig,
    )


def _relation_label(key: LabelKey) -> RelationLabel:
    return RelationLabel(sign=key[0], segment=key[1])


def readout(con: ConceptGraph) -> Readout:
    """
    Constant readout of a concept: the number of its structural elements (nodes).

    Raises:
        EnlabDomainError: If the concept has no nodes.
    """

    if not con.nodes:
        raise EnlabDomainError(f"Concept {con.class_label!r} is empty")
    return Readout(value=float(len(con.nodes)))


def topologically_stable(con: ConceptGraph) -> bool:
    """
    Whether the concept's surviving components still form one connected structure.
    """

    graph = con.to_digraph()
    return graph.number_of_nodes() > 0 and nx.is_weakly_connected(graph)
