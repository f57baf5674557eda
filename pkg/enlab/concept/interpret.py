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
Interpretation of inputs against concepts: chain matching, informational diversity,
responses and winner-take-all competition.
"""


from __future__ import annotations

from logging import getLogger
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from networkx.algorithms.isomorphism import DiGraphMatcher
from pydantic import root_validator

from ..exceptions import EnlabCapacityError, EnlabValidationError
from ..reduction import OrderedStructure, ReducedStructure, Segmentation, composite_reduce
from ..reduction.scales import DEFAULT_ZERO_TOLERANCE
from ..types import BaseEnum, EnlabModel
from .graph import ConceptGraph, readout

logger = getLogger(__name__)

MAX_EXACT_GED_NODES = 12

Graph = Union[ConceptGraph, ReducedStructure]


class Verdict(BaseEnum):
    """
    Outcome of interpreting an input against a concept.
    """

    recognized = "recognized"
    associative_input = "associative-input"
    associative_concept = "associative-concept"
    unrecognized = "unrecognized"


class InterpretationResult(EnlabModel):
    """
    Verdict of an interpretation, with the node correspondence when one was found
    and the edit distance between the input and the concept.
    """

    class_label: str
    verdict: Verdict

    mapping: Optional[Dict[str, str]] = None
    """
    Correspondence from concept node identifiers to input node identifiers.
    """

    diversity: int

    @root_validator(skip_on_failure=True)
    def validate_result(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        if values["verdict"] is Verdict.recognized and values["diversity"] != 0:
            raise EnlabValidationError("A recognised input must have zero diversity")
        return values


class Inference(EnlabModel):
    """
    Interpretation of one input against every concept, and the competition winner.
    """

    results: List[InterpretationResult]
    responses: Dict[str, Optional[float]]
    winner: Optional[str] = None


def _same_label(a: Dict[str, Any], b: Dict[str, Any]) -> bool:
    return a.get("label") == b.get("label")


def _matcher(g1: nx.DiGraph, g2: nx.DiGraph) -> DiGraphMatcher:
    return DiGraphMatcher(g1, g2, node_match=_same_label, edge_match=_same_label)


def _alignment_cost(a: nx.DiGraph, b: nx.DiGraph) -> int:
    # Cost of the edit path pairing nodes in insertion order: an upper bound on the distance.
    pairing = dict(zip(a.nodes, b.nodes))
    cost = abs(a.number_of_nodes() - b.number_of_nodes())
    cost += sum(a.nodes[u]["label"] != b.nodes[v]["label"] for u, v in pairing.items())
    covered = set()
    for u, v, data in a.edges(data=True):
        if u in pairing and v in pairing and b.has_edge(pairing[u], pairing[v]):
            cost += data["label"] != b.edges[pairing[u], pairing[v]]["label"]
            covered.add((pairing[u], pairing[v]))
        else:
            cost += 1
    cost += sum(1 for edge in b.edges if edge not in covered)
    return int(cost)


def _as_digraph(g: Graph) -> nx.DiGraph:
    graph = g.to_digraph()
    if graph.number_of_nodes() == 0:
        raise EnlabValidationError("Diversity is only defined for non-empty graphs")
    if graph.number_of_nodes() > MAX_EXACT_GED_NODES:
        raise EnlabCapacityError(
            f"Exact edit distance supports at most {MAX_EXACT_GED_NODES} nodes "
            f"(graph has {graph.number_of_nodes()})",
        )
    return graph


def diversity(g1: Graph, g2: Graph) -> int:
    """
    Informational diversity: the exact graph edit distance between two labelled graphs,
    where inserting, deleting or relabelling a node or a link each costs 1.

    The branch-and-bound search starts from the cost of the positional alignment.

    Raises:
        EnlabValidationError: If either graph is empty.
        EnlabCapacityError: If either graph has more than 12 nodes.
    """

    a = _as_digraph(g1)
    b = _as_digraph(g2)
    bound = _alignment_cost(a, b)
    if bound == 0:
        return 0
    # None when the search finds no edit path within the bound.
    distance = nx.graph_edit_distance(
        a,
        b,
        node_match=_same_label,
        edge_match=_same_label,
        upper_bound=bound,
    )
    return bound if distance is None else int(distance)


def _graph_size(graph: nx.DiGraph) -> int:
    return graph.number_of_nodes() + graph.number_of_edges()


def interpret(
    structure: Union[OrderedStructure, ReducedStructure],
    con: ConceptGraph,
    seg: Optional[Segmentation] = None,
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> InterpretationResult:
    """
    Reduce an input and match its chain against a concept.

    * recognized: the chains are isomorphic, labels included
    * associative-input: the concept is a contiguous sub-chain of the input
    * associative-concept: the input is a contiguous sub-chain of the concept
    * unrecognized: otherwise

    Args:
        structure (Union[OrderedStructure, ReducedStructure]): Input structure.
        con (ConceptGraph): Concept.
        seg (Optional[Segmentation], optional): Segmentation of the reduction parameter.
        zero_tol (float, optional): Tolerance below which a difference counts as zero.

    Returns:
        Interpretation result
    """

    if isinstance(structure, OrderedStructure) and con.parameter not in structure.parameters:
        raise EnlabValidationError(
            f"Input has no parameter {con.parameter!r} required by concept {con.class_label!r}",
        )
    if isinstance(structure, ReducedStructure) and structure.parameter != con.parameter:
        raise EnlabValidationError(
            f"Input is reduced along {structure.parameter!r}, concept {con.class_label!r} "
            f"along {con.parameter!r}",
        )
    reduced = composite_reduce(
        structure,
        con.parameter,
        seg,
        gamma_sig=con.gamma_sig,
        zero_tol=zero_tol,
    )
    g_in = reduced.to_digraph()
    g_con = con.to_digraph()

    if g_con.number_of_nodes() == 0:
        logger.debug("Concept %r is empty", con.class_label)
        return InterpretationResult(
            class_label=con.class_label,
            verdict=Verdict.unrecognized,
            diversity=_graph_size(g_in),
        )

    verdict = Verdict.unrecognized
    mapping: Optional[Dict[str, str]] = None
    forward = _matcher(g_con, g_in)
    backward = _matcher(g_in, g_con)
    if forward.is_isomorphic():
        verdict = Verdict.recognized
        mapping = dict(forward.mapping)
    elif backward.subgraph_is_isomorphic():
        verdict = Verdict.associative_input
        mapping = {c: i for i, c in backward.mapping.items()}
    elif forward.subgraph_is_isomorphic():
        verdict = Verdict.associative_concept
        mapping = dict(forward.mapping)

    result = InterpretationResult(
        class_label=con.class_label,
        verdict=verdict,
        mapping=mapping,
        diversity=0 if verdict is Verdict.recognized else diversity(reduced, con),
    )
    logger.debug(
        "Input vs concept %r: %s (diversity %i)",
        con.class_label,
        verdict.to_name_str(),
        result.diversity,
    )
    return result


def response(result: InterpretationResult, con: ConceptGraph) -> Optional[float]:
    """
    Response of a concept to an interpreted input: its readout less the diversity,
    or `None` when the input was not recognised at all.
    """

    if result.verdict is Verdict.unrecognized:
        return None
    return readout(con).value - result.diversity


def wta(responses: Sequence[Tuple[str, float]]) -> str:
    """
    Winner-take-all: the identifier with the largest response, the lowest identifier
    among ties.

    Raises:
        EnlabValidationError: If there are no responses.
    """

    if not responses:
        raise EnlabValidationError("Winner-take-all needs at least one response")
    return min(responses, key=lambda item: (-item[1], item[0]))[0]


def infer(
    structure: Union[OrderedStructure, ReducedStructure],
    concepts: Sequence[ConceptGraph],
    seg: Optional[Segmentation] = None,
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> Inference:
    """
    Interpret an input against every concept and let the responding concepts compete.

    Returns:
        Per-concept results and responses, and the winning class label
        (`None` if no concept responded)
    """

    results = [interpret(structure, con, seg, zero_tol) for con in concepts]
    responses = {
        con.class_label: response(result, con) for result, con in zip(results, concepts)
    }
    candidates = [(label, value) for label, value in responses.items() if value is not None]
    return Inference(
        results=results,
        responses=responses,
        winner=wta(candidates) if candidates else None,
    )
