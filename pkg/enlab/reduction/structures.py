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
Ordered structures, their reduced critical-point chains, and statistical significance.
"""


from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from pydantic import PositiveFloat, confloat, root_validator

from ..exceptions import EnlabValidationError
from ..types import EnlabModel
from .scales import GradientSign, ScaleLevel

LabelKey = Tuple[int, int]


class Param(EnlabModel):
    """
    Parameter value together with the measurement scale it is expressed on.
    """

    value: float
    scale: ScaleLevel


class StructElement(EnlabModel):
    """
    Element of an ordered structure: a set of named parameters.
    """

    id: str

    params: Dict[str, Param]
    """
    Parameters of the element, by name.
    """

    origins: Dict[str, float] = {}
    """
    Origin of each parameter expressed as a difference on the interval scale.
    The absolute value of such a parameter is `origin + value`.
    """

    def value(self, name: str) -> float:
        try:
            return self.params[name].value
        except KeyError:
            raise EnlabValidationError(
                f"Element {self.id!r} has no parameter {name!r}",
            ) from None

    def absolute(self, name: str) -> float:
        return self.origins.get(name, 0.0) + self.value(name)


class OrderedStructure(EnlabModel):
    """
    Sequentially ordered structure of elements sharing one parameter set.
    """

    elements: List[StructElement] = []

    @root_validator(skip_on_failure=True)
    def validate_structure(cls, values: Dict[str, List[StructElement]]) -> Dict[str, List]:
        elements = values["elements"]
        if elements:
            names = set(elements[0].params)
            for element in elements[1:]:
                if set(element.params) != names:
                    raise EnlabValidationError(
                        f"Element {element.id!r} does not carry the parameters {sorted(names)}",
                    )
            for name, param in elements[0].params.items():
                if any(element.params[name].scale is not param.scale for element in elements):
                    raise EnlabValidationError(f"Parameter {name!r} must use one scale throughout")
        ids = [element.id for element in elements]
        if len(set(ids)) != len(ids):
            raise EnlabValidationError("Element identifiers must be unique")
        return values

    @classmethod
    def from_values(
        cls,
        values: Mapping[str, Sequence[float]],
        scale: ScaleLevel = ScaleLevel.ratio,
    ) -> OrderedStructure:
        """
        Build a structure from per-parameter value sequences of equal length.
        Elements are named `s1` to `sn`.
        """

        lengths = {len(seq) for seq in values.values()}
        if len(lengths) > 1:
            raise EnlabValidationError("All parameter sequences must have the same length")
        n = lengths.pop() if lengths else 0
        return cls(
            elements=[
                StructElement(
                    id=f"s{i + 1}",
                    params={
                        name: Param(value=float(seq[i]), scale=scale)
                        for name, seq in values.items()
                    },
                )
                for i in range(n)
            ],
        )

    @property
    def parameters(self) -> List[str]:
        return sorted(self.elements[0].params) if self.elements else []

    def values(self, name: str) -> List[float]:
        return [element.value(name) for element in self.elements]


class RelationLabel(EnlabModel):
    """
    Qualitative label of a run: the gradient sign shared by its steps and the
    segment its values fall in.
    """

    sign: GradientSign
    segment: int = 0

    @property
    def key(self) -> LabelKey:
        return (self.sign, self.segment)

    def __str__(self) -> str:
        return f"{self.sign:+d}/{self.segment}" if self.sign else f"0/{self.segment}"


class SignificanceStats(EnlabModel):
    """
    Statistical significance of a structural component: the weight coefficient
    `w = n_true / n_total` of the samples it was observed in.
    """

    n_true: int
    n_total: int

    gamma_sig: confloat(gt=0, le=1) = 0.5  # type: ignore[valid-type]
    """
    Pruning threshold: components with `w < gamma_sig` are removed.
    """

    gamma_exp: PositiveFloat = 1.0
    """
    Exponent of the microstate count reduction `Omega = Omega_0 w^gamma_exp`.
    """

    @root_validator(skip_on_failure=True)
    def validate_counts(cls, values: Dict[str, int]) -> Dict[str, int]:
        if values["n_total"] < 1:
            raise EnlabValidationError("n_total must be at least 1")
        if not 0 <= values["n_true"] <= values["n_total"]:
            raise EnlabValidationError("n_true must lie between 0 and n_total")
        return values

    @property
    def w(self) -> Fraction:
        return Fraction(self.n_true, self.n_total)

    @property
    def dw_dn_true(self) -> Fraction:
        """
        Change of `w` per additional true observation.
        """

        return Fraction(1, self.n_total)

    @property
    def significant(self) -> bool:
        return self.w >= threshold_fraction(self.gamma_sig)


def component_weight(stats: Optional[SignificanceStats]) -> Fraction:
    """
    Weight of a component, 1 when no statistics are attached.
    """

    return stats.w if stats is not None else Fraction(1)


class CriticalPoint(StructElement):
    """
    Node of a reduced chain: an endpoint of a run, with its qualitative parameter.
    """

    source_index: int
    """
    Position of the element in the structure it was reduced from.
    """

    stats: Optional[SignificanceStats] = None


class ChainLink(EnlabModel):
    """
    Qualitative relation replacing a run between two critical points.
    """

    source: str
    target: str
    label: RelationLabel
    parameter: str
    scale: ScaleLevel = ScaleLevel.ordinal
    stats: Optional[SignificanceStats] = None

    @property
    def key(self) -> str:
        return link_key(self.source, self.target)


def link_key(source: str, target: str) -> str:
    return f"{source}->{target}"


def node_label(element: StructElement, parameter: str) -> int:
    """
    Matching label of a reduced node: its qualitative parameter value.
    """

    return int(round(element.value(parameter)))


class ReducedStructure(EnlabModel):
    """
    Chain of critical points joined by qualitatively labelled links, for one parameter.

    Pruning may split the chain, so the links form one or more simple chains.
    """

    parameter: str
    nodes: List[CriticalPoint] = []
    links: List[ChainLink] = []

    fully_pruned: bool = False
    """
    Set when structural pruning removed every component.
    """

    @root_validator(skip_on_failure=True)
    def validate_chain(cls, values: Dict[str, object]) -> Dict[str, object]:
        parameter: str = values["parameter"]  # type: ignore[assignment]
        nodes: List[CriticalPoint] = values["nodes"]  # type: ignore[assignment]
        links: List[ChainLink] = values["links"]  # type: ignore[assignment]
        ids = [node.id for node in nodes]
        if len(set(ids)) != len(ids):
            raise EnlabValidationError("Node identifiers must be unique")
        known: Set[str] = set(ids)
        outgoing: Dict[str, ChainLink] = {}
        incoming: Dict[str, ChainLink] = {}
        for link in links:
            if link.parameter != parameter:
                raise EnlabValidationError(
                    f"Link {link.key} belongs to parameter {link.parameter!r}, not {parameter!r}",
                )
            if link.source not in known or link.target not in known:
                raise EnlabValidationError(f"Link {link.key} references an unknown node")
            if link.source in outgoing or link.target in incoming:
                raise EnlabValidationError(f"Link {link.key} breaks the chain topology")
            outgoing[link.source] = link
            incoming[link.target] = link
        for node_id, link in incoming.items():
            following = outgoing.get(node_id)
            if following is not None and following.label == link.label:
                raise EnlabValidationError(
                    f"Adjacent links around node {node_id!r} share the label {link.label}",
                )
        return values

    def label_sequence(self) -> List[LabelKey]:
        return [link.label.key for link in self.links]

    def node_labels(self) -> List[int]:
        return [node_label(node, self.parameter) for node in self.nodes]

    def to_digraph(self) -> nx.DiGraph:
        """
        Directed graph view, with a `label` attribute on every node and link.
        """

        graph = nx.DiGraph()
        for node in self.nodes:
            graph.add_node(node.id, label=node_label(node, self.parameter))
        for link in self.links:
            graph.add_edge(link.source, link.target, label=link.label.key)
        return graph


def threshold_fraction(gamma: float) -> Fraction:
    """
    Exact rational form of a decimal threshold, so that `w = 4/5` meets `gamma = 0.8`.
    """

    return Fraction(str(gamma))
