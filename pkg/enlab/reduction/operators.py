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
Reduction operators.

* parametric reduction (`param_reduce`): demotes parameters to weaker measurement scales
* structural-parametric reduction (`sp_reduce`): compresses runs of equal qualitative
  behaviour into their two endpoints and one labelled link
* structural reduction (`structural_prune`): removes statistically insignificant components

`composite_reduce` applies all three in turn and checks that the structure energy
never increases.
"""


from __future__ import annotations

from fractions import Fraction
from logging import getLogger
from typing import Dict, Iterable, List, Mapping, Optional, Union

from ..exceptions import (
    EnlabDomainError,
    EnlabInvariantBreachError,
    EnlabPreconditionError,
    EnlabValidationError,
)
from ..types import EnlabModel
from .ledger import LEDGER_TOLERANCE, EnergyLedger, Structure, structure_energy
from .scales import (
    DEFAULT_SCALE_ENERGIES,
    DEFAULT_ZERO_TOLERANCE,
    GradientSign,
    ScaleEnergyTable,
    ScaleLevel,
    Segmentation,
    compare,
    gradient_sign,
    segment_index,
    weakest,
)
from .structures import (
    ChainLink,
    CriticalPoint,
    OrderedStructure,
    Param,
    ReducedStructure,
    RelationLabel,
    SignificanceStats,
    StructElement,
    component_weight,
    threshold_fraction,
)

logger = getLogger(__name__)

DEFAULT_GAMMA_SIG = 0.5

_Element = Union[StructElement, CriticalPoint]


class ChainWeights(EnlabModel):
    """
    Significance statistics for the components of a reduced chain, keyed by
    node identifier and by link key (`source->target`).
    """

    nodes: Dict[str, SignificanceStats] = {}
    links: Dict[str, SignificanceStats] = {}


def _check_parameter(s: OrderedStructure, parameter: str) -> None:
    if s.elements and parameter not in s.elements[0].params:
        raise EnlabValidationError(f"Structure has no parameter {parameter!r}")


def relation_vector(
    s: OrderedStructure,
    parameter: str,
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> List[GradientSign]:
    """
    Gradient signs between consecutive values of a parameter.

    Args:
        s (OrderedStructure): Structure with at least 2 elements.
        parameter (str): Parameter name.
        zero_tol (float, optional): Tolerance below which a difference counts as zero.

    Returns:
        `n - 1` gradient signs
    """

    if len(s.elements) < 2:  # noqa: PLR2004
        raise EnlabValidationError("A relation vector needs at least 2 elements")
    _check_parameter(s, parameter)
    values = [element.absolute(parameter) for element in s.elements]
    return [gradient_sign(compare(a, b), zero_tol) for a, b in zip(values, values[1:])]


def sp_reduce(
    s: Union[OrderedStructure, ReducedStructure],
    parameter: str,
    seg: Optional[Segmentation] = None,
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> ReducedStructure:
    """
    Structural-parametric reduction along one parameter.

    Each step between consecutive elements is labelled with its gradient sign and the
    segment the step ends in. A run is a maximal sequence of steps with the same label;
    it is replaced by its two endpoint elements (critical points) and one link carrying
    the label. Consecutive runs share their common endpoint.

    Critical points keep only the reduction parameter, demoted to the ordinal scale and
    valued by the segment index of the element (0 without segmentation). Segmentation
    applies to quantitative (ratio or interval) parameters only.

    An already reduced structure is returned unchanged.

    Args:
        s (Union[OrderedStructure, ReducedStructure]): Structure to reduce.
        parameter (str): Reduction parameter.
        seg (Optional[Segmentation], optional): Segmentation of the reduction parameter.
        zero_tol (float, optional): Tolerance below which a difference counts as zero.

    Returns:
        Reduced chain
    """

    if isinstance(s, ReducedStructure):
        if s.parameter != parameter:
            raise EnlabValidationError(
                f"Structure is reduced along {s.parameter!r}, not {parameter!r}",
            )
        return s
    if len(s.elements) < 2:  # noqa: PLR2004
        raise EnlabValidationError("Structural-parametric reduction needs at least 2 elements")
    _check_parameter(s, parameter)
    if seg is not None and seg.parameter != parameter:
        raise EnlabValidationError(
            f"Segmentation applies to {seg.parameter!r}, not {parameter!r}",
        )

    elements = s.elements
    scale = elements[0].params[parameter].scale
    if seg is not None and scale in (ScaleLevel.ratio, ScaleLevel.interval):
        segments = [segment_index(element.absolute(parameter), seg) for element in elements]
    else:
        segments = [0] * len(elements)
    signs = relation_vector(s, parameter, zero_tol)
    labels = [RelationLabel(sign=sign, segment=segments[i + 1]) for i, sign in enumerate(signs)]

    critical = [0]
    critical.extend(i for i in range(1, len(labels)) if labels[i] != labels[i - 1])
    critical.append(len(elements) - 1)

    node_scale = weakest(scale, ScaleLevel.ordinal)
    link_scale = weakest(scale.link_scale(), ScaleLevel.ordinal)
    nodes = [
        CriticalPoint(
            id=elements[i].id,
            params={
                parameter: Param(
                    value=1.0 if node_scale is ScaleLevel.nominal else float(segments[i]),
                    scale=node_scale,
                ),
            },
            source_index=i,
        )
        for i in critical
    ]
    links = [
        ChainLink(
            source=elements[a].id,
            target=elements[b].id,
            label=labels[a],
            parameter=parameter,
            scale=link_scale,
        )
        for a, b in zip(critical, critical[1:])
    ]
    logger.debug(
        "Reduced %i elements to %i critical points along %r",
        len(elements),
        len(nodes),
        parameter,
    )
    return ReducedStructure(parameter=parameter, nodes=nodes, links=links)


def sp_reduce_all(
    s: OrderedStructure,
    segmentations: Iterable[Segmentation] = (),
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> Dict[str, ReducedStructure]:
    """
    Structural-parametric reduction along every parameter of a structure.

    Args:
        s (OrderedStructure): Structure to reduce.
        segmentations (Iterable[Segmentation], optional): Segmentations, at most one per parameter.
        zero_tol (float, optional): Tolerance below which a difference counts as zero.

    Returns:
        Reduced chain per parameter name
    """

    segs = _segmentations_by_parameter(segmentations)
    return {name: sp_reduce(s, name, segs.get(name), zero_tol) for name in s.parameters}


def _segmentations_by_parameter(segmentations: Iterable[Segmentation]) -> Dict[str, Segmentation]:
    segs: Dict[str, Segmentation] = {}
    for seg in segmentations:
        if seg.parameter in segs:
            raise EnlabValidationError(f"Duplicate segmentation for parameter {seg.parameter!r}")
        segs[seg.parameter] = seg
    return segs


def _demote(
    elements: List[_Element],
    name: str,
    level: ScaleLevel,
    zero_tol: float,
) -> List[_Element]:
    demoted: List[_Element] = []
    origin = elements[0].value(name) if elements else 0.0
    for element in elements:
        param = element.params[name]
        origins = dict(element.origins)
        if level is ScaleLevel.ratio:
            value = param.value - origin
            origins[name] = origins.get(name, 0.0) + origin
        elif level is ScaleLevel.interval:
            value = float(gradient_sign(param.value, zero_tol))
            origins.pop(name, None)
        else:
            value = 1.0
        demoted.append(
            element.copy(
                update={
                    "params": {**element.params, name: Param(value=value, scale=level.demoted())},
                    "origins": origins,
                },
            ),
        )
    return demoted


def _scale_of(s: Structure, name: str) -> Optional[ScaleLevel]:
    elements = s.nodes if isinstance(s, ReducedStructure) else s.elements
    if not elements:
        return None
    if name not in elements[0].params:
        raise EnlabValidationError(f"Structure has no parameter {name!r}")
    return elements[0].params[name].scale


def param_reduce(
    s: Structure,
    target_level: ScaleLevel,
    parameter: Optional[str] = None,
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> Structure:
    """
    Parametric reduction: demote parameters to a weaker measurement scale, one level
    at a time.

    * ratio to interval: differences from the first element, which becomes the origin
    * interval to ordinal: gradient-sign labels of those differences
    * ordinal to nominal: presence labels (1)

    Args:
        s (Structure): Ordered or reduced structure.
        target_level (ScaleLevel): Scale to demote to.
        parameter (Optional[str], optional): Parameter to demote. Defaults to all of them
            (the reduction parameter for a reduced structure).
        zero_tol (float, optional): Tolerance below which a difference counts as zero.

    Raises:
        EnlabPreconditionError: If the target scale is not weaker than a parameter's scale.

    Returns:
        Structure of the same shape, with demoted parameters
    """

    if isinstance(s, ReducedStructure):
        if parameter is not None and parameter != s.parameter:
            raise EnlabValidationError(
                f"Structure is reduced along {s.parameter!r}, not {parameter!r}",
            )
        names = [s.parameter]
    else:
        names = [parameter] if parameter is not None else s.parameters

    levels = {name: _scale_of(s, name) for name in names}
    for name, level in levels.items():
        if level is not None and not target_level.is_weaker_than(level):
            raise EnlabPreconditionError(
                f"Cannot demote {name!r} from the {level.value} scale "
                f"to the {target_level.value} scale",
            )

    elements: List[_Element] = list(s.nodes if isinstance(s, ReducedStructure) else s.elements)
    for name, level in levels.items():
        while level is not None and level is not target_level:
            elements = _demote(elements, name, level, zero_tol)
            level = level.demoted()
    logger.debug("Demoted %s to the %s scale", ", ".join(map(repr, names)), target_level.value)

    if isinstance(s, ReducedStructure):
        return s.copy(
            update={
                "nodes": elements,
                "links": [
                    link.copy(update={"scale": weakest(link.scale, target_level)})
                    for link in s.links
                ],
            },
        )
    return OrderedStructure(elements=elements)


def demotion_path(
    s: Structure,
    target_level: ScaleLevel = ScaleLevel.nominal,
    parameter: Optional[str] = None,
    table: ScaleEnergyTable = DEFAULT_SCALE_ENERGIES,
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
) -> List[EnergyLedger]:
    """
    Descend the structure energy one scale level at a time: every step demotes each
    parameter still stronger than the target by a single level.

    Returns:
        Ledger of the input followed by the ledger after every step, strictly decreasing
    """

    if isinstance(s, ReducedStructure):
        names = [s.parameter]
    else:
        names = [parameter] if parameter is not None else s.parameters
    ledgers = [structure_energy(s, table)]
    current = s
    while True:
        stronger = [
            (name, level)
            for name, level in ((name, _scale_of(current, name)) for name in names)
            if level is not None and target_level.is_weaker_than(level)
        ]
        if not stronger:
            return ledgers
        for name, level in stronger:
            current = param_reduce(current, level.demoted(), name, zero_tol)
        ledgers.append(structure_energy(current, table))


def structural_weight(
    observed_in: int,
    total_samples: int,
    gamma_sig: float = DEFAULT_GAMMA_SIG,
    gamma_exp: float = 1.0,
) -> SignificanceStats:
    """
    Weight coefficient of a component observed in `observed_in` of `total_samples` samples.

    Raises:
        EnlabDomainError: If there are no samples.
        EnlabValidationError: If the observation count is out of range.
    """

    if total_samples < 1:
        raise EnlabDomainError("At least one sample is required to weigh a component")
    if not 0 <= observed_in <= total_samples:
        raise EnlabValidationError(
            f"Observation count {observed_in} is outside [0, {total_samples}]",
        )
    return SignificanceStats(
        n_true=observed_in,
        n_total=total_samples,
        gamma_sig=gamma_sig,
        gamma_exp=gamma_exp,
    )


def attach_weights(r: ReducedStructure, weights: ChainWeights) -> ReducedStructure:
    """
    Attach significance statistics to the nodes and links of a reduced chain.
    Components without an entry keep their current statistics.
    """

    return r.copy(
        update={
            "nodes": [
                node.copy(update={"stats": weights.nodes.get(node.id, node.stats)})
                for node in r.nodes
            ],
            "links": [
                link.copy(update={"stats": weights.links.get(link.key, link.stats)})
                for link in r.links
            ],
        },
    )


def structural_prune(g: ReducedStructure, gamma_sig: float = DEFAULT_GAMMA_SIG) -> ReducedStructure:
    """
    Structural reduction: remove every node and link with `w < gamma_sig`.

    A link survives only when both of its endpoints do, so removing an interior node
    splits the chain there.

    Args:
        g (ReducedStructure): Chain with significance statistics (missing ones count as `w = 1`).
        gamma_sig (float, optional): Significance threshold in `(0, 1]`. Defaults to 0.5.

    Returns:
        Pruned chain, flagged `fully_pruned` if nothing survived
    """

    if not 0 < gamma_sig <= 1:
        raise EnlabValidationError(f"gamma_sig must lie in (0, 1] (got {gamma_sig!r})")
    threshold = threshold_fraction(gamma_sig)
    removed = {node.id for node in g.nodes if component_weight(node.stats) < threshold}
    surviving = [link for link in g.links if component_weight(link.stats) >= threshold]
    if not removed and len(surviving) == len(g.links):
        return g

    position = {node.id: i for i, node in enumerate(g.nodes)}
    nodes = [node for node in g.nodes if node.id not in removed]
    links = sorted(
        (
            link
            for link in surviving
            if link.source not in removed and link.target not in removed
        ),
        key=lambda link: position[link.source],
    )
    fully_pruned = not nodes
    if fully_pruned:
        logger.warning(
            "Structural pruning at gamma_sig=%r removed every component of the %r chain",
            gamma_sig,
            g.parameter,
        )
    else:
        logger.debug(
            "Pruned %i of %i nodes and %i of %i links",
            len(g.nodes) - len(nodes),
            len(g.nodes),
            len(g.links) - len(links),
            len(g.links),
        )
    return ReducedStructure(
        parameter=g.parameter,
        nodes=nodes,
        links=links,
        fully_pruned=fully_pruned,
    )


def _mean_link_weight(r: ReducedStructure) -> Fraction:
    weights = [component_weight(link.stats) for link in r.links]
    return sum(weights, Fraction(0)) / len(weights) if weights else Fraction(0)


def select_principal(
    reductions: Mapping[str, ReducedStructure],
    weights: Optional[Mapping[str, ChainWeights]] = None,
) -> str:
    """
    Principal parameter: the one whose reduced chain has the highest mean link weight.
    Ties are broken by parameter name.
    """

    if not reductions:
        raise EnlabValidationError("No reductions to select a principal parameter from")
    weights = weights or {}
    means = {
        name: _mean_link_weight(attach_weights(r, weights[name]) if name in weights else r)
        for name, r in reductions.items()
    }
    return min(sorted(means), key=lambda name: -means[name])


def composite_reduce(
    s: Structure,
    parameter: Optional[str] = None,
    seg: Optional[Segmentation] = None,
    stats: Optional[Mapping[str, ChainWeights]] = None,
    gamma_sig: float = DEFAULT_GAMMA_SIG,
    zero_tol: float = DEFAULT_ZERO_TOLERANCE,
    table: ScaleEnergyTable = DEFAULT_SCALE_ENERGIES,
) -> ReducedStructure:
    """
    Composite reduction: demote the reduction parameter from the ratio to the interval
    scale, reduce it structurally-parametrically, then prune insignificant components.

    Args:
        s (Structure): Structure to reduce. An already reduced structure is only pruned.
        parameter (Optional[str], optional): Reduction parameter. Defaults to the
            principal parameter.
        seg (Optional[Segmentation], optional): Segmentation, used if it applies to the
            reduction parameter.
        stats (Optional[Mapping[str, ChainWeights]], optional): Significance statistics
            of the reduced chain, per parameter.
        gamma_sig (float, optional): Significance threshold. Defaults to 0.5.
        zero_tol (float, optional): Tolerance below which a difference counts as zero.
        table (ScaleEnergyTable, optional): Energy per measurement scale.

    Raises:
        EnlabInvariantBreachError: If the reduction did not lower the structure energy.

    Returns:
        Reduced and pruned chain
    """

    stats = stats or {}
    before = structure_energy(s, table)
    if isinstance(s, ReducedStructure):
        reduced = s
    else:
        if len(s.elements) < 2:  # noqa: PLR2004
            raise EnlabValidationError("Composite reduction needs at least 2 elements")
        if parameter is None:
            parameter = select_principal(sp_reduce_all(s, [seg] if seg else [], zero_tol), stats)
        _check_parameter(s, parameter)
        demoted = (
            param_reduce(s, ScaleLevel.interval, parameter, zero_tol)
            if _scale_of(s, parameter) is ScaleLevel.ratio
            else s
        )
        reduced = sp_reduce(
            demoted,
            parameter,
            seg if seg is not None and seg.parameter == parameter else None,
            zero_tol,
        )
    if reduced.parameter in stats:
        reduced = attach_weights(reduced, stats[reduced.parameter])
    pruned = structural_prune(reduced, gamma_sig)

    after = structure_energy(pruned, table)
    if isinstance(s, ReducedStructure):
        changed = len(pruned.nodes) < len(s.nodes) or len(pruned.links) < len(s.links)
    else:
        changed = (
            len(pruned.nodes) < len(s.elements)
            or len(s.parameters) > 1
            or _scale_of(s, reduced.parameter) in (ScaleLevel.ratio, ScaleLevel.interval)
        )
    if after.total > before.total + LEDGER_TOLERANCE or (
        changed and after.total >= before.total
    ):
        raise EnlabInvariantBreachError(
            f"Reduction along {reduced.parameter!r} did not lower the structure energy "
            f"({before.total!r} -> {after.total!r})",
        )
    return pruned
