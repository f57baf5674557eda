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
Measurement scales, reduction operators, the structure energy ledger and the
entropy-versus-weight laws.
"""


from __future__ import annotations

import logging
import math

from fractions import Fraction
from typing import List, Optional

import numpy as np
import pytest

from pydantic import ValidationError

from enlab.exceptions import (
    EnlabDomainError,
    EnlabNumericError,
    EnlabPreconditionError,
    EnlabValidationError,
)
from enlab.reduction import (
    ChainWeights,
    OrderedStructure,
    ReducedStructure,
    ScaleEnergyTable,
    ScaleLevel,
    Segmentation,
    SignificanceStats,
    attach_weights,
    compare,
    composite_reduce,
    demotion_path,
    energy_vs_w,
    energy_vs_w_derivative,
    entropy_of_w,
    gradient_sign,
    param_reduce,
    relation_vector,
    segment_index,
    select_principal,
    sp_reduce,
    sp_reduce_all,
    structural_prune,
    structural_weight,
    structure_energy,
)
from enlab.reduction.structures import component_weight, threshold_fraction
from enlab.util import rng_stream

QUADRANTS = Segmentation.quadrants("u")


def _structure(*values: float, scale: ScaleLevel = ScaleLevel.ratio) -> OrderedStructure:
    return OrderedStructure.from_values({"u": values}, scale)


def _ids(r: ReducedStructure) -> List[str]:
    return [node.id for node in r.nodes]


def _random_structure(
    rng: np.random.Generator,
    scale: Optional[ScaleLevel] = None,
) -> OrderedStructure:
    n = int(rng.integers(2, 65))
    names = [f"p{k}" for k in range(int(rng.integers(1, 4)))]
    if scale is None:
        scale = [ScaleLevel.ratio, ScaleLevel.interval, ScaleLevel.ordinal][int(rng.integers(0, 3))]
    return OrderedStructure.from_values(
        {name: rng.integers(0, 6, size=n).astype(float).tolist() for name in names},
        scale,
    )


def _random_segmentation(rng: np.random.Generator, parameter: str) -> Segmentation:
    inner = np.unique(rng.uniform(0.5, 6.0, size=int(rng.integers(1, 4))))
    return Segmentation(parameter=parameter, thresholds=[0.0, *inner.tolist()])


def _check_lyapunov_descent(structures: int) -> None:
    rng = rng_stream(0, "test-lyapunov")
    for _ in range(structures):
        s = _random_structure(rng)
        seg = _random_segmentation(rng, "p0") if rng.random() < 0.5 else None
        before = structure_energy(s).total
        reduced = composite_reduce(s, seg=seg)
        after = structure_energy(reduced).total
        assert after <= before
        if len(reduced.nodes) < len(s.elements) or len(s.parameters) > 1:
            assert after < before
        assert sp_reduce(reduced, reduced.parameter) == reduced


class TestScales:
    def test_order(self):
        assert ScaleLevel.nominal.is_weaker_than(ScaleLevel.ordinal)
        assert not ScaleLevel.ratio.is_weaker_than(ScaleLevel.interval)
        assert ScaleLevel.ratio.demoted() is ScaleLevel.interval
        with pytest.raises(EnlabValidationError):
            ScaleLevel.nominal.demoted()

    def test_energy_table_must_decrease(self):
        with pytest.raises(ValidationError):
            ScaleEnergyTable(ratio=4, interval=2, ordinal=2, nominal=1)

    @pytest.mark.parametrize("a,b,expected", [(3, 3, 0), (1, 4, 3), (4, 1, -3)])
    def test_compare(self, a, b, expected):
        assert compare(a, b) == expected

    def test_compare_non_finite(self):
        with pytest.raises(EnlabNumericError):
            compare(1.0, float("nan"))

    @pytest.mark.parametrize("delta,expected", [(0, 0), (0.5, 1), (-2, -1), (1e-10, 0)])
    def test_gradient_sign(self, delta, expected):
        assert gradient_sign(delta, 1e-9) == expected

    @pytest.mark.parametrize(
        "angle,expected",
        [(10, 0), (100, 1), (90, 1), (0, 0), (359.5, 3), (370, 0), (-10, 3)],
    )
    def test_quadrants(self, angle, expected):
        assert segment_index(angle, QUADRANTS) == expected

    def test_non_cyclic_segmentation(self):
        seg = Segmentation(parameter="u", thresholds=[0, 10])
        assert segment_index(25, seg) == 1
        with pytest.raises(EnlabDomainError):
            segment_index(-1, seg)
        with pytest.raises(EnlabNumericError):
            segment_index(float("inf"), seg)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"thresholds": []},
            {"thresholds": [0, 0]},
            {"thresholds": [0, 90], "cyclic": True},
            {"thresholds": [0, 90], "period": 360},
            {"thresholds": [0, 400], "cyclic": True, "period": 360},
        ],
    )
    def test_invalid_segmentations(self, kwargs):
        with pytest.raises(ValidationError):
            Segmentation(parameter="u", **kwargs)

    def test_coarsen(self):
        assert QUADRANTS.coarsen().thresholds == [0, 180]


class TestRelationVector:
    def test_examples(self):
        assert relation_vector(_structure(1, 2, 3, 2), "u") == [1, 1, -1]
        assert relation_vector(_structure(5, 5, 5), "u") == [0, 0]
        assert relation_vector(_structure(1, 0), "u") == [-1]

    def test_missing_parameter(self):
        with pytest.raises(EnlabValidationError):
            relation_vector(_structure(1, 2), "v")

    def test_too_short(self):
        with pytest.raises(EnlabValidationError):
            relation_vector(_structure(1), "u")


class TestSpReduce:
    def test_monotone_run(self):
        r = sp_reduce(_structure(1, 2, 3, 4), "u")
        assert _ids(r) == ["s1", "s4"]
        assert r.label_sequence() == [(1, 0)]

    def test_sign_change(self):
        r = sp_reduce(_structure(1, 2, 3, 2, 1), "u")
        assert _ids(r) == ["s1", "s3", "s5"]
        assert r.label_sequence() == [(1, 0), (-1, 0)]

    def test_constancy(self):
        r = sp_reduce(_structure(5, 5, 5), "u")
        assert _ids(r) == ["s1", "s3"]
        assert r.label_sequence() == [(0, 0)]

    def test_segment_crossing(self):
        r = sp_reduce(_structure(10, 40, 70, 100), "u", QUADRANTS)
        assert _ids(r) == ["s1", "s3", "s4"]
        assert r.label_sequence() == [(1, 0), (1, 1)]
        assert r.node_labels() == [0, 0, 1]

    def test_nodes_are_qualitative(self):
        r = sp_reduce(_structure(1, 2, 3), "u")
        assert all(node.params["u"].scale is ScaleLevel.ordinal for node in r.nodes)
        assert all(link.scale is ScaleLevel.ordinal for link in r.links)

    def test_nominal_stays_nominal(self):
        r = sp_reduce(_structure(1, 2, 1, scale=ScaleLevel.nominal), "u")
        assert all(node.params["u"].scale is ScaleLevel.nominal for node in r.nodes)

    def test_singleton(self):
        with pytest.raises(EnlabValidationError):
            sp_reduce(_structure(1), "u")

    def test_segmentation_parameter_mismatch(self):
        with pytest.raises(EnlabValidationError):
            sp_reduce(_structure(1, 2), "u", Segmentation.quadrants())

    def test_idempotent(self):
        r = sp_reduce(_structure(1, 2, 3, 2, 1), "u")
        assert sp_reduce(r, "u") == r

    def test_per_parameter(self):
        s = OrderedStructure.from_values({"u": [1, 2, 3], "v": [3, 2, 3]})
        reductions = sp_reduce_all(s)
        assert sorted(reductions) == ["u", "v"]
        assert len(reductions["u"].nodes) == 2
        assert len(reductions["v"].nodes) == 3

    def test_run_soundness_and_compression(self):
        rng = rng_stream(1, "test-run-soundness")
        for _ in range(300):
            s = _random_structure(rng, ScaleLevel.ratio)
            seg = _random_segmentation(rng, "p0")
            r = sp_reduce(s, "p0", seg)
            values = s.values("p0")
            signs = relation_vector(s, "p0")
            segments = [segment_index(v, seg) for v in values]
            assert r.nodes[0].id == s.elements[0].id
            assert r.nodes[-1].id == s.elements[-1].id
            for link, a, b in zip(r.links, r.nodes, r.nodes[1:]):
                run = signs[a.source_index : b.source_index]
                assert all(sign == link.label.sign for sign in run)
                assert all(
                    segment == link.label.segment
                    for segment in segments[a.source_index + 1 : b.source_index + 1]
                )
            labels = list(zip(signs, segments[1:]))
            changes_everywhere = all(x != y for x, y in zip(labels, labels[1:]))
            assert len(r.nodes) <= len(s.elements)
            assert (len(r.nodes) == len(s.elements)) == changes_everywhere


class TestParamReduce:
    def test_ratio_to_interval(self):
        demoted = param_reduce(_structure(2, 5, 9), ScaleLevel.interval)
        assert demoted.values("u") == [0.0, 3.0, 7.0]
        assert [e.absolute("u") for e in demoted.elements] == [2.0, 5.0, 9.0]

    def test_interval_to_ordinal(self):
        demoted = param_reduce(_structure(2, 5, 9), ScaleLevel.ordinal)
        assert demoted.values("u") == [0.0, 1.0, 1.0]
        assert all(e.params["u"].scale is ScaleLevel.ordinal for e in demoted.elements)

    def test_ordinal_to_nominal(self):
        demoted = param_reduce(_structure(2, 5, 9), ScaleLevel.nominal)
        assert demoted.values("u") == [1.0, 1.0, 1.0]

    def test_target_must_be_weaker(self):
        with pytest.raises(EnlabPreconditionError):
            param_reduce(_structure(1, 2, scale=ScaleLevel.ordinal), ScaleLevel.ordinal)

    def test_reduced_structure_links(self):
        r = param_reduce(sp_reduce(_structure(1, 2, 1), "u"), ScaleLevel.nominal)
        assert isinstance(r, ReducedStructure)
        assert all(link.scale is ScaleLevel.nominal for link in r.links)

    def test_demotion_path_descends(self):
        totals = [ledger.total for ledger in demotion_path(_structure(2, 5, 9))]
        assert totals == [18.0, 15.0, 10.0, 5.0]


class TestLedger:
    def test_empty(self):
        assert structure_energy(OrderedStructure()).total == 0.0

    def test_ordered(self):
        ledger = structure_energy(_structure(1, 2, 3))
        assert (ledger.unit_energy, ledger.connection_energy, ledger.total) == (12.0, 6.0, 18.0)
        assert ledger.units_by_scale == {"ratio": 3}
        assert ledger.links_by_scale == {"interval": 2}

    def test_reduced(self):
        assert structure_energy(sp_reduce(_structure(1, 2, 3), "u")).total == 6.0

    def test_custom_table(self):
        table = ScaleEnergyTable(ratio=10, interval=5, ordinal=2, nominal=1)
        assert structure_energy(_structure(1, 2, 3), table).total == 40.0


class TestStructuralReduction:
    @staticmethod
    def _weighted(node_weights, link_weights) -> ReducedStructure:
        r = sp_reduce(_structure(1, 2, 3, 2, 1), "u")
        return attach_weights(
            r,
            ChainWeights(
                nodes={
                    node.id: structural_weight(n_true, 10)
                    for node, n_true in zip(r.nodes, node_weights)
                },
                links={
                    link.key: structural_weight(n_true, 10)
                    for link, n_true in zip(r.links, link_weights)
                },
            ),
        )

    @pytest.mark.parametrize("n_true,expected", [(8, Fraction(4, 5)), (0, 0), (10, 1)])
    def test_weight(self, n_true, expected):
        stats = structural_weight(n_true, 10)
        assert stats.w == expected
        assert stats.dw_dn_true == Fraction(1, 10)

    def test_weight_needs_samples(self):
        with pytest.raises(EnlabDomainError):
            structural_weight(0, 0)
        with pytest.raises(EnlabValidationError):
            structural_weight(11, 10)

    def test_threshold_is_exact(self):
        assert structural_weight(8, 10, gamma_sig=0.8).significant
        assert threshold_fraction(0.8) == Fraction(4, 5)
        assert component_weight(None) == 1

    def test_all_significant_is_unchanged(self):
        r = self._weighted([10, 10, 10], [10, 10])
        assert structural_prune(r, 0.5) == r

    def test_insignificant_node_splits_chain(self):
        r = self._weighted([8, 3, 8], [8, 8])
        pruned = structural_prune(r, 0.5)
        assert _ids(pruned) == ["s1", "s5"]
        assert pruned.links == []
        assert structure_energy(pruned).total < structure_energy(r).total

    def test_insignificant_link(self):
        pruned = structural_prune(self._weighted([10, 10, 10], [2, 10]), 0.5)
        assert _ids(pruned) == ["s1", "s3", "s5"]
        assert [link.key for link in pruned.links] == ["s3->s5"]

    def test_strict_threshold(self):
        pruned = structural_prune(self._weighted([10, 9, 10], [10, 10]), 1.0)
        assert _ids(pruned) == ["s1", "s5"]

    def test_everything_pruned(self, caplog):
        with caplog.at_level(logging.WARNING, logger="enlab.reduction.operators"):
            pruned = structural_prune(self._weighted([1, 1, 1], [1, 1]), 0.5)
        assert pruned.fully_pruned
        assert pruned.nodes == []
        assert "removed every component" in caplog.text

    def test_invalid_threshold(self):
        with pytest.raises(EnlabValidationError):
            structural_prune(self._weighted([10, 10, 10], [10, 10]), 0.0)

    def test_principal_parameter(self):
        s = OrderedStructure.from_values({"u": [1, 2, 3], "v": [3, 2, 3]})
        reductions = sp_reduce_all(s)
        assert select_principal(reductions) == "u"
        weights = {
            "u": ChainWeights(links={"s1->s3": structural_weight(2, 10)}),
            "v": ChainWeights(links={"s1->s2": structural_weight(9, 10)}),
        }
        assert select_principal(reductions, weights) == "v"


class TestCompositeReduce:
    def test_sign_change(self):
        s = _structure(1, 2, 3, 2, 1)
        r = composite_reduce(s)
        assert _ids(r) == ["s1", "s3", "s5"]
        assert structure_energy(s).total == 32.0
        assert structure_energy(r).total == 10.0

    def test_long_monotone_run(self):
        s = _structure(*range(10))
        r = composite_reduce(s)
        assert len(r.nodes) == 2
        ledger = structure_energy(r)
        assert ledger.units_by_scale == {"ordinal": 2}
        assert ledger.unit_energy / structure_energy(s).unit_energy == pytest.approx(0.1)

    def test_reduced_input_is_identity(self):
        r = composite_reduce(_structure(1, 2, 3, 2, 1))
        assert composite_reduce(r) == r

    def test_weights_prune(self):
        s = _structure(1, 2, 3, 2, 1)
        stats = {"u": ChainWeights(nodes={"s3": structural_weight(1, 10)})}
        r = composite_reduce(s, stats=stats)
        assert _ids(r) == ["s1", "s5"]

    def test_segmentation(self):
        r = composite_reduce(_structure(10, 40, 70, 100), "u", QUADRANTS)
        assert r.node_labels() == [0, 0, 1]

    def test_lyapunov_descent(self):
        _check_lyapunov_descent(500)

    @pytest.mark.slow
    def test_lyapunov_descent_full(self):
        _check_lyapunov_descent(10_000)

    def test_no_redundant_nodes_or_insignificant_components(self):
        rng = rng_stream(2, "test-local-minimum")
        for _ in range(200):
            s = _random_structure(rng)
            r = composite_reduce(s, "p0")
            labels = r.label_sequence()
            assert all(a != b for a, b in zip(labels, labels[1:]))
            threshold = threshold_fraction(0.5)
            assert all(component_weight(node.stats) >= threshold for node in r.nodes)
            assert all(component_weight(link.stats) >= threshold for link in r.links)


class TestLaws:
    def test_full_weight(self):
        stats = structural_weight(10, 10)
        assert entropy_of_w(stats, 16) == pytest.approx(math.log(16))
        assert energy_vs_w(stats, 5.0, 2.0, 16) == pytest.approx(5.0 - 2.0 * math.log(16))

    def test_half_weight(self):
        stats = structural_weight(5, 10)
        assert entropy_of_w(stats, 16) == pytest.approx(math.log(8))
        assert energy_vs_w_derivative(stats, 1.0) == pytest.approx(-2.0)

    def test_microstate_round_trip(self):
        stats = SignificanceStats(n_true=3, n_total=10, gamma_exp=2.0)
        assert math.exp(entropy_of_w(stats, 50)) == pytest.approx(50 * 0.3**2)

    def test_domain(self):
        with pytest.raises(EnlabDomainError):
            entropy_of_w(structural_weight(0, 10), 16)
        with pytest.raises(EnlabDomainError):
            entropy_of_w(structural_weight(5, 10), 0)

    def test_monotone_with_matching_slope(self):
        total = 1_000_000
        entropies = []
        energies = []
        for k in range(1, 101):
            n_true = k * total // 100
            stats = structural_weight(n_true, total)
            entropies.append(entropy_of_w(stats, 16))
            energies.append(energy_vs_w(stats, 10.0, 1.0, 16))
            lower = structural_weight(n_true - 1, total)
            upper = structural_weight(min(n_true + 1, total), total)
            rise = energy_vs_w(upper, 10.0, 1.0, 16) - energy_vs_w(lower, 10.0, 1.0, 16)
            slope = rise / float(upper.w - lower.w)
            derivative = energy_vs_w_derivative(stats, 1.0)
            assert derivative < 0
            assert slope == pytest.approx(derivative, rel=1e-6)
        assert all(b > a for a, b in zip(entropies, entropies[1:]))
        assert all(b < a for a, b in zip(energies, energies[1:]))
