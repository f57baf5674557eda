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
Hopfield recall dynamics and Ising Metropolis sampling.
"""


from __future__ import annotations

import math

import numpy as np
import pytest

from pydantic import ValidationError

from enlab.exceptions import EnlabValidationError
from enlab.hopfield_ising import (
    HopfieldNet,
    IsingModel,
    SpinState,
    UpdateSchedule,
    corrupt,
    energy_floor,
    ferromagnet,
    hebbian_weights,
    hopfield_energy,
    ising_energy,
    local_field,
    magnetization,
    metropolis_accept,
    metropolis_run,
    overlap,
    recall,
)
from enlab.util import rng_stream

PATTERN = SpinState.of([1, -1, 1])


def _random_state(rng: np.random.Generator, n: int) -> SpinState:
    return SpinState.of(rng.choice([-1, 1], size=n).tolist())


def _check_monotone_recalls(nets: int, starts: int) -> None:
    rng = rng_stream(0, "test-hopfield-monotone")
    for k in range(nets):
        n = int(rng.integers(2, 26))
        patterns = [_random_state(rng, n) for _ in range(int(rng.integers(0, 4)))]
        net = hebbian_weights(patterns, n)
        for trial in range(starts):
            schedule = UpdateSchedule.random if trial % 2 else UpdateSchedule.sequential
            trace = recall(net, _random_state(rng, n), schedule, seed=k, stream=f"t{trial}")
            assert trace.converged
            assert all(b <= a for a, b in zip(trace.energies, trace.energies[1:]))
            assert trace.energies[-1] == pytest.approx(
                hopfield_energy(net, trace.final),
                abs=1e-9,
            )
            assert all(
                local_field(net, trace.final, i) * s >= 0
                for i, s in enumerate(trace.final.spins)
            )


def _one_bit_recall_rate(nets: int) -> float:
    rng = rng_stream(0, "test-hopfield-recall")
    recalled = trials = 0
    for _ in range(nets):
        n = int(rng.integers(3, 26))
        pattern = _random_state(rng, n)
        net = hebbian_weights([pattern], n)
        for i in range(n):
            cue = SpinState.of([-s if j == i else s for j, s in enumerate(pattern.spins)])
            trials += 1
            recalled += recall(net, cue).final == pattern
    return recalled / trials


def _mean_abs_magnetization(temperature: float, sweeps: int, seeds: int) -> float:
    model = ferromagnet(10, coupling=1.0, field=0.0, temperature=temperature)
    rng = rng_stream(0, "test-ising-initial")
    return float(
        np.mean(
            [
                metropolis_run(model, _random_state(rng, 10), sweeps, seed).mean_abs_magnetization
                for seed in range(seeds)
            ],
        ),
    )


class TestSpins:
    def test_overlap_and_magnetization(self):
        assert overlap(PATTERN, PATTERN) == 1.0
        assert overlap(PATTERN.negated(), PATTERN) == -1.0
        assert magnetization(PATTERN) == pytest.approx(1 / 3)

    def test_invalid_spin(self):
        with pytest.raises(ValidationError):
            SpinState.of([1, 0])

    def test_corrupt_flips_exactly(self):
        rng = rng_stream(0, "test-corrupt")
        pattern = SpinState.of([1] * 10)
        cue = corrupt(pattern, 3, rng)
        assert sum(1 for s in cue.spins if s == -1) == 3
        with pytest.raises(EnlabValidationError):
            corrupt(pattern, 11, rng)


class TestHebbian:
    def test_no_patterns(self):
        net = hebbian_weights([], 3)
        assert np.array_equal(net.matrix(), np.zeros((3, 3)))

    def test_one_pattern(self):
        w = hebbian_weights([PATTERN], 3).matrix()
        assert w[0, 1] == pytest.approx(-1 / 3)
        assert w[0, 2] == pytest.approx(1 / 3)
        assert w[1, 2] == pytest.approx(-1 / 3)
        assert np.all(np.diag(w) == 0)

    def test_repeated_pattern_accumulates(self):
        w = hebbian_weights([PATTERN, PATTERN], 3).matrix()
        assert w[0, 1] == pytest.approx(-2 / 3)

    def test_length_mismatch(self):
        with pytest.raises(EnlabValidationError):
            hebbian_weights([PATTERN], 4)

    @pytest.mark.parametrize(
        "weights",
        [[[0.0, 1.0], [0.5, 0.0]], [[1.0, 0.0], [0.0, 0.0]], [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]],
    )
    def test_invalid_weights(self, weights):
        with pytest.raises(ValidationError):
            HopfieldNet(weights=weights, thresholds=[0.0] * len(weights))


class TestHopfieldEnergy:
    def test_zero_net(self):
        net = hebbian_weights([], 3)
        assert hopfield_energy(net, PATTERN) == 0.0
        assert energy_floor(net) == 0.0

    def test_stored_pattern(self):
        net = hebbian_weights([PATTERN], 3)
        assert hopfield_energy(net, PATTERN) == pytest.approx(-1.0)
        assert hopfield_energy(net, SpinState.of([1, 1, 1])) == pytest.approx(1 / 3)
        assert energy_floor(net) == pytest.approx(1 / 3)

    def test_uniform_floor(self):
        w = np.full((3, 3), 1 / 3)
        np.fill_diagonal(w, 0.0)
        net = HopfieldNet(weights=w.tolist(), thresholds=[0.0] * 3)
        assert energy_floor(net) == pytest.approx(-1.0)
        assert energy_floor(net) == pytest.approx(hopfield_energy(net, SpinState.of([1, 1, 1])))

    def test_floor_is_all_up_energy(self):
        rng = rng_stream(0, "test-hopfield-floor")
        for _ in range(20):
            n = int(rng.integers(2, 12))
            patterns = [_random_state(rng, n) for _ in range(int(rng.integers(1, 4)))]
            net = hebbian_weights(patterns, n)
            all_up = SpinState.of([1] * n)
            assert energy_floor(net) == pytest.approx(hopfield_energy(net, all_up), abs=1e-12)

    def test_thresholds_lower_aligned_states(self):
        net = HopfieldNet(weights=[[0.0, 0.0], [0.0, 0.0]], thresholds=[0.5, 0.5])
        assert hopfield_energy(net, SpinState.of([1, 1])) == pytest.approx(-1.0)
        assert local_field(net, SpinState.of([-1, -1]), 0) == pytest.approx(0.5)

    def test_dimension_mismatch(self):
        with pytest.raises(EnlabValidationError):
            hopfield_energy(hebbian_weights([], 2), PATTERN)


class TestRecall:
    def test_stored_pattern_is_fixed_point(self):
        trace = recall(hebbian_weights([PATTERN], 3), PATTERN)
        assert trace.converged
        assert trace.steps == 0
        assert trace.final == PATTERN

    def test_negated_pattern_is_fixed_point(self):
        rng = rng_stream(0, "test-hopfield-negated")
        for pattern in [PATTERN, *(_random_state(rng, 9) for _ in range(10))]:
            negated = pattern.negated()
            trace = recall(hebbian_weights([pattern], pattern.n), negated)
            assert trace.converged
            assert trace.steps == 0
            assert trace.final == negated

    def test_hand_simulation(self):
        trace = recall(hebbian_weights([PATTERN], 3), SpinState.of([1, 1, 1]))
        assert trace.converged
        assert trace.flipped == [1]
        assert trace.final == PATTERN
        assert trace.energies == pytest.approx([1 / 3, -1.0])
        assert trace.sweeps == 2

    def test_zero_net_keeps_any_state(self):
        trace = recall(hebbian_weights([], 3), SpinState.of([-1, 1, 1]))
        assert trace.converged
        assert trace.steps == 0

    def test_sweep_limit(self):
        trace = recall(hebbian_weights([PATTERN], 3), SpinState.of([1, 1, 1]), max_sweeps=1)
        assert not trace.converged
        assert trace.sweeps == 1

    def test_random_schedule_is_seeded(self):
        rng = rng_stream(5, "test-recall-seeded")
        net = hebbian_weights([_random_state(rng, 20) for _ in range(3)], 20)
        initial = _random_state(rng, 20)
        a = recall(net, initial, UpdateSchedule.random, seed=9)
        b = recall(net, initial, UpdateSchedule.random, seed=9)
        assert a == b

    def test_energy_never_increases(self):
        _check_monotone_recalls(nets=40, starts=10)

    @pytest.mark.slow
    def test_energy_never_increases_full(self):
        _check_monotone_recalls(nets=500, starts=500)

    def test_one_bit_corruption_recalled(self):
        assert _one_bit_recall_rate(50) >= 0.95


class TestIsing:
    def test_energy_examples(self):
        pair = ferromagnet(2)
        assert ising_energy(pair, SpinState.of([1, 1])) == pytest.approx(-1.0)
        assert ising_energy(pair, SpinState.of([1, -1])) == pytest.approx(1.0)
        free = ferromagnet(2, coupling=0.0)
        assert ising_energy(free, SpinState.of([1, -1])) == 0.0

    def test_acceptance_rule(self):
        model = ferromagnet(2, temperature=1.0)
        assert metropolis_accept(0.0, model, 0.999)
        assert metropolis_accept(-3.0, model, 0.999)
        assert metropolis_accept(2.0, model, 0.13)
        assert not metropolis_accept(2.0, model, 0.14)

    def test_detailed_balance(self):
        model = ferromagnet(2, temperature=1.0)
        draws = rng_stream(0, "test-detailed-balance").random(100_000)
        frequency = np.mean([metropolis_accept(2.0, model, u) for u in draws])
        p = math.exp(-2.0)
        assert abs(frequency - p) <= 3 * math.sqrt(p * (1 - p) / draws.size)

    def test_zero_sweeps_echo_initial(self):
        initial = SpinState.of([1, -1, 1, 1])
        run = metropolis_run(ferromagnet(4), initial, sweeps=0, seed=0)
        assert run.final_state == initial
        assert run.energies == [ising_energy(ferromagnet(4), initial)]
        assert run.mean_abs_magnetization == 0.5
        assert run.acceptance_rate == 0.0

    def test_energy_series_tracks_state(self):
        model = ferromagnet(6, coupling=0.5, field=0.1, temperature=2.0)
        run = metropolis_run(model, SpinState.of([1, -1] * 3), sweeps=50, seed=3)
        assert len(run.energies) == 51
        assert run.energies[-1] == pytest.approx(ising_energy(model, run.final_state))

    def test_seeded(self):
        model = ferromagnet(8, temperature=2.0)
        initial = SpinState.of([1] * 8)
        assert metropolis_run(model, initial, 20, seed=4) == metropolis_run(model, initial, 20, 4)

    def test_asymmetric_couplings(self):
        with pytest.raises(ValidationError):
            IsingModel(couplings=[[0.0, 1.0], [0.0, 0.0]], fields=[0.0, 0.0], temperature=1.0)

    def test_low_temperature_orders(self):
        assert _mean_abs_magnetization(0.5, sweeps=500, seeds=3) > 0.9

    def test_high_temperature_disorders(self):
        assert _mean_abs_magnetization(100.0, sweeps=500, seeds=3) < 0.35

    @pytest.mark.slow
    def test_ordering_full(self):
        assert _mean_abs_magnetization(0.5, sweeps=10_000, seeds=20) > 0.9
        assert _mean_abs_magnetization(100.0, sweeps=10_000, seeds=20) < 0.35
