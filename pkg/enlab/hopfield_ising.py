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
Hopfield associative memory and the Ising model, with energy instrumentation.

Both systems share the same quadratic energy form over `{-1, +1}` spins. The Hopfield
network relaxes deterministically by asynchronous updates; the Ising model samples
its equilibrium with single-flip Metropolis dynamics at a finite temperature.
"""


from __future__ import annotations

import math

from logging import getLogger
from typing import Dict, List, Optional, Sequence

import numpy as np

from pydantic import PositiveFloat, root_validator, validator
from typing_extensions import Self

from .entropy import NATURAL_UNITS, PhysicalConstants
from .exceptions import EnlabValidationError
from .types import BaseEnum, EnlabModel, Spin
from .util import rng_stream

logger = getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12


class SpinState(EnlabModel):
    """
    Configuration of `N` binary spins.
    """

    spins: List[Spin]

    @classmethod
    def of(cls, values: Sequence[int]) -> Self:
        """
        Create a spin state from a sequence of `-1`/`+1` values.
        """

        return cls(spins=[int(v) for v in values])

    @property
    def n(self) -> int:
        return len(self.spins)

    def array(self) -> np.ndarray:
        return np.asarray(self.spins, dtype=np.int64)

    def negated(self) -> SpinState:
        return SpinState(spins=[-s for s in self.spins])


def _check_couplings(matrix: List[List[float]], what: str) -> np.ndarray:
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return a.reshape(0, 0)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:  # noqa: PLR2004
        raise EnlabValidationError(f"{what} must be a square matrix")
    if not np.all(np.isfinite(a)):
        raise EnlabValidationError(f"{what} must be finite")
    if np.any(np.abs(a - a.T) > SYMMETRY_TOLERANCE):
        raise EnlabValidationError(f"{what} must be symmetric")
    if np.any(np.diag(a) != 0):
        raise EnlabValidationError(f"{what} must have a zero diagonal")
    return a


class HopfieldNet(EnlabModel):
    """
    Hopfield network: symmetric, zero-diagonal weights and per-unit thresholds.
    """

    weights: List[List[float]]
    thresholds: List[float]

    @root_validator(skip_on_failure=True)
    def validate_net(cls, values: Dict[str, List]) -> Dict[str, List]:
        w = _check_couplings(values["weights"], "Hopfield weights")
        if len(values["thresholds"]) != w.shape[0]:
            raise EnlabValidationError("One threshold per unit is required")
        return values

    @property
    def n(self) -> int:
        return len(self.thresholds)

    def matrix(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float).reshape(self.n, self.n)

    def theta(self) -> np.ndarray:
        return np.asarray(self.thresholds, dtype=float)


class IsingModel(EnlabModel):
    """
    Ising model: symmetric, zero-diagonal couplings, external fields and temperature.
    """

    couplings: List[List[float]]
    fields: List[float]
    temperature: PositiveFloat
    consts: PhysicalConstants = NATURAL_UNITS

    @root_validator(skip_on_failure=True)
    def validate_model(cls, values: Dict[str, List]) -> Dict[str, List]:
        j = _check_couplings(values["couplings"], "Ising couplings")
        if len(values["fields"]) != j.shape[0]:
            raise EnlabValidationError("One field per spin is required")
        return values

    @property
    def n(self) -> int:
        return len(self.fields)

    @property
    def k_t(self) -> float:
        return self.consts.k_b * self.temperature

    def matrix(self) -> np.ndarray:
        return np.asarray(self.couplings, dtype=float).reshape(self.n, self.n)

    def field(self) -> np.ndarray:
        return np.asarray(self.fields, dtype=float)


class UpdateSchedule(BaseEnum):
    """
    Order in which units are visited within one asynchronous recall sweep.
    """

    sequential = "sequential"
    random = "random"


class RecallTrace(EnlabModel):
    """
    Trajectory of a Hopfield recall run.

    `states[0]` and `energies[0]` describe the initial state; every later entry
    follows one flip, whose unit index is recorded in `flipped`.
    """

    states: List[SpinState]
    energies: List[float]
    flipped: List[int]
    converged: bool
    steps: int
    sweeps: int

    @validator("energies")
    def validate_energies(cls, value: List[float]) -> List[float]:
        for before, after in zip(value, value[1:]):
            if after > before:
                raise EnlabValidationError("Recall energies must never increase")
        return value

    @property
    def final(self) -> SpinState:
        return self.states[-1]


class MetropolisRun(EnlabModel):
    """
    Record of a Metropolis run. Series hold one entry for the initial state and
    one per completed sweep.
    """

    final_state: SpinState
    energies: List[float]
    magnetizations: List[float]
    mean_abs_magnetization: float
    acceptance_rate: float


def _check_state(n: int, s: SpinState) -> None:
    if s.n != n:
        raise EnlabValidationError(f"State has {s.n} spins, the system has {n}")


def overlap(s: SpinState, pattern: SpinState) -> float:
    """
    Pattern overlap `(1/N) sum(s_i x_i)`: 1 for the pattern, -1 for its negation.
    """

    _check_state(pattern.n, s)
    if not s.n:
        return 0.0
    return float(np.dot(s.array(), pattern.array())) / s.n


def magnetization(s: SpinState) -> float:
    """
    Mean spin `(1/N) sum(s_i)`.
    """

    if not s.n:
        return 0.0
    return float(s.array().sum()) / s.n


def corrupt(pattern: SpinState, flips: int, rng: np.random.Generator) -> SpinState:
    """
    Negate exactly `flips` distinct, randomly chosen positions of a pattern.

    Args:
        pattern (SpinState): Pattern to corrupt.
        flips (int): Number of positions to flip, `0 <= flips <= N`.
        rng (np.random.Generator): Random generator.

    Returns:
        Corrupted copy of the pattern
    """

    if not 0 <= flips <= pattern.n:
        raise EnlabValidationError(f"Cannot flip {flips} of {pattern.n} spins")
    spins = pattern.array()
    positions = rng.choice(pattern.n, size=flips, replace=False)
    spins[positions] *= -1
    return SpinState.of(spins.tolist())


def hebbian_weights(patterns: Sequence[SpinState], n: int) -> HopfieldNet:
    """
    Store patterns with the Hebbian rule `w_ij = (1/N) sum_k x_i^k x_j^k`.

    Args:
        patterns (Sequence[SpinState]): Patterns to store (possibly none).
        n (int): Number of units.

    Returns:
        Hopfield network with zero thresholds
    """

    if n < 1:
        raise EnlabValidationError("A network needs at least one unit")
    w = np.zeros((n, n), dtype=float)
    for k, pattern in enumerate(patterns):
        if pattern.n != n:
            raise EnlabValidationError(f"Pattern {k} has {pattern.n} spins, expected {n}")
        x = pattern.array()
        w += np.outer(x, x)
    w /= n
    np.fill_diagonal(w, 0.0)
    logger.debug("Stored %i patterns in a %i-unit network", len(patterns), n)
    return HopfieldNet(weights=w.tolist(), thresholds=[0.0] * n)


def _quadratic_energy(j: np.ndarray, h: np.ndarray, s: np.ndarray) -> float:
    return float(-0.5 * s @ j @ s - h @ s)


def hopfield_energy(net: HopfieldNet, s: SpinState) -> float:
    """
    Network energy `E = -1/2 sum_{i != j} w_ij s_i s_j - sum_i theta_i s_i`.
    """

    _check_state(net.n, s)
    return _quadratic_energy(net.matrix(), net.theta(), s.array().astype(float))


def energy_floor(net: HopfieldNet) -> float:
    """
    Theoretical energy limit `-1/2 sum_{i != j} w_ij`. It is the energy of the all-`+1`
    state of a threshold-free network, and is not necessarily attained otherwise.
    """

    return float(-0.5 * net.matrix().sum())


def local_field(net: HopfieldNet, s: SpinState, i: int) -> float:
    """
    Local field of unit `i`, `sum_j w_ij s_j + theta_i`: the negative energy gradient
    with respect to `s_i`, so updating along its sign never raises the energy.
    """

    _check_state(net.n, s)
    return float(net.matrix()[i] @ s.array()) + net.thresholds[i]


def recall(
    net: HopfieldNet,
    initial: SpinState,
    schedule: UpdateSchedule = UpdateSchedule.sequential,
    max_sweeps: int = 100,
    seed: int = 0,
    stream: Optional[str] = None,
) -> RecallTrace:
    """
    Relax the network from an initial state with asynchronous updates
    `s_i <- sign(h_i)`, where `sign(0)` keeps the current spin.

    Every flip lowers the energy by exactly `2 |h_i|`. The run has converged once
    a full sweep makes no flip.

    Args:
        net (HopfieldNet): Network.
        initial (SpinState): Initial state.
        schedule (UpdateSchedule, optional): Unit visiting order within a sweep.
        max_sweeps (int, optional): Sweep limit. Defaults to 100.
        seed (int, optional): Seed for the random schedule. Defaults to 0.
        stream (Optional[str], optional): Random sub-stream name. Defaults to `hopfield`.

    Returns:
        Recall trace (not converged if the sweep limit was reached)
    """

    _check_state(net.n, initial)
    if max_sweeps < 0:
        raise EnlabValidationError("max_sweeps must be non-negative")
    w = net.matrix()
    theta = net.theta()
    s = initial.array()
    rng = rng_stream(seed, stream or "hopfield") if schedule is UpdateSchedule.random else None

    states = [initial]
    energies = [hopfield_energy(net, initial)]
    flipped: List[int] = []
    converged = False
    sweeps = 0

    while sweeps < max_sweeps:
        sweeps += 1
        order = rng.permutation(net.n) if rng is not None else range(net.n)
        flips = 0
        for i in order:
            h = float(w[i] @ s) + theta[i]
            if h == 0 or (h > 0) == (s[i] > 0):
                continue
            s[i] = -s[i]
            flips += 1
            flipped.append(int(i))
            states.append(SpinState.of(s.tolist()))
            energies.append(energies[-1] - 2.0 * abs(h))
        if not flips:
            converged = True
            break

    logger.debug(
        "Recall %s after %i sweeps and %i flips",
        "converged" if converged else "stopped",
        sweeps,
        len(flipped),
    )
    return RecallTrace(
        states=states,
        energies=energies,
        flipped=flipped,
        converged=converged,
        steps=len(flipped),
        sweeps=sweeps,
    )


def ferromagnet(
    n: int,
    coupling: float = 1.0,
    field: float = 0.0,
    temperature: float = 1.0,
    consts: PhysicalConstants = NATURAL_UNITS,
) -> IsingModel:
    """
    All-to-all Ising model with uniform coupling and field.
    """

    if n < 1:
        raise EnlabValidationError("A model needs at least one spin")
    j = np.full((n, n), float(coupling))
    np.fill_diagonal(j, 0.0)
    return IsingModel(
        couplings=j.tolist(),
        fields=[float(field)] * n,
        temperature=temperature,
        consts=consts,
    )


def ising_energy(m: IsingModel, s: SpinState) -> float:
    """
    Ising Hamiltonian `H = -1/2 sum_{i != j} J_ij S_i S_j - sum_i h_i S_i`.
    """

    _check_state(m.n, s)
    return _quadratic_energy(m.matrix(), m.field(), s.array().astype(float))


def metropolis_accept(delta_e: float, m: IsingModel, uniform_draw: float) -> bool:
    """
    Metropolis acceptance rule: downhill and level moves are always accepted, uphill
    moves with probability `exp(-dE / k_B T)`.
    """

    if delta_e <= 0:
        return True
    return uniform_draw < math.exp(-delta_e / m.k_t)


def metropolis_run(
    m: IsingModel,
    initial: SpinState,
    sweeps: int,
    seed: int,
    stream: Optional[str] = None,
) -> MetropolisRun:
    """
    Seeded single-flip Metropolis sampling. Each sweep proposes `N` flips at uniformly
    drawn sites.

    Args:
        m (IsingModel): Model.
        initial (SpinState): Initial state.
        sweeps (int): Number of sweeps, `>= 0`.
        seed (int): Run seed.
        stream (Optional[str], optional): Random sub-stream name. Defaults to `ising`.

    Returns:
        Final state, per-sweep energy and magnetization series, and their summary
    """

    _check_state(m.n, initial)
    if sweeps < 0:
        raise EnlabValidationError("sweeps must be non-negative")
    rng = rng_stream(seed, stream or "ising")
    j = m.matrix()
    h = m.field()
    s = initial.array()
    energy = ising_energy(m, initial)
    energies = [energy]
    magnetizations = [magnetization(initial)]
    accepted = 0

    for _ in range(sweeps):
        sites = rng.integers(0, m.n, size=m.n)
        draws = rng.random(m.n)
        for i, u in zip(sites, draws):
            delta_e = 2.0 * s[i] * (float(j[i] @ s) + h[i])
            if metropolis_accept(delta_e, m, u):
                s[i] = -s[i]
                energy += delta_e
                accepted += 1
        energies.append(energy)
        magnetizations.append(float(s.sum()) / m.n)

    sampled = magnetizations[1:] if sweeps else magnetizations
    mean_abs = float(np.mean(np.abs(sampled)))
    logger.debug("Metropolis: %i sweeps at T=%r, <|m|> = %.4f", sweeps, m.temperature, mean_abs)
    return MetropolisRun(
        final_state=SpinState.of(s.tolist()),
        energies=energies,
        magnetizations=magnetizations,
        mean_abs_magnetization=mean_abs,
        acceptance_rate=accepted / (sweeps * m.n) if sweeps else 0.0,
    )
