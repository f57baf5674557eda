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
Generic energy-landscape model: units sitting in potential wells, bonds between them,
the three fundamental thresholds, total-energy accounting and a Langevin descent.

Thresholds:

* rest threshold (`Tr1`): the energy of the whole system at rest
* activation threshold (`Tr2`): a unit is activated once its energy exceeds it
* structural stability threshold (`Tr3`): a bond breaks once its energy exceeds it
"""


from __future__ import annotations

import math

from logging import getLogger
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from pydantic import NonNegativeFloat, PositiveFloat, root_validator

from .exceptions import EnlabNumericError, EnlabPreconditionError, EnlabValidationError
from .types import BaseEnum, EnlabModel
from .util import rng_stream

logger = getLogger(__name__)


class LandscapeUnit(EnlabModel):
    """
    Structural unit sitting in a potential well.
    """

    id: str
    """
    Unit identifier, unique within a landscape.
    """

    u_rest: float
    """
    Resting (minimum) potential energy of the unit.
    """

    tr2: float
    """
    Activation threshold. The difference `tr2 - u_rest` is the capacity of the well.
    """

    delta_u: float = 0.0
    """
    Additional energy currently held by the unit.
    """

    @root_validator(skip_on_failure=True)
    def validate_well(cls, values: Dict[str, float]) -> Dict[str, float]:
        if not values["tr2"] > values["u_rest"]:
            raise EnlabValidationError(
                f"Unit {values['id']!r}: activation threshold must exceed the resting energy",
            )
        return values

    @property
    def energy(self) -> float:
        return self.u_rest + self.delta_u

    @property
    def capacity(self) -> float:
        return self.tr2 - self.u_rest


class LandscapeBond(EnlabModel):
    """
    Undirected bond between two units.
    """

    source: str
    target: str

    w_rest: float
    """
    Minimum (resting) bond energy.
    """

    tr3: float
    """
    Structural stability threshold.
    """

    intact: bool = True

    @root_validator(skip_on_failure=True)
    def validate_bond(cls, values: Dict[str, float]) -> Dict[str, float]:
        if values["tr3"] < values["w_rest"]:
            raise EnlabValidationError(
                f"Bond {values['source']!r}-{values['target']!r}: "
                "stability threshold must not be below the resting energy",
            )
        if values["source"] == values["target"]:
            raise EnlabValidationError(f"Bond on unit {values['source']!r} must join two units")
        return values

    @property
    def key(self) -> Tuple[str, str]:
        return (min(self.source, self.target), max(self.source, self.target))


class EnergyLandscape(EnlabModel):
    """
    Energy landscape: units and the bonds between them.
    """

    units: List[LandscapeUnit] = []
    bonds: List[LandscapeBond] = []

    @root_validator(skip_on_failure=True)
    def validate_landscape(cls, values: Dict[str, List]) -> Dict[str, List]:
        ids = [unit.id for unit in values["units"]]
        if len(set(ids)) != len(ids):
            raise EnlabValidationError("Unit identifiers must be unique")
        known = set(ids)
        seen = set()
        for bond in values["bonds"]:
            for end in (bond.source, bond.target):
                if end not in known:
                    raise EnlabValidationError(f"Bond references unknown unit {end!r}")
            if bond.key in seen:
                raise EnlabValidationError(
                    f"Duplicate bond between {bond.key[0]!r} and {bond.key[1]!r}",
                )
            seen.add(bond.key)
        return values

    def unit(self, unit_id: str) -> LandscapeUnit:
        for unit in self.units:
            if unit.id == unit_id:
                return unit
        raise EnlabValidationError(f"Unknown unit {unit_id!r}")


class EventKind(BaseEnum):
    activated = "activated"
    bond_broken = "bond-broken"


class LandscapeEvent(EnlabModel):
    """
    Threshold crossing caused by an energy injection.
    """

    kind: EventKind
    unit: Optional[str] = None
    bond: Optional[Tuple[str, str]] = None


class InjectionResult(EnlabModel):
    """
    Landscape after an energy injection, with the threshold crossings it caused.
    """

    landscape: EnergyLandscape
    events: List[LandscapeEvent]

    @property
    def broken_bonds(self) -> int:
        return sum(1 for bond in self.landscape.bonds if not bond.intact)

    @property
    def broken_fraction(self) -> float:
        """
        Fraction of broken bonds, the raw statistic for bifurcation analysis.
        """

        bonds = self.landscape.bonds
        return self.broken_bonds / len(bonds) if bonds else 0.0


class LangevinConfig(EnlabModel):
    """
    Overdamped Langevin descent in a one-dimensional potential.
    """

    potential: Callable[[float], float]
    gradient: Callable[[float], float]
    dt: PositiveFloat
    noise_scale: NonNegativeFloat = 0.0
    seed: int = 0
    steps: int = 0

    @root_validator(skip_on_failure=True)
    def validate_steps(cls, values: Dict[str, int]) -> Dict[str, int]:
        if values["steps"] < 0:
            raise EnlabValidationError("steps must be non-negative")
        return values


def total_energy(landscape: EnergyLandscape) -> float:
    """
    Total energy: unit energies plus the resting energy of every intact bond.
    """

    return sum(unit.energy for unit in landscape.units) + sum(
        bond.w_rest for bond in landscape.bonds if bond.intact
    )


def rest_threshold(landscape: EnergyLandscape) -> float:
    """
    Rest threshold `Tr1`, the energy of the landscape at rest.

    Raises:
        EnlabPreconditionError: If any unit holds additional energy.
    """

    for unit in landscape.units:
        if unit.delta_u != 0:
            raise EnlabPreconditionError(
                f"Landscape is not at rest: unit {unit.id!r} holds {unit.delta_u!r}",
            )
    units = sum(unit.u_rest for unit in landscape.units)
    return units + sum(bond.w_rest for bond in landscape.bonds)


def is_activated(u: LandscapeUnit) -> bool:
    """
    Whether the unit's energy strictly exceeds its activation threshold.
    """

    return u.energy > u.tr2


def bond_stable(b: LandscapeBond, delta_u: float) -> bool:
    """
    Whether the bond survives an additional load; stability holds up to and including `tr3`.
    """

    return b.w_rest + delta_u <= b.tr3


def inject_energy(landscape: EnergyLandscape, allocation: Mapping[str, float]) -> InjectionResult:
    """
    Add energy to units and re-evaluate the thresholds.

    The load on a bond is the sum of the additional energy held by its two units.
    Events are reported for threshold crossings only: units that become activated and
    bonds that break. Broken bonds stay broken.

    Args:
        landscape (EnergyLandscape): Landscape (not modified).
        allocation (Mapping[str, float]): Non-negative energy per unit identifier.

    Returns:
        New landscape and the event list
    """

    known = {unit.id for unit in landscape.units}
    for unit_id, amount in allocation.items():
        if unit_id not in known:
            raise EnlabValidationError(f"Unknown unit {unit_id!r}")
        if amount < 0 or not math.isfinite(amount):
            raise EnlabValidationError(
                f"Allocation for unit {unit_id!r} must be non-negative (got {amount!r})",
            )

    events: List[LandscapeEvent] = []
    units: List[LandscapeUnit] = []
    for unit in landscape.units:
        updated = unit.copy(update={"delta_u": unit.delta_u + allocation.get(unit.id, 0.0)})
        if is_activated(updated) and not is_activated(unit):
            events.append(LandscapeEvent(kind=EventKind.activated, unit=unit.id))
        units.append(updated)

    loads = {unit.id: unit.delta_u for unit in units}
    bonds: List[LandscapeBond] = []
    for bond in landscape.bonds:
        if bond.intact and not bond_stable(bond, loads[bond.source] + loads[bond.target]):
            events.append(LandscapeEvent(kind=EventKind.bond_broken, bond=bond.key))
            bond = bond.copy(update={"intact": False})  # noqa: PLW2901
        bonds.append(bond)

    logger.debug("Energy injection into %i units: %i events", len(allocation), len(events))
    return InjectionResult(landscape=EnergyLandscape(units=units, bonds=bonds), events=events)


def bond_energy(
    component_energies: Sequence[float],
    composite_energies: Sequence[float],
) -> float:
    """
    Bond energy of a composite: the energy of its separate parts minus the energy of
    the bound composite.
    """

    return float(sum(component_energies)) - float(sum(composite_energies))


def landscape_from_weights(weights: Sequence[Sequence[float]], capacity: float) -> EnergyLandscape:
    """
    Landscape of a layer of threshold units at rest: unit `j` rests at the sum of its
    incoming weights `sum_i w_ij`, so the rest threshold is the sum of the whole matrix.

    Args:
        weights (Sequence[Sequence[float]]): Weight matrix,
            `weights[i][j]` from input `i` to unit `j`.
        capacity (float): Well capacity `tr2 - u_rest` of every unit, `> 0`.

    Returns:
        Landscape with one unit per column and no bonds
    """

    if capacity <= 0:
        raise EnlabValidationError(f"Well capacity must be positive (got {capacity!r})")
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2:  # noqa: PLR2004
        raise EnlabValidationError("Weights must form a matrix")
    u_rest = w.sum(axis=0)
    return EnergyLandscape(
        units=[
            LandscapeUnit(id=f"u{j}", u_rest=float(u), tr2=float(u) + capacity)
            for j, u in enumerate(u_rest)
        ],
    )


def langevin_descent(cfg: LangevinConfig, x0: float) -> List[float]:
    """
    Euler-Maruyama integration of `dx = -V'(x) dt + sigma dW`, seeded.

    Args:
        cfg (LangevinConfig): Potential, step and noise configuration.
        x0 (float): Starting position.

    Raises:
        EnlabNumericError: If the position or potential becomes non-finite.

    Returns:
        Positions, starting with `x0` (`steps + 1` values)
    """

    rng = rng_stream(cfg.seed, "langevin")
    noise = cfg.noise_scale * math.sqrt(cfg.dt) * rng.standard_normal(cfg.steps)
    x = float(x0)
    trajectory = [x]
    for step in range(cfg.steps):
        x = x - cfg.gradient(x) * cfg.dt + float(noise[step])
        if not (math.isfinite(x) and math.isfinite(cfg.potential(x))):
            raise EnlabNumericError(f"Non-finite value at x={x!r}", step=step + 1)
        trajectory.append(x)
    return trajectory
