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
Entropy and information-measure primitives.

Informational entropies default to base 2; thermodynamic entropies use the
natural logarithm and are scaled by the Boltzmann constant of a
`PhysicalConstants` instance (1 in natural units).
"""


from __future__ import annotations

import math

from logging import getLogger
from typing import List, Sequence, Union

import numpy as np

from pydantic import PositiveFloat, validator
from scipy.special import entr
from typing_extensions import Self

from .exceptions import EnlabDomainError, EnlabValidationError
from .types import BaseEnum, EnlabModel, LogBase

logger = getLogger(__name__)

SI_BOLTZMANN = 1.380649e-23  # J/K
NORMALISATION_TOLERANCE = 1e-12

LogBaseLike = Union[LogBase, float]


class PhysicalConstants(EnlabModel):
    """
    Physical constants used by the thermodynamic quantities.

    The default Boltzmann constant of 1 ("natural units") makes informational and
    thermodynamic entropies directly comparable.
    """

    k_b: PositiveFloat = 1.0
    """
    Boltzmann constant, in energy per unit temperature.
    """

    @classmethod
    def si(cls) -> Self:
        """
        Constants in SI units (`k_B = 1.380649e-23 J/K`).
        """

        return cls(k_b=SI_BOLTZMANN)


NATURAL_UNITS = PhysicalConstants()


def _check_distribution(values: np.ndarray, what: str) -> np.ndarray:
    if values.size == 0:
        raise EnlabValidationError(f"{what} must not be empty")
    if not np.all(np.isfinite(values)):
        raise EnlabValidationError(f"{what} contains non-finite values")
    if np.any(values < 0):
        raise EnlabValidationError(f"{what} contains negative probabilities")
    total = float(values.sum())
    if abs(total - 1.0) > NORMALISATION_TOLERANCE:
        raise EnlabValidationError(f"{what} is not normalised (sum = {total!r})")
    return values


class ProbabilityVector(EnlabModel):
    """
    Discrete probability distribution over an ordered list of outcomes.
    """

    p: List[float]

    @validator("p")
    def validate_p(cls, value: List[float]) -> List[float]:
        _check_distribution(np.asarray(value, dtype=float), "Probability vector")
        return value

    @classmethod
    def uniform(cls, n: int) -> Self:
        """
        Equiprobable distribution over `n` outcomes.
        """

        if n < 1:
            raise EnlabDomainError(f"A distribution needs at least one outcome (got {n})")
        return cls(p=[1.0 / n] * n)

    def array(self) -> np.ndarray:
        return np.asarray(self.p, dtype=float)


class JointDistribution(EnlabModel):
    """
    Joint distribution of two discrete variables.
    Rows index outcomes of X, columns index outcomes of Y.
    """

    cells: List[List[float]]

    @validator("cells")
    def validate_cells(cls, value: List[List[float]]) -> List[List[float]]:
        if not value or any(len(row) != len(value[0]) for row in value):
            raise EnlabValidationError("Joint distribution must be a non-empty rectangular matrix")
        _check_distribution(np.asarray(value, dtype=float), "Joint distribution")
        return value

    @classmethod
    def from_array(cls, cells: np.ndarray) -> Self:
        return cls(cells=np.asarray(cells, dtype=float).tolist())

    @classmethod
    def product(cls, px: Sequence[float], py: Sequence[float]) -> Self:
        """
        Joint distribution of two independent variables with the given marginals.
        """

        return cls.from_array(np.outer(np.asarray(px, dtype=float), np.asarray(py, dtype=float)))

    def array(self) -> np.ndarray:
        return np.asarray(self.cells, dtype=float)

    def transpose(self) -> Self:
        return self.from_array(self.array().T)

    def marginal_x(self) -> np.ndarray:
        return self.array().sum(axis=1)

    def marginal_y(self) -> np.ndarray:
        return self.array().sum(axis=0)


class Conditioning(BaseEnum):
    """
    Variable a conditional entropy is conditioned on.
    """

    x = "x"
    y = "y"


class MutualInformationRoute(BaseEnum):
    """
    Identity used to compute the mutual information of a joint distribution.

    * `entropy-sum` - `H(X) + H(Y) - H(X,Y)`
    * `given-y` - `H(X) - H(X|Y)`
    * `given-x` - `H(Y) - H(Y|X)`
    """

    entropy_sum = "entropy-sum"
    given_y = "given-y"
    given_x = "given-x"


def _log_base(base: LogBaseLike) -> float:
    try:
        return math.log(LogBase(base).value)
    except ValueError:
        raise EnlabValidationError(f"Unsupported logarithm base: {base!r}") from None


def _entropy_nats(p: np.ndarray) -> float:
    # entr(x) = -x ln x, with entr(0) = 0.
    return float(entr(p).sum())


def shannon_entropy(p: ProbabilityVector, base: LogBaseLike = LogBase.bits) -> float:
    """
    Shannon entropy `-sum(p_i log p_i)` of a distribution.
    Zero-probability outcomes contribute nothing.

    Args:
        p (ProbabilityVector): Distribution.
        base (LogBaseLike, optional): Logarithm base, 2 or e. Defaults to 2.

    Returns:
        Entropy in bits or nats
    """

    return _entropy_nats(p.array()) / _log_base(base)


def boltzmann_entropy(omega: int, consts: PhysicalConstants = NATURAL_UNITS) -> float:
    """
    Boltzmann entropy `k_B ln(omega)` of a macrostate with `omega` microstates.

    Args:
        omega (int): Number of accessible microstates.
        consts (PhysicalConstants, optional): Physical constants.

    Raises:
        EnlabDomainError: If no microstate is accessible.

    Returns:
        Entropy in energy per unit temperature
    """

    if omega < 1:
        raise EnlabDomainError(f"At least one accessible microstate is required (got {omega})")
    return consts.k_b * math.log(omega)


def gibbs_entropy(p: ProbabilityVector, consts: PhysicalConstants = NATURAL_UNITS) -> float:
    """
    Gibbs entropy `-k_B sum(p_i ln p_i)` of microstates with unequal probabilities.
    Reduces to the Boltzmann entropy for a uniform distribution.
    """

    return consts.k_b * _entropy_nats(p.array())


def von_neumann_entropy(eigenvalues: ProbabilityVector) -> float:
    """
    Von Neumann entropy, in nats, from the eigenvalues of a density matrix.
    """

    return _entropy_nats(eigenvalues.array())


def joint_entropy(j: JointDistribution, base: LogBaseLike = LogBase.bits) -> float:
    return _entropy_nats(j.array().ravel()) / _log_base(base)


def conditional_entropy(
    j: JointDistribution,
    given: Union[Conditioning, str] = Conditioning.y,
    base: LogBaseLike = LogBase.bits,
) -> float:
    """
    Conditional entropy, computed directly as `-sum p(x,y) log p(a|b)`.

    Args:
        j (JointDistribution): Joint distribution.
        given (Union[Conditioning, str], optional): Conditioning variable.
            `y` gives `H(X|Y)`, `x` gives `H(Y|X)`. Defaults to `y`.
        base (LogBaseLike, optional): Logarithm base. Defaults to 2.

    Returns:
        Conditional entropy
    """

    cells = j.array()
    if Conditioning(given) is Conditioning.y:
        marginal = np.broadcast_to(cells.sum(axis=0, keepdims=True), cells.shape)
    else:
        marginal = np.broadcast_to(cells.sum(axis=1, keepdims=True), cells.shape)
    mask = cells > 0
    conditional = cells[mask] / marginal[mask]
    return float(-(cells[mask] * np.log(conditional)).sum()) / _log_base(base)


def mutual_information(
    j: JointDistribution,
    base: LogBaseLike = LogBase.bits,
    route: Union[MutualInformationRoute, str] = MutualInformationRoute.entropy_sum,
) -> float:
    """
    Mutual information `I(X;Y)` of a joint distribution.

    All routes agree to numerical precision; the default is `H(X) + H(Y) - H(X,Y)`.
    The result is symmetric in X and Y, and zero for product distributions.

    Args:
        j (JointDistribution): Joint distribution.
        base (LogBaseLike, optional): Logarithm base. Defaults to 2.
        route (Union[MutualInformationRoute, str], optional): Identity to evaluate.

    Returns:
        Mutual information
    """

    h_x = _entropy_nats(j.marginal_x()) / _log_base(base)
    h_y = _entropy_nats(j.marginal_y()) / _log_base(base)
    route = MutualInformationRoute(route)
    if route is MutualInformationRoute.given_y:
        return h_x - conditional_entropy(j, Conditioning.y, base)
    if route is MutualInformationRoute.given_x:
        return h_y - conditional_entropy(j, Conditioning.x, base)
    return h_x + h_y - joint_entropy(j, base)


def landauer_energy(temperature: float, consts: PhysicalConstants = NATURAL_UNITS) -> float:
    """
    Minimum energy dissipated by erasing one bit, `k_B T ln 2`.

    Args:
        temperature (float): Absolute temperature.
        consts (PhysicalConstants, optional): Physical constants.

    Raises:
        EnlabDomainError: If the temperature is negative.

    Returns:
        Energy, in joules for SI constants or natural units otherwise
    """

    if temperature < 0:
        raise EnlabDomainError(f"Temperature must be non-negative (got {temperature!r})")
    return consts.k_b * temperature * math.log(2)


def boltzmann_distribution(
    energies: Sequence[float],
    temperature: float,
    consts: PhysicalConstants = NATURAL_UNITS,
) -> ProbabilityVector:
    """
    Equilibrium distribution `p_i ~ exp(-E_i / k_B T)` over a set of state energies.

    Args:
        energies (Sequence[float]): State energies.
        temperature (float): Temperature, strictly positive.
        consts (PhysicalConstants, optional): Physical constants.

    Returns:
        Probability of each state
    """

    if temperature <= 0:
        raise EnlabDomainError(f"Temperature must be positive (got {temperature!r})")
    e = np.asarray(energies, dtype=float)
    if e.size == 0:
        raise EnlabValidationError("At least one state energy is required")
    weights = np.exp(-(e - e.min()) / (consts.k_b * temperature))
    p = weights / weights.sum()
    logger.debug("Boltzmann distribution at T=%r over %i states", temperature, e.size)
    return ProbabilityVector(p=p.tolist())
