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
Exact energy and entropy model of the McCulloch-Pitts threshold neuron.

Weights act as pseudo-energy contributions: positive weights form the excitatory
potential, negative weights the inhibitory potential, and the sum of the negative
weights is the depth of the resting potential well. Activation probabilities are
computed by exhaustive enumeration of the `2^N` binary inputs, in exact rational
arithmetic.
"""


from __future__ import annotations

import math

from fractions import Fraction
from logging import getLogger
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from pydantic import confloat, root_validator, validator

from .entropy import (
    NATURAL_UNITS,
    PhysicalConstants,
    ProbabilityVector,
    landauer_energy,
    shannon_entropy,
)
from .exceptions import EnlabCapacityError, EnlabValidationError
from .types import Bit, EnlabModel, LogBase

logger = getLogger(__name__)

MAX_ENUMERATION_INPUTS = 24
ENUMERATION_CHUNK = 1 << 20
OUTPUT_UNIT_ENERGY = 1.0
DEFAULT_LEARNING_RATE = 0.1
POTENTIAL_TOLERANCE = 1e-12
GIBBS_TOLERANCE = 1e-9
# Inhibitory potentials are grouped after rounding to this many decimals
GROUP_KEY_DIGITS = 12

Weight = confloat(ge=-1.0, le=1.0)


class McpNeuron(EnlabModel):
    """
    McCulloch-Pitts neuron: `Y = 1` iff `sum(w_i x_i) > Q`.
    """

    weights: List[Weight]  # type: ignore[valid-type]
    """
    Input weights, each within `[-1, 1]`.
    """

    threshold: float = 0.0
    """
    Activation threshold `Q`.
    """

    @validator("weights")
    def validate_weights(cls, value: List[float]) -> List[float]:
        if not value:
            raise EnlabValidationError("A neuron needs at least one input")
        return value

    @property
    def n(self) -> int:
        return len(self.weights)


class PotentialSplit(EnlabModel):
    """
    Activation potential of one input, split into excitatory and inhibitory parts.
    """

    v_plus: float
    v_minus: float
    v_total: float

    @root_validator(skip_on_failure=True)
    def validate_split(cls, values: Dict[str, float]) -> Dict[str, float]:
        if values["v_plus"] < 0 or values["v_minus"] > 0:
            raise EnlabValidationError("Excitatory potential must be >= 0, inhibitory <= 0")
        if abs(values["v_plus"] + values["v_minus"] - values["v_total"]) > POTENTIAL_TOLERANCE:
            raise EnlabValidationError("v_total must equal v_plus + v_minus")
        return values


class MicrostateCensus(EnlabModel):
    """
    Count of the activating and non-activating input combinations of a neuron.
    """

    n: int
    omega_act: int
    omega_nonact: int
    p_act: Fraction

    @root_validator(skip_on_failure=True)
    def validate_census(cls, values: Dict[str, int]) -> Dict[str, int]:
        total = 2 ** values["n"]
        if values["omega_act"] + values["omega_nonact"] != total:
            raise EnlabValidationError("Microstate counts must add up to 2^n")
        if values["p_act"] != Fraction(values["omega_act"], total):
            raise EnlabValidationError("p_act must equal omega_act / 2^n")
        return values


class ActivationGroup(EnlabModel):
    """
    Microstates sharing the same inhibitory potential.
    """

    v_minus: float
    microstates: int
    activating: int

    def p_group(self, n: int) -> Fraction:
        return Fraction(self.microstates, 2**n)

    @property
    def p_conditional(self) -> Fraction:
        return Fraction(self.activating, self.microstates)


class ConditionalActivation(EnlabModel):
    """
    Activation probability assembled from the per-inhibitory-potential groups.
    """

    n: int
    p_act: Fraction
    groups: List[ActivationGroup]


class EntropyReport(EnlabModel):
    """
    Informational and thermodynamic entropy of a neuron's activation macrostates.

    `s_act`/`s_nonact` are `None` when the corresponding macrostate has no microstates.
    """

    p_act: Fraction
    h_bits: float
    s_act: Optional[float]
    s_nonact: Optional[float]

    @property
    def s_act_defined(self) -> bool:
        return self.s_act is not None

    @property
    def s_nonact_defined(self) -> bool:
        return self.s_nonact is not None


class GibbsReport(EnlabModel):
    """
    Split of a neuron's output energy into a structured and an unstructured part.
    """

    e_total: float
    e_str: float
    e_unstr: float
    s_total: float

    @root_validator(skip_on_failure=True)
    def validate_report(cls, values: Dict[str, float]) -> Dict[str, float]:
        if values["e_unstr"] < 0:
            raise EnlabValidationError("Unstructured energy must be non-negative")
        if abs(values["e_str"] + values["e_unstr"] - values["e_total"]) > GIBBS_TOLERANCE:
            raise EnlabValidationError("e_total must equal e_str + e_unstr")
        return values


class LabelledInput(EnlabModel):
    """
    Binary input vector with its target output.
    """

    x: List[Bit]
    label: Bit


class TrainingTrace(EnlabModel):
    """
    Per-epoch record of a perceptron training run.
    """

    epochs: int
    error_history: List[int]
    effective_set_size: int
    census_history: List[MicrostateCensus]
    entropy_history: List[float]
    neuron: McpNeuron
    subset_p_act: Optional[Fraction] = None

    @root_validator(skip_on_failure=True)
    def validate_trace(cls, values: Dict[str, object]) -> Dict[str, object]:
        neuron = values["neuron"]
        assert isinstance(neuron, McpNeuron)
        if int(values["effective_set_size"]) > 2**neuron.n:  # type: ignore[call-overload]
            raise EnlabValidationError("The training subset cannot exceed 2^N inputs")
        return values

    @property
    def converged(self) -> bool:
        return bool(self.error_history) and self.error_history[-1] == 0


def _check_input(neuron: McpNeuron, x: Sequence[int]) -> None:
    if len(x) != neuron.n:
        raise EnlabValidationError(f"Input has {len(x)} values, neuron expects {neuron.n}")
    if any(v not in (0, 1) for v in x):
        raise EnlabValidationError(f"Input values must be 0 or 1: {list(x)!r}")


def _split(weights: Sequence[float], x: Sequence[int]) -> Tuple[float, float]:
    # Accumulate left to right; the vectorised enumeration below uses the same order,
    # so single inputs and the census always agree at the threshold boundary.
    v_plus = 0.0
    v_minus = 0.0
    for w, xi in zip(weights, x):
        if w > 0:
            v_plus += w * xi
        elif w < 0:
            v_minus += w * xi
    return v_plus, v_minus


def activation_potential(neuron: McpNeuron, x: Sequence[int]) -> PotentialSplit:
    """
    Excitatory, inhibitory and total activation potential of the neuron for one input.

    Args:
        neuron (McpNeuron): Neuron.
        x (Sequence[int]): Binary input vector of length N.

    Returns:
        Potential split
    """

    _check_input(neuron, x)
    v_plus, v_minus = _split(neuron.weights, x)
    return PotentialSplit(v_plus=v_plus, v_minus=v_minus, v_total=v_plus + v_minus)


def resting_potential(neuron: McpNeuron) -> float:
    """
    Resting potential: the sum of the inhibitory weights (the depth of the well).
    """

    return _split(neuron.weights, [1] * neuron.n)[1]


def fire(neuron: McpNeuron, x: Sequence[int]) -> int:
    """
    Neuron output for one input. Activation is strict: `V = Q` gives 0.
    """

    return int(activation_potential(neuron, x).v_total > neuron.threshold)


def _check_capacity(neuron: McpNeuron) -> None:
    if neuron.n > MAX_ENUMERATION_INPUTS:
        raise EnlabCapacityError(
            f"Exhaustive enumeration supports at most {MAX_ENUMERATION_INPUTS} inputs "
            f"(neuron has {neuron.n})",
        )


def _enumerate_potentials(neuron: McpNeuron) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    Yield `(v_plus, v_minus)` arrays for all `2^N` inputs, in chunks.

    Input `k` has `x_i = (k >> (N - 1 - i)) & 1`, so the first input varies slowest.
    """

    _check_capacity(neuron)
    n = neuron.n
    total = 2**n
    for start in range(0, total, ENUMERATION_CHUNK):
        index = np.arange(start, min(start + ENUMERATION_CHUNK, total), dtype=np.int64)
        v_plus = np.zeros(index.size, dtype=np.float64)
        v_minus = np.zeros(index.size, dtype=np.float64)
        for i, w in enumerate(neuron.weights):
            bits = (index >> (n - 1 - i)) & 1
            if w > 0:
                v_plus += bits * w
            elif w < 0:
                v_minus += bits * w
        yield v_plus, v_minus


def microstate_census(neuron: McpNeuron) -> MicrostateCensus:
    """
    Count the activating inputs among all `2^N` equiprobable inputs.

    Raises:
        EnlabCapacityError: If the neuron has more than 24 inputs.

    Returns:
        Microstate census
    """

    omega_act = 0
    for v_plus, v_minus in _enumerate_potentials(neuron):
        omega_act += int(np.count_nonzero((v_plus + v_minus) > neuron.threshold))
    total = 2**neuron.n
    logger.debug("Census for %i inputs: %i of %i microstates activate", neuron.n, omega_act, total)
    return MicrostateCensus(
        n=neuron.n,
        omega_act=omega_act,
        omega_nonact=total - omega_act,
        p_act=Fraction(omega_act, total),
    )


def conditional_activation(neuron: McpNeuron) -> ConditionalActivation:
    """
    Activation probability as the sum, over inhibitory-potential groups, of the group
    probability times the probability that the excitatory potential overcomes the
    effective threshold within the group. Always equal to the census `p_act`.

    Returns:
        Total activation probability and the per-group table (strongest inhibition last)
    """

    counts: Dict[float, List[int]] = {}
    for v_plus, v_minus in _enumerate_potentials(neuron):
        activating = (v_plus + v_minus) > neuron.threshold
        keys, sizes = np.unique(v_minus, return_counts=True)
        act_keys, act_sizes = np.unique(v_minus[activating], return_counts=True)
        for key, size in zip(keys.tolist(), sizes.tolist()):
            counts.setdefault(round(key, GROUP_KEY_DIGITS), [0, 0])[0] += size
        for key, size in zip(act_keys.tolist(), act_sizes.tolist()):
            counts[round(key, GROUP_KEY_DIGITS)][1] += size
    groups = [
        ActivationGroup(v_minus=key, microstates=size, activating=act)
        for key, (size, act) in sorted(counts.items(), reverse=True)
    ]
    p_act = sum(
        (group.p_group(neuron.n) * group.p_conditional for group in groups),
        Fraction(0),
    )
    return ConditionalActivation(n=neuron.n, p_act=p_act, groups=groups)


def subset_activation(neuron: McpNeuron, subset: Sequence[Sequence[int]]) -> Fraction:
    """
    Activation probability restricted to the distinct inputs of a training subset `T`,
    `Omega_act(T) / |T|`.

    Args:
        neuron (McpNeuron): Neuron.
        subset (Sequence[Sequence[int]]): Input vectors (duplicates are counted once).

    Returns:
        Exact activation probability over the subset
    """

    distinct = {tuple(int(v) for v in x) for x in subset}
    if not distinct:
        raise EnlabValidationError("The input subset must not be empty")
    active = sum(fire(neuron, x) for x in distinct)
    return Fraction(active, len(distinct))


def _binary_entropy_bits(p: Fraction) -> float:
    return shannon_entropy(ProbabilityVector(p=[float(p), float(1 - p)]), LogBase.bits)


def _macrostate_entropy(n: int, p: Fraction, consts: PhysicalConstants) -> Optional[float]:
    if p == 0:
        return None
    return consts.k_b * (n * math.log(2) + math.log(p))


def entropy_report(
    neuron: McpNeuron,
    consts: PhysicalConstants = NATURAL_UNITS,
) -> EntropyReport:
    """
    Binary Shannon entropy of the activation probability, and the thermodynamic
    entropy of the activation and non-activation macrostates.

    Args:
        neuron (McpNeuron): Neuron.
        consts (PhysicalConstants, optional): Physical constants.

    Returns:
        Entropy report
    """

    p_act = microstate_census(neuron).p_act
    return EntropyReport(
        p_act=p_act,
        h_bits=_binary_entropy_bits(p_act),
        s_act=_macrostate_entropy(neuron.n, p_act, consts),
        s_nonact=_macrostate_entropy(neuron.n, 1 - p_act, consts),
    )


def gibbs_decomposition(
    neuron: McpNeuron,
    temperature: float,
    consts: PhysicalConstants = NATURAL_UNITS,
) -> GibbsReport:
    """
    Split the output energy into its structured part (one normalised unit of energy per
    activating microstate) and its unstructured part (`|V_rest|` bits erased per
    microstate, at the Landauer cost).

    Args:
        neuron (McpNeuron): Neuron.
        temperature (float): Temperature.
        consts (PhysicalConstants, optional): Physical constants.

    Returns:
        Gibbs report
    """

    omega = 2**neuron.n
    depth = abs(resting_potential(neuron))
    e_unstr = omega * depth * landauer_energy(temperature, consts)
    e_str = microstate_census(neuron).omega_act * OUTPUT_UNIT_ENERGY
    return GibbsReport(
        e_total=e_str + e_unstr,
        e_str=e_str,
        e_unstr=e_unstr,
        s_total=omega * depth * consts.k_b * math.log(2),
    )


def _coerce_dataset(
    dataset: Sequence[Union[LabelledInput, Tuple[Sequence[int], int]]],
) -> List[LabelledInput]:
    return [
        item if isinstance(item, LabelledInput) else LabelledInput(x=list(item[0]), label=item[1])
        for item in dataset
    ]


def _clamp(value: float) -> float:
    return min(1.0, max(-1.0, value))


def train_perceptron(
    neuron: McpNeuron,
    dataset: Sequence[Union[LabelledInput, Tuple[Sequence[int], int]]],
    max_epochs: int = 100,
    learning_rate: float = DEFAULT_LEARNING_RATE,
) -> TrainingTrace:
    """
    Train the neuron with the perceptron rule, recording the census and entropy after
    every epoch. The trainer plays the part of the external agent shaping the neuron's
    pseudo-energy: it restricts the activating microstates to those the training
    subset calls for.

    Weights are clamped to `[-1, 1]`; the threshold is learned as a bias.
    Training stops after the first epoch without errors, or at `max_epochs`.

    Args:
        neuron (McpNeuron): Initial neuron (not modified).
        dataset (Sequence): Labelled binary inputs, in presentation order.
        max_epochs (int, optional): Epoch limit. Defaults to 100.
        learning_rate (float, optional): Learning rate. Defaults to 0.1.

    Returns:
        Training trace, including the trained neuron
    """

    if max_epochs < 0:
        raise EnlabValidationError(f"max_epochs must not be negative (got {max_epochs!r})")
    samples = _coerce_dataset(dataset)
    if not samples:
        return TrainingTrace(
            epochs=0,
            error_history=[],
            effective_set_size=0,
            census_history=[],
            entropy_history=[],
            neuron=neuron,
        )
    for i, sample in enumerate(samples):
        if len(sample.x) != neuron.n:
            raise EnlabValidationError(
                f"Sample {i} has {len(sample.x)} inputs, neuron expects {neuron.n}",
            )
    _check_capacity(neuron)

    weights = list(neuron.weights)
    threshold = neuron.threshold
    current = neuron
    error_history: List[int] = []
    census_history: List[MicrostateCensus] = []
    entropy_history: List[float] = []

    for epoch in range(max_epochs):
        errors = 0
        for sample in samples:
            v_plus, v_minus = _split(weights, sample.x)
            error = sample.label - int(v_plus + v_minus > threshold)
            if error:
                errors += 1
                weights = [
                    _clamp(w + learning_rate * error * xi) for w, xi in zip(weights, sample.x)
                ]
                threshold -= learning_rate * error
        current = McpNeuron(weights=weights, threshold=threshold)
        census = microstate_census(current)
        error_history.append(errors)
        census_history.append(census)
        entropy_history.append(_binary_entropy_bits(census.p_act))
        logger.debug("Epoch %i: %i errors, P_act = %s", epoch + 1, errors, census.p_act)
        if errors == 0:
            break

    if error_history and error_history[-1]:
        logger.info(
            "Perceptron stopped after %i epochs with %i errors",
            len(error_history),
            error_history[-1],
        )
    subset = [sample.x for sample in samples]
    return TrainingTrace(
        epochs=len(error_history),
        error_history=error_history,
        effective_set_size=len({tuple(x) for x in subset}),
        census_history=census_history,
        entropy_history=entropy_history,
        neuron=current,
        subset_p_act=subset_activation(current, subset),
    )
