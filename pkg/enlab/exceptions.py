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
Enlab exception classes.
"""


from __future__ import annotations

from typing import Optional


class EnlabError(Exception):
    """
    Enlab exception base class.
    """

    exit_code: int = 1


class EnlabValidationError(EnlabError, ValueError):
    """
    Error raised when an input value fails validation
    (invalid distributions, length mismatches, unknown identifiers).
    """

    exit_code = 2


class EnlabParseError(EnlabValidationError):
    """
    Error raised when a dataset, segmentation or configuration file cannot be parsed.
    """

    def __init__(self, msg: str, index: Optional[int] = None) -> None:
        self.index = index
        super().__init__(f"Record {index}: {msg}" if index is not None else msg)


class EnlabDomainError(EnlabValidationError):
    """
    Error raised when an argument lies outside the mathematical domain of an operation.
    """

    pass


class EnlabPreconditionError(EnlabValidationError):
    """
    Error raised when the state an operation requires does not hold.
    """

    pass


class EnlabNumericError(EnlabError, ArithmeticError):
    """
    Error raised when a non-finite value is produced during an iteration.
    """

    exit_code = 2

    def __init__(self, msg: str, step: Optional[int] = None) -> None:
        self.step = step
        super().__init__(f"Step {step}: {msg}" if step is not None else msg)


class EnlabCapacityError(EnlabError):
    """
    Error raised when an exhaustive enumeration or exact search exceeds its size bound.
    """

    exit_code = 3


class EnlabInvariantBreachError(EnlabError):
    """
    Error raised when data processed by an experiment violates a checked invariant.
    """

    exit_code = 4
