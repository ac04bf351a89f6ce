"""Exceptions and warnings raised by ``birkhoff-interp``.

Every error derives from ``BirkhoffError`` so that callers (the CLI in
particular) can separate problems with the input data, solver failures
and oracle failures with a single ``except`` clause each.
"""

from __future__ import annotations

import typing

if typing.TYPE_CHECKING:
    from .poly import Polynomial

__all__ = [
    "BirkhoffError",
    "DependentConditionsError",
    "DuplicateConditionError",
    "PolyaConditionWarning",
    "PolynomialParseError",
    "ProblemError",
    "ProblemFileError",
    "SingularSystemError",
    "SolverError",
    "UnsupportedConditionError",
]


class BirkhoffError(Exception):
    """Base class for all ``birkhoff-interp`` errors."""

    def __init__(self, message: str) -> None:
        super().__init__(message)


class ProblemError(BirkhoffError, ValueError):
    """Exception for invalid interpolation problem data."""


class DuplicateConditionError(ProblemError):
    """The same interpolation condition was given more than once."""


class ProblemFileError(ProblemError):
    """Exception for malformed problem files.

    ``location`` is either a ``"line L, column C"`` position for syntax
    errors, or a field path such as ``"conditions[2].operator"``.
    """

    def __init__(self, message: str, location: str | None = None) -> None:
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class PolynomialParseError(ProblemError):
    """Text is not a polynomial in the canonical grammar."""


class SolverError(BirkhoffError):
    """A recursive solver could not complete."""


class DependentConditionsError(SolverError):
    """The degree cap was exceeded before every condition was accepted.

    ``certificate`` is the last candidate polynomial. It is annihilated
    by every functional up to ``step``, and for Algorithm 2 by every
    later one too.
    """

    def __init__(
        self,
        message: str,
        step: int | None = None,
        certificate: Polynomial | None = None,
    ) -> None:
        self.step = step
        self.certificate = certificate
        super().__init__(message)


class UnsupportedConditionError(SolverError):
    """A functional is outside the class a solver handles."""


class SingularSystemError(BirkhoffError):
    """The oracle met a singular Vandermonde system."""


class PolyaConditionWarning(Warning):
    """Warning for incidence matrices failing the Pólya check."""

    def __init__(self, message: str) -> None:
        super().__init__(message)
