"""Oracle checks on solver output.

``verify_report`` recomputes every property a ``SolveReport`` promises
with the Vandermonde oracle alone, so a bug in the recursive solvers
cannot hide behind itself.
"""

from __future__ import annotations

import logging
import typing
from fractions import Fraction

from .conditions import apply_functional
from .errors import SingularSystemError
from .oracle import (
    check_triangularity,
    is_strongly_proper,
    leading_minors,
    oracle_interpolate,
)
from .solver import SolveReport

__all__ = ["Verification", "failed_checks", "pivot_orientation", "verify_report"]

logger = logging.getLogger(__name__)


class Verification(typing.TypedDict):
    """Verdicts of ``verify_report``; ``True`` means the check passed."""

    triangular: bool
    interpolates: bool
    oracle_match: bool
    strongly_proper: bool
    determinant_ratio: bool
    span_equal: bool
    degree_bound: bool


def _span_equal(report: SolveReport) -> bool:
    exponents = report.monomial_exponents
    for k, g in enumerate(report.newton_basis):
        allowed = set(exponents[: k + 1])
        support = {n for n, c in enumerate(g.coeffs) if c}
        if not support <= allowed or g.coeff(exponents[k]) == 0:
            return False
    return True


def _determinant_ratio(report: SolveReport) -> bool:
    minors = [Fraction(1), *leading_minors(report.monomial_basis, report.functionals)]
    return all(
        pivot * minors[k] == minors[k + 1] for k, pivot in enumerate(report.pivots)
    )


def verify_report(report: SolveReport) -> Verification:
    """Checks a solver result against the oracle.

    Args:
        report: Output of ``algorithm1`` or ``algorithm2``.

    Returns:
        One verdict per property:

        * ``triangular``: the Newton-type basis is triangular under the
          final condition order;
        * ``interpolates``: ``L_i(p) = y_i`` for every condition;
        * ``oracle_match``: solving the Vandermonde system over the
          monomial basis gives the same interpolant;
        * ``strongly_proper``: every leading minor is nonzero;
        * ``determinant_ratio``: ``pivot_k * det(V_{k-2}) = det(V_{k-1})``;
        * ``span_equal``: the k-th Newton polynomial lies in the span of
          the first k monomials and has a nonzero k-th coefficient;
        * ``degree_bound``: the interpolant's degree does not exceed the
          largest monomial exponent.
    """
    basis = report.monomial_basis
    try:
        oracle_match = oracle_interpolate(basis, report.problem) == report.interpolant
    except SingularSystemError:
        oracle_match = False
    degree = report.interpolant.degree
    verification = Verification(
        triangular=check_triangularity(report.newton_basis, report.functionals).ok,
        interpolates=all(
            apply_functional(f, report.interpolant) == y
            for f, y in zip(report.functionals, report.values, strict=True)
        ),
        oracle_match=oracle_match,
        strongly_proper=is_strongly_proper(basis, report.functionals),
        determinant_ratio=_determinant_ratio(report),
        span_equal=_span_equal(report),
        degree_bound=degree is None or degree <= max(report.monomial_exponents),
    )
    if failed := failed_checks(verification):
        logger.debug("verification failed: %s", ", ".join(failed))
    return verification


def failed_checks(verification: Verification) -> list[str]:
    """Names of the checks that did not pass, in a fixed order."""
    return [name for name, ok in verification.items() if not ok]


def pivot_orientation(report: SolveReport) -> list[tuple[Fraction, Fraction]]:
    """Pairs ``(det(V_{k-1}) / det(V_{k-2}), det(V_{k-2}) / det(V_{k-1}))``.

    The first entry is what each pivot is expected to equal; the second
    is the reciprocal reading. ``det(V_{-1})`` is the empty minor, 1.

    Raises:
        SingularSystemError: if a leading minor vanishes.
    """
    minors = [Fraction(1), *leading_minors(report.monomial_basis, report.functionals)]
    if any(d == 0 for d in minors):
        raise SingularSystemError("vanishing leading minor: not a proper basis")
    return [
        (minors[k + 1] / minors[k], minors[k] / minors[k + 1])
        for k in range(len(minors) - 1)
    ]
