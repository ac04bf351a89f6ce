"""Brute-force Vandermonde oracle for ``birkhoff-interp``.

Nothing here shares code with the recursive solvers: the oracle builds
the generalized Vandermonde matrix ``V[i][j] = L_i(q_j)`` of a basis
``q`` under functionals ``L`` and works on it directly.

Determinants and solves use fraction-free (Bareiss) elimination. Each
row is first scaled by the least common multiple of its denominators,
so the elimination only ever sees Python integers and every division it
performs is exact.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import typing
from collections.abc import Sequence
from fractions import Fraction

from .conditions import BirkhoffProblem, Functional, apply_functional
from .errors import DependentConditionsError, SingularSystemError
from .poly import Polynomial, poly_add, poly_scale

__all__ = [
    "ExactMatrix",
    "TriangularityCheck",
    "check_triangularity",
    "det_exact",
    "greedy_minimal_monomial_basis",
    "is_strongly_proper",
    "leading_minors",
    "oracle_interpolate",
    "rank_exact",
    "solve_exact",
    "vandermonde",
]

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ExactMatrix:
    """Rectangular matrix of ``Fraction`` entries, stored by rows."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(a) for a in row) for row in self.rows)
        if len({len(row) for row in rows}) > 1:
            raise ValueError("Matrix rows must all have the same length.")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(tuple(zip(*self.rows, strict=True)))

    def leading_block(self, k: int) -> ExactMatrix:
        """The top-left ``k x k`` block."""
        if not 0 <= k <= min(self.nrows, self.ncols):
            raise ValueError(
                f"No {k}x{k} leading block in a {self.nrows}x{self.ncols} matrix."
            )
        return ExactMatrix(tuple(row[:k] for row in self.rows[:k]))

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.rows[i][j]


class TriangularityCheck(typing.NamedTuple):
    """Outcome of ``check_triangularity``.

    ``violation`` is the first 1-based ``(i, j)`` with ``L_i(g_j) != 0``
    for ``i < j``, or ``(j, j)`` for a zero pivot.
    """

    ok: bool
    violation: tuple[int, int] | None = None


def vandermonde(
    basis: Sequence[Polynomial], functionals: Sequence[Functional]
) -> ExactMatrix:
    """Builds ``V`` with ``V[i][j] = L_i(basis[j])``.

    The result is square when ``basis`` and ``functionals`` have the same
    length; a longer basis gives the rectangular matrix used for rank
    tests.
    """
    return ExactMatrix(
        tuple(tuple(apply_functional(f, q) for q in basis) for f in functionals)
    )


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scales every row to integers; returns the rows and the product of scales."""
    scaled = []
    total = 1
    for row in rows:
        scale = math.lcm(*(a.denominator for a in row)) if row else 1
        scaled.append([int(a * scale) for a in row])
        total *= scale
    return scaled, total


def _bareiss(m: list[list[int]], ncols: int) -> int | None:
    """Fraction-free forward elimination over the first ``ncols`` columns.

    ``m`` is modified in place and may carry extra columns on the right
    (an augmented right-hand side), which are eliminated alongside.

    Returns:
        The sign of the row permutation used, or ``None`` if a column has
        no nonzero pivot.
    """
    n = len(m)
    width = len(m[0]) if m else 0
    sign = 1
    prev = 1
    for k in range(ncols):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return None
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, width):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign


def det_exact(matrix: ExactMatrix) -> Fraction:
    """Determinant by Bareiss elimination on the integer-scaled matrix.

    The empty (0x0) matrix has determinant 1.

    Raises:
        ValueError: if ``matrix`` is not square.
    """
    if not matrix.is_square:
        raise ValueError(
            f"Determinant of a non-square {matrix.nrows}x{matrix.ncols} matrix."
        )
    n = matrix.nrows
    if n == 0:
        return Fraction(1)
    m, scale = _integer_rows(matrix.rows)
    sign = _bareiss(m, n)
    if sign is None:
        return Fraction(0)
    return Fraction(sign * m[n - 1][n - 1], scale)


def solve_exact(matrix: ExactMatrix, rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solves ``matrix @ a = rhs`` exactly.

    Bareiss forward elimination runs on the integer-scaled augmented
    matrix ``[matrix | rhs]``; back substitution is done in fractions.

    Raises:
        ValueError: if the shapes do not match.
        SingularSystemError: if ``matrix`` is singular.
    """
    n = matrix.nrows
    if not matrix.is_square or len(rhs) != n:
        raise ValueError(
            f"Cannot solve a {matrix.nrows}x{matrix.ncols} system "
            f"with {len(rhs)} right-hand values."
        )
    augmented = [(*row, Fraction(b)) for row, b in zip(matrix.rows, rhs, strict=True)]
    m, _ = _integer_rows(augmented)
    if _bareiss(m, n) is None or (n and m[n - 1][n - 1] == 0):
        raise SingularSystemError("singular Vandermonde matrix: not a proper basis")
    solution = [Fraction(0)] * n
    for i in reversed(range(n)):
        acc = Fraction(m[i][n]) - sum(
            (m[i][j] * solution[j] for j in range(i + 1, n)), start=Fraction(0)
        )
        solution[i] = acc / m[i][i]
    return solution


def rank_exact(matrix: ExactMatrix) -> int:
    """Rank by exact Gaussian elimination."""
    rows = [list(row) for row in matrix.rows]
    rank = 0
    for col in range(matrix.ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            factor = rows[i][col] / rows[rank][col]
            if factor:
                rows[i] = [
                    a - factor * b for a, b in zip(rows[i], rows[rank], strict=True)
                ]
        rank += 1
    return rank


def oracle_interpolate(
    basis: Sequence[Polynomial], problem: BirkhoffProblem
) -> Polynomial:
    """Interpolates by solving the Vandermonde system directly.

    Raises:
        SingularSystemError: if ``basis`` is not proper for ``problem``.
    """
    coeffs = solve_exact(vandermonde(basis, problem.functionals), problem.values)
    result = Polynomial()
    for a, q in zip(coeffs, basis, strict=True):
        result = poly_add(result, poly_scale(a, q))
    return result


def leading_minors(
    basis: Sequence[Polynomial], functionals: Sequence[Functional]
) -> list[Fraction]:
    """``det(V_{k-1})`` for ``k = 1..N``: the leading principal minors."""
    v = vandermonde(basis, functionals)
    return [det_exact(v.leading_block(k)) for k in range(1, v.nrows + 1)]


def is_strongly_proper(
    basis: Sequence[Polynomial], functionals: Sequence[Functional]
) -> bool:
    """Whether every leading principal minor of the Vandermonde matrix is nonzero."""
    if len(basis) != len(functionals):
        raise ValueError("Basis and functionals must have the same length.")
    return all(d != 0 for d in leading_minors(basis, functionals))


def greedy_minimal_monomial_basis(
    functionals: Sequence[Functional], cap: int
) -> list[int]:
    """Picks exponents ``e_1 < e_2 < ...`` that each raise the Vandermonde rank.

    Monomials ``x**e`` for ``e = 0..cap`` are tried in increasing order and
    kept when they add a new column direction to the rectangular matrix
    ``L_i(x**e)``. The result spans a proper (not necessarily strongly
    proper) interpolation space of minimal degree.

    Raises:
        DependentConditionsError: if the rank is still below N after
            ``x**cap``.
    """
    n = len(functionals)
    exponents: list[int] = []
    # reduced columns, each paired with the index of its leading nonzero row
    reduced: list[tuple[int, list[Fraction]]] = []
    for e in range(cap + 1):
        if len(exponents) == n:
            break
        column = [apply_functional(f, Polynomial.monomial(e)) for f in functionals]
        for lead, basis_col in reduced:
            if column[lead]:
                factor = column[lead] / basis_col[lead]
                column = [
                    a - factor * b for a, b in zip(column, basis_col, strict=True)
                ]
        lead = next((i for i, a in enumerate(column) if a != 0), None)
        if lead is None:
            continue
        reduced.append((lead, column))
        exponents.append(e)
    if len(exponents) < n:
        raise DependentConditionsError(
            f"rank {len(exponents)} < {n} with monomials up to x^{cap}: "
            "dependent conditions"
        )
    logger.debug("greedy minimal basis exponents %s", exponents)
    return exponents


def check_triangularity(
    newton_basis: Sequence[Polynomial], functionals: Sequence[Functional]
) -> TriangularityCheck:
    """Checks ``L_i(g_j) = 0`` for ``i < j`` and ``L_j(g_j) != 0``.

    Pivots are not required to be 1.
    """
    if len(newton_basis) != len(functionals):
        raise ValueError("Basis and functionals must have the same length.")
    for j, g in enumerate(newton_basis):
        for i in range(j):
            if apply_functional(functionals[i], g) != 0:
                return TriangularityCheck(False, (i + 1, j + 1))
        if apply_functional(functionals[j], g) == 0:
            return TriangularityCheck(False, (j + 1, j + 1))
    return TriangularityCheck(True)
