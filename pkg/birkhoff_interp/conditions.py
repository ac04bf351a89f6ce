"""Interpolation conditions for ``birkhoff-interp``.

A Birkhoff interpolation condition is a linear functional ``L`` that
differentiates a polynomial with a differential polynomial
``c_0 + c_1 D + ... + c_m D^m`` and evaluates the result at a node. The
classical case ``c = (0, ..., 0, 1)`` prescribes a single derivative
value and corresponds to a unit entry of an incidence matrix.

This module holds those value types, the validated ``BirkhoffProblem``
the solvers consume, the incidence-matrix conversions and the two
condition orderings the solvers expect:

* N-DOS order (``order_ndos``): derivative order non-decreasing, node
  index strictly increasing within equal orders.
* highest-order order (``order_by_highest_order``): a stable sort on the
  top derivative order of each differential polynomial.
"""

from __future__ import annotations

import dataclasses
import itertools
import typing
from collections.abc import Sequence
from fractions import Fraction

from .errors import DuplicateConditionError, ProblemError
from .poly import (
    Polynomial,
    RationalLike,
    format_rational,
    format_terms,
    poly_derivative,
    poly_eval,
)

__all__ = [
    "BirkhoffProblem",
    "ConditionPair",
    "DiffOperator",
    "Functional",
    "IncidenceMatrix",
    "IncidenceViolation",
    "apply_functional",
    "canonical_order",
    "check_polya",
    "first_polya_failure",
    "functional_from_pair",
    "incidence_from_pairs",
    "order_by_highest_order",
    "order_ndos",
    "pairs_from_incidence",
    "problem_from_pairs",
    "validate_incidence",
]


class ConditionPair(typing.NamedTuple):
    """Prescribes the ``alpha``-th derivative at node ``x_beta``."""

    beta: int
    alpha: int


@dataclasses.dataclass(frozen=True)
class IncidenceMatrix:
    """0/1 matrix with ``entries[beta][alpha] == 1`` per prescribed pair.

    Rows are indexed by node, columns by derivative order.
    ``declared_count`` is the number of conditions N the matrix is
    expected to carry, if known.
    """

    entries: tuple[tuple[int, ...], ...]
    declared_count: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "entries", tuple(tuple(row) for row in self.entries)
        )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return max((len(row) for row in self.entries), default=0)


class IncidenceViolation(typing.NamedTuple):
    """First broken incidence-matrix rule, with its location."""

    rule: typing.Literal[
        "non-rectangular", "non-binary entry", "zero row", "count mismatch"
    ]
    row: int | None = None
    column: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        where = []
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.column is not None:
            where.append(f"column {self.column}")
        location = f" at {', '.join(where)}" if where else ""
        detail = f" ({self.detail})" if self.detail else ""
        return f"{self.rule}{location}{detail}"


def validate_incidence(matrix: IncidenceMatrix) -> IncidenceViolation | None:
    """Checks the incidence-matrix rules.

    The rules are checked in a fixed order: rectangular shape, binary
    entries, no all-zero row, and (when the matrix declares one) the
    number of ones equal to the condition count. An empty matrix passes;
    the empty problem it describes is rejected by ``BirkhoffProblem``.

    Args:
        matrix: Matrix to check.

    Returns:
        ``None`` if the matrix is a valid incidence matrix, otherwise the
        first violation found.
    """
    width = len(matrix.entries[0]) if matrix.entries else 0
    for i, row in enumerate(matrix.entries):
        if len(row) != width:
            return IncidenceViolation(
                "non-rectangular", row=i, detail=f"{len(row)} != {width} entries"
            )
    for i, row in enumerate(matrix.entries):
        for j, entry in enumerate(row):
            if isinstance(entry, bool) or entry not in (0, 1):
                return IncidenceViolation(
                    "non-binary entry", row=i, column=j, detail=repr(entry)
                )
    for i, row in enumerate(matrix.entries):
        if not any(row):
            return IncidenceViolation("zero row", row=i)
    total = sum(sum(row) for row in matrix.entries)
    if matrix.declared_count is not None and total != matrix.declared_count:
        return IncidenceViolation(
            "count mismatch", detail=f"{total} ones, {matrix.declared_count} declared"
        )
    return None


def pairs_from_incidence(matrix: IncidenceMatrix) -> list[ConditionPair]:
    """Lists the unit entries of ``matrix`` in row-major order."""
    return [
        ConditionPair(beta, alpha)
        for beta, row in enumerate(matrix.entries)
        for alpha, entry in enumerate(row)
        if entry == 1
    ]


def _reject_duplicates(pairs: Sequence[ConditionPair]) -> None:
    seen: set[ConditionPair] = set()
    for pair in pairs:
        if pair in seen:
            raise DuplicateConditionError(
                f"duplicate condition (beta={pair.beta}, alpha={pair.alpha})"
            )
        seen.add(pair)


def incidence_from_pairs(
    pairs: Sequence[ConditionPair], node_count: int
) -> IncidenceMatrix:
    """Builds the incidence matrix with unit entries at ``pairs``.

    The matrix has ``node_count`` rows and as many columns as the
    highest derivative order requires. Nodes without a condition give
    zero rows, which ``validate_incidence`` reports.

    Raises:
        DuplicateConditionError: if a pair occurs twice.
        ProblemError: if a pair refers to a node outside the matrix.
    """
    pairs = [ConditionPair(*p) for p in pairs]
    _reject_duplicates(pairs)
    for pair in pairs:
        if not 0 <= pair.beta < node_count or pair.alpha < 0:
            raise ProblemError(
                f"condition (beta={pair.beta}, alpha={pair.alpha}) is outside "
                f"a matrix with {node_count} nodes"
            )
    ncols = max((p.alpha for p in pairs), default=-1) + 1
    entries = [[0] * ncols for _ in range(node_count)]
    for beta, alpha in pairs:
        entries[beta][alpha] = 1
    return IncidenceMatrix(
        tuple(tuple(row) for row in entries), declared_count=len(pairs)
    )


def order_ndos(pairs: Sequence[ConditionPair]) -> list[ConditionPair]:
    """Sorts condition pairs into N-DOS order.

    Orders ``alpha`` non-decreasingly and, within equal ``alpha``,
    ``beta`` strictly increasingly.

    Raises:
        DuplicateConditionError: if a pair occurs twice (the strict
            ordering would be impossible).
    """
    pairs = [ConditionPair(*p) for p in pairs]
    _reject_duplicates(pairs)
    return sorted(pairs, key=lambda p: (p.alpha, p.beta))


def first_polya_failure(matrix: IncidenceMatrix) -> int | None:
    """Returns the first column where the cumulative Pólya count falls short.

    The classical cumulative criterion asks that, for every column ``m``
    up to the last one containing a 1, the entries in columns ``0..m``
    sum to at least ``m + 1``.
    """
    column_sums = [
        sum(row[j] for row in matrix.entries if j < len(row))
        for j in range(matrix.ncols)
    ]
    last = max((j for j, s in enumerate(column_sums) if s), default=-1)
    for m, cumulative in enumerate(itertools.accumulate(column_sums[: last + 1])):
        if cumulative < m + 1:
            return m
    return None


def check_polya(matrix: IncidenceMatrix) -> bool:
    """Whether ``matrix`` satisfies the cumulative Pólya condition.

    This is a diagnostic only; neither solver requires it.
    """
    return first_polya_failure(matrix) is None


@dataclasses.dataclass(frozen=True)
class DiffOperator:
    """Differential polynomial ``sum(coeffs[a] * D**a)``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            raise ProblemError("A differential operator needs a nonzero coefficient.")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def derivative(cls, alpha: int) -> DiffOperator:
        """The monomial operator ``D**alpha``."""
        if alpha < 0:
            raise ProblemError(f"Derivative order must be non-negative, got {alpha}.")
        return cls((0,) * alpha + (1,))

    @property
    def order(self) -> int:
        """The highest derivative order involved."""
        return len(self.coeffs) - 1

    @property
    def is_monomial(self) -> bool:
        return self.coeffs[-1] == 1 and not any(self.coeffs[:-1])

    def __str__(self) -> str:
        return format_terms(enumerate(self.coeffs), "D")


@dataclasses.dataclass(frozen=True)
class Functional:
    """Interpolation condition ``L = delta_node ∘ op``.

    ``node_index`` is the position of ``node`` in the problem's node list
    when known; it drives N-DOS ordering and labels.
    """

    node: Fraction
    op: DiffOperator
    node_index: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "node", Fraction(self.node))

    @property
    def pair(self) -> ConditionPair:
        """The ``(beta, alpha)`` pair of a monomial functional."""
        if not self.op.is_monomial or self.node_index is None:
            raise ValueError(f"{self} has no (beta, alpha) pair.")
        return ConditionPair(self.node_index, self.op.order)

    def __str__(self) -> str:
        if self.node_index is not None:
            label = f"δ[x_{self.node_index}]"
        else:
            label = f"δ[{format_rational(self.node)}]"
        if self.op.coeffs == (1,):
            return label
        if self.op.is_monomial:
            return f"{label}∘{self.op}"
        return f"{label}∘({self.op})"


def apply_functional(functional: Functional, p: Polynomial) -> Fraction:
    """Evaluates ``L(p) = sum(c_a * (D**a p)(x_beta))`` exactly."""
    return sum(
        (
            c * poly_eval(poly_derivative(p, a), functional.node)
            for a, c in enumerate(functional.op.coeffs)
            if c
        ),
        start=Fraction(0),
    )


def functional_from_pair(
    nodes: Sequence[RationalLike], pair: ConditionPair
) -> Functional:
    """Builds ``delta_{x_beta} ∘ D**alpha`` for a condition pair."""
    beta, alpha = pair
    if not 0 <= beta < len(nodes):
        raise ProblemError(f"Node index {beta} is out of range for {len(nodes)} nodes.")
    return Functional(nodes[beta], DiffOperator.derivative(alpha), node_index=beta)


@dataclasses.dataclass(frozen=True)
class BirkhoffProblem:
    """Validated interpolation problem: find ``p`` with ``L_i(p) = y_i``.

    Raises:
        ProblemError: if the problem is empty, the lengths disagree, the
            nodes are not pairwise distinct, or a functional's
            ``node_index`` does not match ``nodes``.
    """

    nodes: tuple[Fraction, ...]
    functionals: tuple[Functional, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        nodes = tuple(Fraction(x) for x in self.nodes)
        values = tuple(Fraction(y) for y in self.values)
        functionals = tuple(self.functionals)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "functionals", functionals)
        if not functionals:
            raise ProblemError("A problem needs at least one condition.")
        if len(functionals) != len(values):
            raise ProblemError(
                f"Got {len(functionals)} conditions but {len(values)} values."
            )
        if len(set(nodes)) != len(nodes):
            raise ProblemError("nodes must be pairwise distinct")
        for i, functional in enumerate(functionals):
            idx = functional.node_index
            if idx is None:
                continue
            if not 0 <= idx < len(nodes) or nodes[idx] != functional.node:
                raise ProblemError(
                    f"Condition {i + 1} refers to node index {idx}, which does "
                    "not match the node list."
                )

    @property
    def size(self) -> int:
        """Number of conditions N."""
        return len(self.functionals)

    @property
    def max_order(self) -> int:
        return max(f.op.order for f in self.functionals)

    @property
    def is_monomial(self) -> bool:
        """Whether every condition prescribes a single derivative value."""
        return all(
            f.op.is_monomial and f.node_index is not None for f in self.functionals
        )

    def reordered(self, permutation: Sequence[int]) -> BirkhoffProblem:
        """Returns the problem with condition ``permutation[i]`` at position i."""
        if sorted(permutation) != list(range(self.size)):
            raise ValueError(f"{list(permutation)} is not a permutation.")
        return BirkhoffProblem(
            self.nodes,
            tuple(self.functionals[i] for i in permutation),
            tuple(self.values[i] for i in permutation),
        )


def problem_from_pairs(
    nodes: Sequence[RationalLike],
    pairs: Sequence[ConditionPair],
    values: Sequence[RationalLike],
) -> BirkhoffProblem:
    """Builds a monomial-condition problem, keeping the given order."""
    functionals = tuple(functional_from_pair(nodes, ConditionPair(*p)) for p in pairs)
    return BirkhoffProblem(tuple(nodes), functionals, tuple(values))


def order_by_highest_order(
    functionals: Sequence[Functional], values: Sequence[RationalLike]
) -> tuple[tuple[Functional, ...], tuple[Fraction, ...], tuple[int, ...]]:
    """Stable sort of conditions by their highest derivative order.

    Ties keep their input order, so callers can pre-order conditions of
    equal order themselves.

    Returns:
        The reordered functionals, the values permuted identically, and
        the permutation (``permutation[i]`` is the input position of the
        condition now at position ``i``).
    """
    if len(functionals) != len(values):
        raise ProblemError(
            f"Got {len(functionals)} conditions but {len(values)} values."
        )
    permutation = tuple(
        sorted(range(len(functionals)), key=lambda i: functionals[i].op.order)
    )
    return (
        tuple(functionals[i] for i in permutation),
        tuple(Fraction(values[i]) for i in permutation),
        permutation,
    )


def canonical_order(
    problem: BirkhoffProblem,
) -> tuple[BirkhoffProblem, tuple[int, ...]]:
    """Puts a problem into the order its default solver expects.

    Monomial problems are sorted into N-DOS order, all others by highest
    derivative order.

    Returns:
        The reordered problem and the permutation applied.
    """
    if problem.is_monomial:
        pairs = [f.pair for f in problem.functionals]
        position = {pair: i for i, pair in enumerate(pairs)}
        permutation = tuple(position[pair] for pair in order_ndos(pairs))
    else:
        _, _, permutation = order_by_highest_order(problem.functionals, problem.values)
    return problem.reordered(permutation), permutation
