"""Recursive Birkhoff interpolation solvers.

Both solvers grow a Newton-type basis one condition at a time. For step
``k`` the working monomial ``g_{-1,k-1}`` is reduced against the
accepted basis polynomials ``g_{j-1,j}``::

    g_{j,k-1} = g_{j-1,k-1} - L_{j+1}(g_{j-1,k-1}) / L_{j+1}(g_{j-1,j}) * g_{j-1,j}

for ``j = 0..k-2``. The last polynomial of the column, ``g_{k-2,k-1}``,
vanishes under ``L_1..L_{k-1}``; it is accepted when ``L_k`` does not
vanish on it (the judgment condition), and the partial interpolant is
updated with the Newton-type step::

    p_{k-1} = p_{k-2} + (y_k - L_k(p_{k-2})) / L_k(g_{k-2,k-1}) * g_{k-2,k-1}

When the judgment condition fails, ``algorithm1`` multiplies every
not-yet-accepted working monomial by ``x`` and retries. ``algorithm2``
first looks for a later condition that does not vanish on the candidate
and swaps it into position ``k``; it only escalates the degree when all
remaining conditions vanish.

Accepted basis polynomials and pivots are never invalidated, because an
escalation only touches working monomials from position ``k-1`` on.
"""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Sequence
from fractions import Fraction

from .conditions import BirkhoffProblem, Functional, apply_functional
from .config import default_degree_cap
from .errors import (
    DependentConditionsError,
    SolverError,
    UnsupportedConditionError,
)
from .poly import Polynomial, poly_add, poly_scale, poly_shift_up

__all__ = [
    "SolveReport",
    "SolverState",
    "accept_step",
    "algorithm1",
    "algorithm2",
    "build_column",
    "escalate",
    "init_state",
    "solve",
]

logger = logging.getLogger(__name__)


@dataclasses.dataclass
class SolverState:
    """Mutable state of one solver run.

    Attributes:
        functionals: Conditions in their current order.
        values: Interpolation values, permuted with ``functionals``.
        order: ``order[i]`` is the input position of the condition now at
            position ``i``.
        working: Working monomials ``g_{-1,0..N-1}``.
        newton: Accepted basis polynomials ``g_{j-1,j}``.
        pivots: ``L_{j+1}(g_{j-1,j})`` for every accepted ``j``.
        columns: For each accepted step, the column ``g_{-1,k-1}, ...,
            g_{k-2,k-1}`` it was accepted with.
        partial: Partial interpolant ``p_{k-1}``.
        degree_cap: Largest degree a working monomial may reach.
        escalation_steps: Step ``k`` of every degree escalation.
        swaps: 1-based ``(k, k+s)`` condition exchanges.
    """

    functionals: list[Functional]
    values: list[Fraction]
    order: list[int]
    working: list[Polynomial]
    degree_cap: int
    newton: list[Polynomial] = dataclasses.field(default_factory=list)
    pivots: list[Fraction] = dataclasses.field(default_factory=list)
    columns: list[tuple[Polynomial, ...]] = dataclasses.field(default_factory=list)
    partial: Polynomial = dataclasses.field(default_factory=Polynomial)
    escalation_steps: list[int] = dataclasses.field(default_factory=list)
    swaps: list[tuple[int, int]] = dataclasses.field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.functionals)

    @property
    def accepted_count(self) -> int:
        return len(self.newton)


@dataclasses.dataclass(frozen=True)
class SolveReport:
    """Result of a solver run.

    ``newton_basis[k]``, ``pivots[k]``, ``functionals[k]`` and
    ``values[k]`` all refer to condition ``k+1`` of the final order.
    ``final_order[i]`` is the input position of that condition.
    """

    algorithm: int
    monomial_exponents: tuple[int, ...]
    newton_basis: tuple[Polynomial, ...]
    pivots: tuple[Fraction, ...]
    interpolant: Polynomial
    final_order: tuple[int, ...]
    functionals: tuple[Functional, ...]
    values: tuple[Fraction, ...]
    nodes: tuple[Fraction, ...]
    auxiliary: tuple[tuple[Polynomial, ...], ...]
    escalation_steps: tuple[int, ...] = ()
    swaps: tuple[tuple[int, int], ...] = ()

    @property
    def escalations(self) -> int:
        return len(self.escalation_steps)

    @property
    def monomial_basis(self) -> tuple[Polynomial, ...]:
        return tuple(Polynomial.monomial(e) for e in self.monomial_exponents)

    @property
    def size(self) -> int:
        return len(self.functionals)

    @property
    def problem(self) -> BirkhoffProblem:
        """The problem in final condition order."""
        return BirkhoffProblem(self.nodes, self.functionals, self.values)


def init_state(problem: BirkhoffProblem, degree_cap: int | None = None) -> SolverState:
    """Initialises the working monomials and accepts the first condition.

    The working monomials are ``x**(alpha_1 + i)`` for ``i = 0..N-1``,
    where ``alpha_1`` is the highest derivative order of the first
    condition. If ``L_1`` does not vanish on ``x**alpha_1`` (always the
    case for monomial conditions, where ``L_1(x**alpha_1) = alpha_1!``)
    the first step is accepted, giving ``p_0 = y_1 / L_1(x**alpha_1) *
    x**alpha_1``. Otherwise nothing is accepted yet and the driver treats
    ``k = 1`` like any later step.

    Args:
        problem: Problem with its conditions already in solving order.
        degree_cap: Largest degree a working monomial may reach. Defaults
            to ``config.default_degree_cap``.

    Returns:
        A fresh ``SolverState``.

    Raises:
        SolverError: if ``degree_cap`` is below the degree of the highest
            starting monomial, ``alpha_1 + N - 1``.
    """
    if degree_cap is None:
        degree_cap = default_degree_cap(problem.max_order, problem.size)
    alpha_1 = problem.functionals[0].op.order
    if (start := alpha_1 + problem.size - 1) > degree_cap:
        raise SolverError(
            f"degree cap {degree_cap} is below the starting degree {start} "
            "of the working monomials"
        )
    state = SolverState(
        functionals=list(problem.functionals),
        values=list(problem.values),
        order=list(range(problem.size)),
        working=[Polynomial.monomial(alpha_1 + i) for i in range(problem.size)],
        degree_cap=degree_cap,
    )
    candidate = state.working[0]
    if apply_functional(state.functionals[0], candidate) != 0:
        accept_step(state, 1, candidate, column=(candidate,))
    return state


def build_column(state: SolverState, k: int) -> list[Polynomial]:
    """Computes ``g_{-1,k-1}, g_{0,k-1}, ..., g_{k-2,k-1}`` for step ``k``.

    Each ``g_{j,k-1}`` vanishes under ``L_1..L_{j+1}``. Only stored,
    nonzero pivots are divided by.
    """
    if k != state.accepted_count + 1:
        raise ValueError(
            f"Step {k} requested with {state.accepted_count} accepted conditions."
        )
    g = state.working[k - 1]
    column = [g]
    for j in range(k - 1):
        factor = apply_functional(state.functionals[j], g) / state.pivots[j]
        g = poly_add(g, poly_scale(-factor, state.newton[j]))
        column.append(g)
    return column


def accept_step(
    state: SolverState,
    k: int,
    candidate: Polynomial,
    column: Sequence[Polynomial] | None = None,
) -> SolverState:
    """Accepts ``candidate`` as ``g_{k-2,k-1}`` and updates the interpolant.

    Args:
        state: Solver state with ``k - 1`` accepted conditions.
        k: 1-based step index.
        candidate: Last polynomial of the column built for step ``k``.
        column: The whole column, kept for the report.

    Returns:
        ``state``, updated so that ``L_i(partial) = y_i`` for ``i <= k``.

    Raises:
        ValueError: if ``L_k(candidate)`` is zero; callers must check the
            judgment condition first.
    """
    if k != state.accepted_count + 1:
        raise ValueError(
            f"Step {k} accepted with {state.accepted_count} accepted conditions."
        )
    functional = state.functionals[k - 1]
    pivot = apply_functional(functional, candidate)
    if pivot == 0:
        raise ValueError(f"Judgment condition fails at step {k}: L_{k}(g) = 0.")
    residual = state.values[k - 1] - apply_functional(functional, state.partial)
    state.partial = poly_add(state.partial, poly_scale(residual / pivot, candidate))
    state.newton.append(candidate)
    state.pivots.append(pivot)
    state.columns.append(tuple(column) if column is not None else (candidate,))
    logger.debug("step %d accepted with pivot %s", k, pivot)
    return state


def escalate(
    state: SolverState, k: int, certificate: Polynomial | None = None
) -> SolverState:
    """Multiplies the working monomials ``g_{-1,k-1..N-1}`` by ``x``.

    Raises:
        DependentConditionsError: if the highest working monomial would
            exceed the degree cap. ``certificate`` is attached to it.
    """
    top = state.working[-1].degree
    if top + 1 > state.degree_cap:
        raise DependentConditionsError(
            f"degree cap {state.degree_cap} exceeded at step {k}: "
            "suspected dependent conditions",
            step=k,
            certificate=certificate,
        )
    for d in range(k - 1, state.size):
        state.working[d] = poly_shift_up(state.working[d])
    state.escalation_steps.append(k)
    logger.debug(
        "step %d escalated, working monomial now of degree %d",
        k,
        state.working[k - 1].degree,
    )
    return state


def _find_swap(state: SolverState, k: int, candidate: Polynomial) -> int | None:
    """Smallest ``s >= 1`` with ``L_{k+s}(candidate) != 0``, if any."""
    for s in range(1, state.size - k + 1):
        if apply_functional(state.functionals[k - 1 + s], candidate) != 0:
            return s
    return None


def _swap(state: SolverState, k: int, s: int) -> None:
    a, b = k - 1, k - 1 + s
    for seq in (state.functionals, state.values, state.order):
        seq[a], seq[b] = seq[b], seq[a]
    state.swaps.append((k, k + s))
    logger.debug("conditions %d and %d swapped", k, k + s)


def _report(
    state: SolverState, algorithm: int, nodes: Sequence[Fraction]
) -> SolveReport:
    return SolveReport(
        algorithm=algorithm,
        monomial_exponents=tuple(g.degree for g in state.working),
        newton_basis=tuple(state.newton),
        pivots=tuple(state.pivots),
        interpolant=state.partial,
        final_order=tuple(state.order),
        functionals=tuple(state.functionals),
        values=tuple(state.values),
        nodes=tuple(nodes),
        auxiliary=tuple(state.columns),
        escalation_steps=tuple(state.escalation_steps),
        swaps=tuple(state.swaps),
    )


def _run(
    problem: BirkhoffProblem, degree_cap: int | None, allow_swaps: bool
) -> SolverState:
    state = init_state(problem, degree_cap)
    while state.accepted_count < state.size:
        k = state.accepted_count + 1
        column = build_column(state, k)
        candidate = column[-1]
        if apply_functional(state.functionals[k - 1], candidate) != 0:
            accept_step(state, k, candidate, column)
            continue
        if allow_swaps and (s := _find_swap(state, k, candidate)) is not None:
            _swap(state, k, s)
            accept_step(state, k, candidate, column)
            continue
        escalate(state, k, certificate=candidate)
    return state


def algorithm1(problem: BirkhoffProblem, degree_cap: int | None = None) -> SolveReport:
    """Solves a monomial-condition problem by sequential degree escalation.

    The conditions are used in the order given, which should be N-DOS
    order (see ``conditions.order_ndos``).

    Args:
        problem: Problem whose conditions are all ``delta ∘ D**alpha``.
        degree_cap: Largest degree a working monomial may reach.

    Returns:
        The monomial basis, Newton-type basis, pivots and interpolant.

    Raises:
        UnsupportedConditionError: if a condition is not monomial.
        DependentConditionsError: if the degree cap is reached.
    """
    for i, functional in enumerate(problem.functionals):
        if not functional.op.is_monomial:
            raise UnsupportedConditionError(
                f"Condition {i + 1} ({functional}) is not a single derivative; "
                "use algorithm 2."
            )
    return _report(
        _run(problem, degree_cap, allow_swaps=False), algorithm=1, nodes=problem.nodes
    )


def algorithm2(problem: BirkhoffProblem, degree_cap: int | None = None) -> SolveReport:
    """Solves a problem with general conditions, swapping before escalating.

    The conditions should be sorted by highest derivative order (see
    ``conditions.order_by_highest_order``). When ``L_k`` vanishes on the
    candidate, the first later condition that does not is swapped into
    position ``k`` together with its value, and the candidate is accepted
    immediately.

    Raises:
        DependentConditionsError: if the degree cap is reached; the
            error's certificate is annihilated by every condition.
    """
    return _report(
        _run(problem, degree_cap, allow_swaps=True), algorithm=2, nodes=problem.nodes
    )


def solve(
    problem: BirkhoffProblem,
    algorithm: int | None = None,
    degree_cap: int | None = None,
) -> SolveReport:
    """Runs ``algorithm1`` or ``algorithm2``.

    When ``algorithm`` is ``None``, monomial problems go to Algorithm 1
    and everything else to Algorithm 2.
    """
    if algorithm is None:
        algorithm = 1 if problem.is_monomial else 2
    if algorithm == 1:
        return algorithm1(problem, degree_cap)
    if algorithm == 2:
        return algorithm2(problem, degree_cap)
    raise ValueError(f"Unknown algorithm {algorithm!r}; expected 1 or 2.")
