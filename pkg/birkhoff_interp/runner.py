"""Runner utilities for ``birkhoff-interp``.

Provides the seeded random-problem generator and the harness that runs
both solvers on each instance, checks them against the oracle and dumps
reproducer files for failures.
"""

import dataclasses
import logging
import random
from fractions import Fraction
from pathlib import Path

from . import config
from .conditions import (
    BirkhoffProblem,
    ConditionPair,
    canonical_order,
    problem_from_pairs,
)
from .errors import SolverError
from .parse import problem_to_json
from .solver import SolveReport, algorithm1, algorithm2
from .verify import failed_checks, verify_report

__all__ = [
    "NODE_POOL",
    "RandomSummary",
    "check_instance",
    "random_problem",
    "run_random",
]

logger = logging.getLogger(__name__)

# no zero: conditions at the origin can make Algorithm 1 escalate without end
NODE_POOL: tuple[Fraction, ...] = tuple(
    Fraction(s)
    for s in (
        "-3", "-2", "-3/2", "-1", "-1/2", "-1/3",
        "1/3", "1/2", "1", "3/2", "2", "3",
    )
)  # fmt: skip


@dataclasses.dataclass(frozen=True)
class RandomSummary:
    """Outcome of ``run_random``.

    ``failures`` maps each failing case index to the names of the
    properties it broke; ``reproducers`` lists the files written.
    """

    count: int
    passed: int
    failed: int
    failures: dict[int, list[str]] = dataclasses.field(default_factory=dict)
    reproducers: list[Path] = dataclasses.field(default_factory=list)


def random_problem(
    rng: random.Random, max_n: int = 6, max_order: int = 4
) -> BirkhoffProblem:
    """Draws a monomial-condition problem in N-DOS order.

    Nodes are distinct entries of ``NODE_POOL``; the ``(beta, alpha)``
    pairs are distinct, with ``alpha <= max_order``; values are small
    random rationals.

    Raises:
        ValueError: if ``max_n`` distinct pairs cannot be drawn.
    """
    if max_n < 1 or max_order < 0 or max_n > len(NODE_POOL) * (max_order + 1):
        raise ValueError(
            f"Cannot draw up to {max_n} distinct conditions of order <= {max_order} "
            f"on {len(NODE_POOL)} nodes."
        )
    n = rng.randint(1, max_n)
    min_nodes = -(-n // (max_order + 1))
    node_count = rng.randint(min_nodes, min(n, len(NODE_POOL)))
    nodes = rng.sample(NODE_POOL, node_count)
    candidates = [
        ConditionPair(beta, alpha)
        for beta in range(node_count)
        for alpha in range(max_order + 1)
    ]
    pairs = rng.sample(candidates, n)
    values = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
    problem, _ = canonical_order(problem_from_pairs(nodes, pairs, values))
    return problem


def _agree(first: SolveReport, second: SolveReport) -> bool:
    return first == dataclasses.replace(second, algorithm=first.algorithm)


def check_instance(
    problem: BirkhoffProblem, degree_cap: int | None = None
) -> list[str]:
    """Runs both solvers on ``problem`` and checks every property.

    Returns:
        Names of the failed properties, prefixed with the solver
        (``"algorithm1-triangular"``), ``"algorithm2-error"`` for a
        solver error, or ``"agreement"`` when Algorithm 2 made no swap
        but its result differs from Algorithm 1's. Empty on success.
    """
    failures: list[str] = []
    reports: dict[int, SolveReport] = {}
    for tag, solver in ((1, algorithm1), (2, algorithm2)):
        try:
            report = solver(problem, degree_cap)
        except SolverError as e:
            logger.debug("algorithm %d failed: %s", tag, e)
            failures.append(f"algorithm{tag}-error")
            continue
        reports[tag] = report
        failures.extend(
            f"algorithm{tag}-{name}" for name in failed_checks(verify_report(report))
        )
    if len(reports) == 2 and not reports[2].swaps:
        if not _agree(reports[1], reports[2]):
            failures.append("agreement")
    return failures


def run_random(
    count: int,
    max_n: int = 6,
    max_order: int = 4,
    seed: int = 0,
    reproducer_dir: Path | None = None,
) -> RandomSummary:
    """Checks ``count`` seeded random problems.

    The same arguments always produce the same problems and the same
    summary. Each failing problem is written to
    ``seed{seed}-case{index}.json`` in ``config.reproducer_dir()``.
    """
    rng = random.Random(seed)
    failures: dict[int, list[str]] = {}
    reproducers: list[Path] = []
    for index in range(count):
        problem = random_problem(rng, max_n, max_order)
        if not (broken := check_instance(problem)):
            continue
        failures[index] = broken
        path = config.reproducer_dir(reproducer_dir) / f"seed{seed}-case{index}.json"
        path.write_bytes(problem_to_json(problem))
        reproducers.append(path)
        logger.warning(
            "case %d failed (%s), written to %s", index, ", ".join(broken), path
        )
    return RandomSummary(
        count=count,
        passed=count - len(failures),
        failed=len(failures),
        failures=failures,
        reproducers=reproducers,
    )
