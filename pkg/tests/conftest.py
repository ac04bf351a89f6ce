from fractions import Fraction
from pathlib import Path

import pytest

from birkhoff_interp.conditions import (
    BirkhoffProblem,
    DiffOperator,
    Functional,
    problem_from_pairs,
)
from birkhoff_interp.poly import parse_polynomial

PARENT_DIR = Path(__file__).parent


def polys(*texts: str) -> tuple:
    return tuple(parse_polynomial(t) for t in texts)


def fracs(*values: str | int) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@pytest.fixture
def example1() -> BirkhoffProblem:
    """Nodes (1, 2, 3) with one value, two derivatives and a second derivative."""
    return problem_from_pairs(
        [1, 2, 3],
        [(0, 0), (1, 1), (1, 2), (2, 2)],
        [5, 6, 4, 7],
    )


@pytest.fixture
def example2() -> BirkhoffProblem:
    """Nodes (-1, 0, 1) in N-DOS order; Algorithm 1 escalates once here."""
    return problem_from_pairs(
        [-1, 0, 1],
        [(0, 0), (2, 0), (1, 1), (2, 1)],
        [2, 6, 4, 8],
    )


@pytest.fixture
def origin_problem() -> BirkhoffProblem:
    """``example2`` plus a second derivative at the origin."""
    return problem_from_pairs(
        [-1, 0, 1],
        [(0, 0), (2, 0), (1, 1), (2, 1), (1, 2)],
        [2, 6, 4, 8, 0],
    )


@pytest.fixture
def example4() -> BirkhoffProblem:
    """Nodes (1, 2) with differential-polynomial conditions."""
    d = DiffOperator
    return BirkhoffProblem(
        fracs(1, 2),
        (
            Functional(1, d((0, 1)), node_index=0),
            Functional(2, d((1, 1)), node_index=1),
            Functional(1, d((1, 0, 1)), node_index=0),
            Functional(2, d((0, 0, 1, 1)), node_index=1),
        ),
        fracs(1, 3, 2, 4),
    )


@pytest.fixture
def example1_file() -> Path:
    return PARENT_DIR / "example-1.json"


@pytest.fixture
def example2_file() -> Path:
    return PARENT_DIR / "example-2.json"


@pytest.fixture
def example4_file() -> Path:
    return PARENT_DIR / "example-4.json"


@pytest.fixture
def scaled_duplicate_file() -> Path:
    return PARENT_DIR / "scaled-duplicate.json"
