import itertools
from fractions import Fraction

import pytest
from conftest import fracs, polys
from hypothesis import given, settings
from hypothesis import strategies as st

from birkhoff_interp.conditions import (
    BirkhoffProblem,
    DiffOperator,
    Functional,
    apply_functional,
    problem_from_pairs,
)
from birkhoff_interp.errors import DependentConditionsError, SingularSystemError
from birkhoff_interp.oracle import (
    ExactMatrix,
    check_triangularity,
    det_exact,
    greedy_minimal_monomial_basis,
    is_strongly_proper,
    leading_minors,
    oracle_interpolate,
    rank_exact,
    solve_exact,
    vandermonde,
)
from birkhoff_interp.poly import Polynomial, parse_polynomial

entries = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def square_matrices(draw, max_size: int = 4) -> ExactMatrix:
    n = draw(st.integers(1, max_size))
    row = st.lists(entries, min_size=n, max_size=n)
    rows = draw(st.lists(row, min_size=n, max_size=n))
    return ExactMatrix(tuple(tuple(r) for r in rows))


node_pool = st.sampled_from(
    [Fraction(v) for v in ("-2", "-1", "-1/2", "0", "1/3", "1", "3/2", "2")]
)
operators = st.lists(st.integers(-2, 2), min_size=1, max_size=4).filter(any)
functionals = st.builds(
    lambda node, coeffs: Functional(node, DiffOperator(tuple(coeffs))),
    node_pool,
    operators,
)


@st.composite
def problems(draw, max_size: int = 4) -> BirkhoffProblem:
    fs = draw(st.lists(functionals, min_size=1, max_size=max_size))
    values = draw(st.lists(entries, min_size=len(fs), max_size=len(fs)))
    nodes = tuple(sorted({f.node for f in fs}))
    return BirkhoffProblem(nodes, tuple(fs), tuple(values))


def cofactor_det(rows: tuple[tuple[Fraction, ...], ...]) -> Fraction:
    if len(rows) == 1:
        return rows[0][0]
    return sum(
        (
            (-1) ** j
            * rows[0][j]
            * cofactor_det(tuple(r[:j] + r[j + 1 :] for r in rows[1:]))
            for j in range(len(rows))
        ),
        start=Fraction(0),
    )


def matvec(matrix: ExactMatrix, vector: list[Fraction]) -> list[Fraction]:
    return [
        sum((a * x for a, x in zip(row, vector, strict=True)), start=Fraction(0))
        for row in matrix.rows
    ]


def test_vandermonde_examples(example2) -> None:
    newton = polys("1", "x + 1", "x^3 - x", "x^4 - 1")
    v = vandermonde(newton, example2.functionals)
    assert [v[i, i] for i in range(4)] == [1, 2, -1, 4]
    assert all(v[i, j] == 0 for i in range(4) for j in range(i + 1, 4))
    assert det_exact(v) == -8

    first_three = example2.functionals[:3]
    v3 = vandermonde(polys("1", "x", "x^2"), first_three)
    assert v3.rows == ((1, -1, 1), (1, 1, 1), (0, 1, 0))
    assert det_exact(v3) == 0


def test_matrix_helpers() -> None:
    m = ExactMatrix(((1, 2, 3), (4, 5, 6)))
    assert (m.nrows, m.ncols, m.is_square) == (2, 3, False)
    assert m.transpose().rows == ((1, 4), (2, 5), (3, 6))
    assert m.leading_block(2).rows == ((1, 2), (4, 5))
    assert det_exact(m.leading_block(0)) == 1
    with pytest.raises(ValueError):
        det_exact(m)
    with pytest.raises(ValueError):
        ExactMatrix(((1, 2), (3,)))


@pytest.mark.parametrize("n", range(1, 7))
def test_identity(n: int) -> None:
    identity = ExactMatrix.identity(n)
    assert det_exact(identity) == 1
    rhs = [Fraction(i, 3) for i in range(n)]
    assert solve_exact(identity, rhs) == rhs


def test_det_with_row_swap_and_fractions() -> None:
    m = ExactMatrix(((0, Fraction(1, 2)), (Fraction(2, 3), 5)))
    assert det_exact(m) == Fraction(-1, 3)


@given(square_matrices())
def test_det_matches_cofactor_expansion(m) -> None:
    assert det_exact(m) == cofactor_det(m.rows)


@given(square_matrices(), st.lists(entries, min_size=4, max_size=4))
def test_solve_exact_has_zero_residual(m, rhs) -> None:
    rhs = rhs[: m.nrows]
    if det_exact(m) == 0:
        with pytest.raises(SingularSystemError, match="not a proper basis"):
            solve_exact(m, rhs)
        return
    assert matvec(m, solve_exact(m, rhs)) == rhs


def test_solve_exact_examples(example1, example4) -> None:
    monomials = polys("1", "x", "x^2", "x^3")
    v = vandermonde(monomials, example1.functionals)
    assert solve_exact(v, list(example1.values)) == list(fracs("3/2", 4, -1, "1/2"))

    shifted = polys("x", "x^2", "x^3", "x^4")
    v4 = vandermonde(shifted, example4.functionals)
    assert solve_exact(v4, list(example4.values)) == list(
        fracs("-325/27", "98/9", "-32/9", "13/27")
    )


def test_rank_exact() -> None:
    assert rank_exact(ExactMatrix(((1, 2), (2, 4)))) == 1
    assert rank_exact(ExactMatrix(((0, 0, 1), (0, 1, 0)))) == 2
    assert rank_exact(ExactMatrix(())) == 0


def test_oracle_interpolate(example1, example2) -> None:
    cubic = polys("1", "x", "x^2", "x^3")
    expected = parse_polynomial("1/2*x^3 - x^2 + 4*x + 3/2")
    assert oracle_interpolate(cubic, example1) == expected
    final = example2.reordered((0, 1, 3, 2))
    expected = parse_polynomial("-2*x^3 + 5*x^2 + 4*x - 1")
    assert oracle_interpolate(cubic, final) == expected
    single = problem_from_pairs([4], [(0, 0)], [Fraction(7, 3)])
    assert oracle_interpolate(polys("1"), single) == Polynomial.constant(Fraction(7, 3))
    first_three = BirkhoffProblem(
        example2.nodes, example2.functionals[:3], example2.values[:3]
    )
    with pytest.raises(SingularSystemError):
        oracle_interpolate(polys("1", "x", "x^2"), first_three)


def test_strong_properness(example2) -> None:
    final = example2.reordered((0, 1, 3, 2))
    monomials = polys("1", "x", "x^2", "x^3")
    assert leading_minors(monomials, final.functionals) == [1, 2, 4, -4]
    assert is_strongly_proper(monomials, final.functionals)
    assert not is_strongly_proper(monomials[:3], example2.functionals[:3])
    delta = Functional(0, DiffOperator.derivative(0), node_index=0)
    assert is_strongly_proper(polys("1"), [delta])


def test_greedy_minimal_basis(example1, example2) -> None:
    assert greedy_minimal_monomial_basis(example1.functionals, 20) == [0, 1, 2, 3]
    assert greedy_minimal_monomial_basis(example2.functionals, 20) == [0, 1, 2, 3]
    second = Functional(0, DiffOperator.derivative(2), node_index=0)
    assert greedy_minimal_monomial_basis([second], 5) == [2]
    with pytest.raises(DependentConditionsError, match="dependent conditions"):
        greedy_minimal_monomial_basis([second], 1)


def test_check_triangularity(example1, example4) -> None:
    table1 = polys("1", "x - 1", "x^2 - 4*x + 3", "x^3 - 6*x^2 + 12*x - 7")
    assert check_triangularity(table1, example1.functionals).ok
    table3 = polys(
        "x", "x^2 - 2*x", "x^3 - 11/2*x^2 + 8*x", "x^4 - 6*x^3 + 15*x^2 - 16*x"
    )
    assert check_triangularity(table3, example4.functionals).ok

    value = Functional(1, DiffOperator.derivative(0), node_index=0)
    slope = Functional(1, DiffOperator.derivative(1), node_index=0)
    check = check_triangularity(polys("1", "x - 1"), [slope, value])
    assert not check.ok
    assert check.violation == (1, 1)
    check = check_triangularity(polys("1", "x"), [value, slope])
    assert check.violation == (1, 2)


@given(square_matrices())
def test_det_of_transpose(m) -> None:
    assert det_exact(m.transpose()) == det_exact(m)


@given(square_matrices(), st.data())
def test_row_swap_negates_det(m, data) -> None:
    if m.nrows < 2:
        return
    i, j = data.draw(
        st.lists(st.integers(0, m.nrows - 1), min_size=2, max_size=2, unique=True)
    )
    rows = list(m.rows)
    rows[i], rows[j] = rows[j], rows[i]
    assert det_exact(ExactMatrix(tuple(rows))) == -det_exact(m)


def first_proper_subset(fs, cap: int) -> list[int] | None:
    """Exhaustive search over exponent subsets in lexicographic order."""
    for exponents in itertools.combinations(range(cap + 1), len(fs)):
        basis = [Polynomial.monomial(e) for e in exponents]
        if det_exact(vandermonde(basis, fs)) != 0:
            return list(exponents)
    return None


@settings(max_examples=60, deadline=None)
@given(problems(), st.integers(0, 8))
def test_greedy_basis_matches_exhaustive_search(problem, cap) -> None:
    expected = first_proper_subset(problem.functionals, cap)
    if expected is None:
        with pytest.raises(DependentConditionsError):
            greedy_minimal_monomial_basis(problem.functionals, cap)
    else:
        assert greedy_minimal_monomial_basis(problem.functionals, cap) == expected


@settings(deadline=None)
@given(problems(), st.integers(0, 3))
def test_strongly_proper_solves_every_prefix(problem, shift) -> None:
    basis = [Polynomial.monomial(shift + i) for i in range(problem.size)]
    if not is_strongly_proper(basis, problem.functionals):
        return
    for k in range(1, problem.size + 1):
        prefix = BirkhoffProblem(
            problem.nodes, problem.functionals[:k], problem.values[:k]
        )
        p = oracle_interpolate(basis[:k], prefix)
        assert [apply_functional(f, p) for f in prefix.functionals] == list(
            prefix.values
        )
