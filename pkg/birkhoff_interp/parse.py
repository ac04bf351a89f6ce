"""Parsing module for ``birkhoff-interp``.

Reads interpolation problems from JSON problem files and serialises
problems and solver results back to JSON-ready dictionaries.

A problem file lists its nodes and values as rational strings (``"3"``,
``"-1/2"``) so that no value ever passes through a float, and gives the
conditions either as an incidence matrix::

    {"nodes": ["1", "2", "3"],
     "incidence": [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
     "values": ["5", "6", "4", "7"]}

or as an explicit list of functionals::

    {"nodes": ["1", "2"],
     "conditions": [{"node_index": 0, "operator": {"order": 1}},
                    {"node_index": 1, "operator": {"coeffs": ["1", "0", "1"]}}],
     "values": ["1", "3"]}

Values given with an incidence matrix follow the row-major order of its
unit entries. The entry-point for reading is ``parse_problem()``; all
other public members serialise or are ``TypedDict`` definitions.
"""

import logging
import typing
import warnings
from collections.abc import Sequence
from fractions import Fraction

import orjson
from typing_extensions import NotRequired

from .conditions import (
    BirkhoffProblem,
    DiffOperator,
    Functional,
    IncidenceMatrix,
    canonical_order,
    first_polya_failure,
    functional_from_pair,
    incidence_from_pairs,
    pairs_from_incidence,
    validate_incidence,
)
from .errors import (
    DuplicateConditionError,
    PolyaConditionWarning,
    ProblemError,
    ProblemFileError,
)
from .poly import format_polynomial, format_rational, parse_rational
from .solver import SolveReport
from .verify import Verification

__all__ = [
    "ConditionSpec",
    "OperatorSpec",
    "ProblemFile",
    "ResultRecord",
    "parse_problem",
    "problem_incidence",
    "problem_to_document",
    "problem_to_json",
    "result_record",
]

logger = logging.getLogger(__name__)


class OperatorSpec(typing.TypedDict):
    """Differential operator of a condition.

    Exactly one key is present: ``order`` for ``D**order``, or
    ``coeffs`` for ``sum(coeffs[a] * D**a)`` with rational strings.
    """

    order: NotRequired[int]
    coeffs: NotRequired[list[str]]


class ConditionSpec(typing.TypedDict):
    """One functional ``delta_{nodes[node_index]} ∘ operator``."""

    node_index: int
    operator: OperatorSpec


class ProblemFile(typing.TypedDict):
    """Top-level problem document; exactly one of the two condition keys."""

    nodes: list[str]
    conditions: NotRequired[list[ConditionSpec]]
    incidence: NotRequired[list[list[int]]]
    values: list[str]


class ResultRecord(typing.TypedDict):
    """Machine-readable solver output.

    Every number is an exact rational string or an int. ``final_order``
    lists the 1-based input position of each condition in its final
    order, and ``swaps`` the 1-based condition exchanges.
    """

    algorithm: int
    final_order: list[int]
    conditions: list[str]
    values: list[str]
    monomial_exponents: list[int]
    newton_basis: list[str]
    pivots: list[str]
    interpolant: str
    escalations: int
    escalation_steps: list[int]
    swaps: list[list[int]]
    verification: NotRequired[Verification]


_PROBLEM_KEYS = {"nodes", "conditions", "incidence", "values"}


def _is_int(value: typing.Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _rational(value: typing.Any, location: str) -> Fraction:
    if not isinstance(value, str):
        raise ProblemFileError(
            f"expected a rational string such as \"3\" or \"-1/2\", got {value!r}",
            location,
        )
    try:
        return parse_rational(value)
    except ProblemError as e:
        raise ProblemFileError(str(e), location) from e


def _rational_list(value: typing.Any, location: str) -> list[Fraction]:
    if not isinstance(value, list):
        raise ProblemFileError("expected a list of rational strings", location)
    return [_rational(v, f"{location}[{i}]") for i, v in enumerate(value)]


def _load_document(text: str | bytes) -> dict[str, typing.Any]:
    try:
        doc = orjson.loads(text)
    except orjson.JSONDecodeError as e:
        raise ProblemFileError(
            f"invalid JSON: {e.msg}", f"line {e.lineno}, column {e.colno}"
        ) from e
    if not isinstance(doc, dict):
        raise ProblemFileError("a problem file must hold a JSON object", "document")
    if unknown := sorted(set(doc) - _PROBLEM_KEYS):
        raise ProblemFileError(f"unknown keys {unknown}", "document")
    for key in ("nodes", "values"):
        if key not in doc:
            raise ProblemFileError(f"missing required key '{key}'", "document")
    if ("conditions" in doc) == ("incidence" in doc):
        raise ProblemFileError(
            "exactly one of 'conditions' and 'incidence' must be given", "document"
        )
    return doc


def _operator(spec: typing.Any, location: str) -> DiffOperator:
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ProblemFileError(
            "expected exactly one of {'order': int} or {'coeffs': [...]}", location
        )
    if "order" in spec:
        order = spec["order"]
        if not _is_int(order) or order < 0:
            raise ProblemFileError(
                f"order must be a non-negative integer, got {order!r}",
                f"{location}.order",
            )
        return DiffOperator.derivative(order)
    if "coeffs" in spec:
        coeffs = _rational_list(spec["coeffs"], f"{location}.coeffs")
        try:
            return DiffOperator(tuple(coeffs))
        except ProblemError as e:
            raise ProblemFileError(str(e), f"{location}.coeffs") from e
    raise ProblemFileError(f"unknown operator key {next(iter(spec))!r}", location)


def _conditions(specs: typing.Any, nodes: Sequence[Fraction]) -> list[Functional]:
    if not isinstance(specs, list):
        raise ProblemFileError("expected a list of conditions", "conditions")
    functionals = []
    seen: dict[tuple[int, DiffOperator], int] = {}
    for i, spec in enumerate(specs):
        location = f"conditions[{i}]"
        if not isinstance(spec, dict) or set(spec) != {"node_index", "operator"}:
            raise ProblemFileError(
                "expected an object with 'node_index' and 'operator'", location
            )
        idx = spec["node_index"]
        if not _is_int(idx) or not 0 <= idx < len(nodes):
            raise ProblemFileError(
                f"node_index must be an integer in [0, {len(nodes) - 1}], got {idx!r}",
                f"{location}.node_index",
            )
        op = _operator(spec["operator"], f"{location}.operator")
        if (idx, op) in seen:
            raise DuplicateConditionError(
                f"duplicate condition: {location} repeats "
                f"conditions[{seen[idx, op]}]"
            )
        seen[idx, op] = i
        functionals.append(Functional(nodes[idx], op, node_index=idx))
    return functionals


def _incidence(
    entries: typing.Any, nodes: Sequence[Fraction], count: int
) -> list[Functional]:
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ProblemFileError("expected a list of rows", "incidence")
    if len(entries) != len(nodes):
        raise ProblemFileError(
            f"{len(entries)} rows given for {len(nodes)} nodes", "incidence"
        )
    matrix = IncidenceMatrix(tuple(tuple(row) for row in entries), declared_count=count)
    if (violation := validate_incidence(matrix)) is not None:
        raise ProblemFileError(str(violation), "incidence")
    return [functional_from_pair(nodes, pair) for pair in pairs_from_incidence(matrix)]


def parse_problem(
    text: str | bytes, keep_order: bool = False, warn_polya: bool = True
) -> BirkhoffProblem:
    """Parses and validates a JSON problem file.

    A condition list may leave nodes without any condition; such nodes
    are kept and logged at debug level. In an incidence matrix they would
    be all-zero rows, which are rejected.

    Args:
        text: Contents of the problem file.
        keep_order: Keep the conditions in file order. By default
            monomial problems are put in N-DOS order and general problems
            sorted by highest derivative order.
        warn_polya: Emit a ``PolyaConditionWarning`` when a monomial
            problem fails the Pólya check.

    Returns:
        The validated problem.

    Raises:
        ProblemFileError: if the file is not valid JSON or does not have
            the expected structure; the error carries the line and column
            or the offending field.
        DuplicateConditionError: if a condition is listed twice.
        ProblemError: for remaining validation failures, such as
            repeated nodes ("nodes must be pairwise distinct").
    """
    doc = _load_document(text)
    nodes = _rational_list(doc["nodes"], "nodes")
    values = _rational_list(doc["values"], "values")
    if "incidence" in doc:
        functionals = _incidence(doc["incidence"], nodes, len(values))
    else:
        functionals = _conditions(doc["conditions"], nodes)
        used = {f.node_index for f in functionals}
        if unused := [i for i in range(len(nodes)) if i not in used]:
            logger.debug("nodes %s carry no condition", unused)
        if len(functionals) != len(values):
            raise ProblemFileError(
                f"{len(values)} values given for {len(functionals)} conditions",
                "values",
            )
    problem = BirkhoffProblem(tuple(nodes), tuple(functionals), tuple(values))
    if warn_polya and problem.is_monomial:
        failure = first_polya_failure(problem_incidence(problem))
        if failure is not None:
            warnings.warn(
                f"Incidence matrix fails the Pólya condition at column {failure}; "
                "the problem may still be solvable.",
                PolyaConditionWarning,
                stacklevel=2,
            )
    if not keep_order:
        problem, _ = canonical_order(problem)
    return problem


def problem_incidence(problem: BirkhoffProblem) -> IncidenceMatrix:
    """Incidence matrix of a monomial problem.

    Raises:
        ValueError: if a condition is not a single derivative value.
    """
    pairs = [f.pair for f in problem.functionals]
    return incidence_from_pairs(pairs, len(problem.nodes))


def problem_to_document(problem: BirkhoffProblem) -> ProblemFile:
    """Serialises a problem as an explicit condition list.

    Functionals without a ``node_index`` are matched to ``problem.nodes``
    by value, and their node is appended when it is not listed.
    """
    nodes = list(problem.nodes)
    conditions: list[ConditionSpec] = []
    for f in problem.functionals:
        if f.node_index is not None:
            idx = f.node_index
        elif f.node in nodes:
            idx = nodes.index(f.node)
        else:
            idx = len(nodes)
            nodes.append(f.node)
        if f.op.is_monomial:
            operator = OperatorSpec(order=f.op.order)
        else:
            operator = OperatorSpec(coeffs=[format_rational(c) for c in f.op.coeffs])
        conditions.append(ConditionSpec(node_index=idx, operator=operator))
    return ProblemFile(
        nodes=[format_rational(x) for x in nodes],
        conditions=conditions,
        values=[format_rational(y) for y in problem.values],
    )


def problem_to_json(problem: BirkhoffProblem) -> bytes:
    """``problem_to_document`` encoded as indented JSON."""
    return orjson.dumps(problem_to_document(problem), option=orjson.OPT_INDENT_2)


def result_record(
    report: SolveReport, verification: Verification | None = None
) -> ResultRecord:
    """Builds the JSON-ready record of a solver run."""
    record = ResultRecord(
        algorithm=report.algorithm,
        final_order=[i + 1 for i in report.final_order],
        conditions=[str(f) for f in report.functionals],
        values=[format_rational(y) for y in report.values],
        monomial_exponents=list(report.monomial_exponents),
        newton_basis=[format_polynomial(g) for g in report.newton_basis],
        pivots=[format_rational(c) for c in report.pivots],
        interpolant=format_polynomial(report.interpolant),
        escalations=report.escalations,
        escalation_steps=list(report.escalation_steps),
        swaps=[list(s) for s in report.swaps],
    )
    if verification is not None:
        record["verification"] = verification
    return record
