from . import conditions, oracle, parse, poly, solver, verify
from ._version import __version__
from .conditions import BirkhoffProblem, DiffOperator, Functional, problem_from_pairs
from .errors import BirkhoffError
from .poly import Polynomial
from .solver import SolveReport, algorithm1, algorithm2, solve
from .verify import verify_report

__all__ = [
    "BirkhoffError",
    "BirkhoffProblem",
    "DiffOperator",
    "Functional",
    "Polynomial",
    "SolveReport",
    "__version__",
    "algorithm1",
    "algorithm2",
    "conditions",
    "oracle",
    "parse",
    "poly",
    "problem_from_pairs",
    "solve",
    "solver",
    "verify",
    "verify_report",
]
