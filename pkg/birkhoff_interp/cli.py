"""CLI entrypoint for ``birkhoff-interp``.

Defines the command-line interface for ``birkhoff-interp``. The typer
application is ``cli``, with the ``solve``, ``random`` and ``polya``
commands.

Exit codes are 0 on success, 1 for unreadable or invalid problem files
and for command-line usage errors, 2 when a solver gives up, and 3 when
a result fails verification.
"""

import sys
import typing
import warnings
from pathlib import Path

import orjson
import typer
from jinja2 import Environment, FileSystemLoader
from rich.console import Console
from rich.markup import escape
from typer.core import TyperGroup

try:  # typer >= 0.26 vendors its own click
    from typer._click.core import Context
    from typer._click.exceptions import UsageError
except ImportError:
    from click import Context, UsageError

from .conditions import BirkhoffProblem, first_polya_failure
from .config import configure_logging
from .errors import PolyaConditionWarning, ProblemError, SolverError
from .parse import parse_problem, problem_incidence, result_record
from .poly import Polynomial, format_polynomial
from .runner import run_random
from .solver import solve as run_solver
from .verify import failed_checks, verify_report

PACKAGE_DIR = Path(__file__).parent

EXIT_INVALID = 1
EXIT_SOLVER = 2
EXIT_VERIFICATION = 3

err_console = Console(stderr=True)


class _CliGroup(TyperGroup):
    """Reports command-line usage errors with the invalid-input exit code."""

    def make_context(
        self,
        info_name: str | None,
        args: list[str],
        parent: Context | None = None,
        **extra: typing.Any,
    ) -> Context:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except UsageError as e:
            e.exit_code = EXIT_INVALID
            raise

    def invoke(self, ctx: Context) -> typing.Any:
        # subcommand options are parsed in here
        try:
            return super().invoke(ctx)
        except UsageError as e:
            e.exit_code = EXIT_INVALID
            raise


cli = typer.Typer(cls=_CliGroup, no_args_is_help=True)


def _error(message: str) -> None:
    err_console.print(f"[bold red]Error: [/bold red]{escape(message)}")


def _read_problem(
    file: Path, keep_order: bool = False, warn_polya: bool = True
) -> BirkhoffProblem:
    """Reads a problem file, turning failures into exit code 1.

    Pólya warnings are printed to stderr instead of being raised.
    """
    try:
        text = file.read_bytes()
    except OSError as e:
        _error(f"Cannot read problem file '{file}': {e.strerror}.")
        raise typer.Exit(code=EXIT_INVALID) from e
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PolyaConditionWarning)
        try:
            problem = parse_problem(text, keep_order=keep_order, warn_polya=warn_polya)
        except ProblemError as e:
            _error(f"Invalid problem file '{file}': {e}")
            raise typer.Exit(code=EXIT_INVALID) from e
    for warning in caught:
        err_console.print(
            f"[bold yellow]Warning: [/bold yellow]{escape(str(warning.message))}"
        )
    return problem


@cli.callback()
def main(
    verbose: typing.Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Log solver steps to stderr."),
    ] = False,
) -> None:
    """Exact recursive Birkhoff interpolation."""
    configure_logging(verbose)


@cli.command()
def solve(
    file: typing.Annotated[Path, typer.Argument(help="JSON problem file to solve.")],
    algorithm: typing.Annotated[
        int | None,
        typer.Option(
            "--algorithm",
            "-a",
            help=(
                "1 for sequential degree escalation, 2 for swap-then-escalate. "
                "Defaults to 1 for single-derivative conditions and 2 otherwise."
            ),
        ),
    ] = None,
    verify: typing.Annotated[
        bool,
        typer.Option(
            "--verify", help="Check the result against the Vandermonde oracle."
        ),
    ] = False,
    keep_order: typing.Annotated[
        bool,
        typer.Option(
            "--keep-order", help="Use the conditions in file order, without sorting."
        ),
    ] = False,
    max_degree: typing.Annotated[
        int | None,
        typer.Option(
            "--max-degree",
            help=(
                "Highest degree a working monomial may reach, the starting "
                "ones included. Defaults to N*9 + max order."
            ),
        ),
    ] = None,
    json_output: typing.Annotated[
        bool,
        typer.Option("--json", help="Print the result as JSON."),
    ] = False,
) -> None:
    """Computes a monomial basis, Newton-type basis and interpolant for FILE."""
    if algorithm is not None and algorithm not in (1, 2):
        _error(f"--algorithm must be 1 or 2, got {algorithm}.")
        raise typer.Exit(code=EXIT_INVALID)
    if max_degree is not None and max_degree < 0:
        _error(f"--max-degree must be non-negative, got {max_degree}.")
        raise typer.Exit(code=EXIT_INVALID)
    problem = _read_problem(file, keep_order=keep_order)

    try:
        report = run_solver(problem, algorithm=algorithm, degree_cap=max_degree)
    except SolverError as e:
        _error(str(e))
        raise typer.Exit(code=EXIT_SOLVER) from e

    verification = verify_report(report) if verify else None
    record = result_record(report, verification)
    if json_output:
        sys.stdout.write(orjson.dumps(record, option=orjson.OPT_INDENT_2).decode())
        sys.stdout.write("\n")
    else:
        env = Environment(
            loader=FileSystemLoader(PACKAGE_DIR),
            trim_blocks=True,
            lstrip_blocks=True,
        )
        template = env.get_template("templates/report.j2")
        sys.stdout.write(
            template.render(
                **record,
                monomial_basis=[
                    format_polynomial(Polynomial.monomial(e))
                    for e in report.monomial_exponents
                ],
            )
        )

    if verification is not None and (failed := failed_checks(verification)):
        _error(f"Verification failed: {', '.join(failed)}.")
        raise typer.Exit(code=EXIT_VERIFICATION)


@cli.command("random")
def random_(
    count: typing.Annotated[
        int, typer.Option("--count", help="Number of random problems.")
    ] = 200,
    max_n: typing.Annotated[
        int, typer.Option("--max-n", help="Largest number of conditions.")
    ] = 6,
    max_order: typing.Annotated[
        int, typer.Option("--max-order", help="Largest derivative order.")
    ] = 4,
    seed: typing.Annotated[int, typer.Option("--seed", help="Random seed.")] = 42,
    reproducer_dir: typing.Annotated[
        Path | None,
        typer.Option(
            "--reproducer-dir",
            help="Where failing problems are written. Defaults to the user cache.",
        ),
    ] = None,
) -> None:
    """Runs both algorithms on seeded random problems and checks them."""
    if count < 0:
        _error(f"--count must be non-negative, got {count}.")
        raise typer.Exit(code=EXIT_INVALID)
    try:
        summary = run_random(count, max_n, max_order, seed, reproducer_dir)
    except ValueError as e:
        _error(str(e))
        raise typer.Exit(code=EXIT_INVALID) from e
    for index, names in summary.failures.items():
        err_console.print(f"[red]case {index}:[/red] {escape(', '.join(names))}")
    for path in summary.reproducers:
        err_console.print(f"[yellow]Reproducer written to {escape(str(path))}[/yellow]")
    sys.stdout.write(f"{summary.passed} passed, {summary.failed} failed\n")
    if summary.failed:
        raise typer.Exit(code=EXIT_VERIFICATION)


@cli.command()
def polya(
    file: typing.Annotated[Path, typer.Argument(help="JSON problem file to check.")],
) -> None:
    """Prints the incidence matrix of FILE and its Pólya verdict."""
    problem = _read_problem(file, keep_order=True, warn_polya=False)
    if not problem.is_monomial:
        _error("The Pólya check needs single-derivative conditions only.")
        raise typer.Exit(code=EXIT_INVALID)
    matrix = problem_incidence(problem)
    for beta, row in enumerate(matrix.entries):
        sys.stdout.write(f"x_{beta}: {' '.join(str(e) for e in row)}\n")
    failure = first_polya_failure(matrix)
    if failure is None:
        sys.stdout.write("Pólya condition satisfied\n")
    else:
        sys.stdout.write(f"Pólya condition violated at column {failure}\n")
