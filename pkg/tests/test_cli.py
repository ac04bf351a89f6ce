from pathlib import Path
from unittest.mock import patch

import orjson
import pytest
from typer.testing import CliRunner

from birkhoff_interp.cli import cli

PARENT_DIR = Path(__file__).parent


def _write(tmp_path: Path, doc: dict) -> str:
    path = tmp_path / "problem.json"
    path.write_bytes(orjson.dumps(doc))
    return str(path)


def test_solve_example1(example1_file) -> None:
    runner = CliRunner()
    result = runner.invoke(
        cli, ["solve", str(example1_file), "--algorithm", "1", "--verify"]
    )
    assert result.exit_code == 0, result.output
    assert "interpolant: 1/2*x^3 - x^2 + 4*x + 3/2" in result.stdout
    assert "monomial basis: 1, x, x^2, x^3" in result.stdout
    assert "escalations: 0" in result.stdout
    assert "FAILED" not in result.stdout


def test_solve_example2_with_swap(example2_file) -> None:
    runner = CliRunner()
    result = runner.invoke(
        cli, ["solve", str(example2_file), "--algorithm", "2", "--verify"]
    )
    assert result.exit_code == 0, result.output
    assert "interpolant: -2*x^3 + 5*x^2 + 4*x - 1" in result.stdout
    assert "swaps: 3 <-> 4" in result.stdout
    assert "g4 = x^3 - x^2 - x + 1 (pivot -1)" in result.stdout


def test_solve_example2_escalates(example2_file) -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["solve", str(example2_file), "-a", "1"])
    assert result.exit_code == 0, result.output
    assert "escalations: 1 (at k = 3)" in result.stdout
    assert "interpolant: 5/2*x^4 - 2*x^3 + 4*x + 3/2" in result.stdout


def test_solve_json(example4_file) -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["solve", str(example4_file), "--json", "--verify"])
    assert result.exit_code == 0, result.output
    record = orjson.loads(result.stdout)
    assert record["algorithm"] == 2
    assert record["monomial_exponents"] == [1, 2, 3, 4]
    assert record["pivots"] == ["1", "2", "-3/2", "18"]
    assert record["interpolant"] == "13/27*x^4 - 32/9*x^3 + 98/9*x^2 - 325/27*x"
    assert record["swaps"] == []
    assert all(record["verification"].values())


def test_keep_order(example2_file) -> None:
    runner = CliRunner()
    sorted_run = runner.invoke(cli, ["solve", str(example2_file), "--json"])
    kept_run = runner.invoke(
        cli, ["solve", str(example2_file), "--json", "--keep-order", "-a", "2"]
    )
    assert sorted_run.exit_code == kept_run.exit_code == 0
    assert orjson.loads(sorted_run.stdout)["values"][:2] == ["2", "6"]
    kept = orjson.loads(kept_run.stdout)
    assert kept["values"][:2] == ["2", "4"]
    assert kept["final_order"][:2] == [1, 2]


def test_max_degree_too_low(example2_file) -> None:
    runner = CliRunner()
    result = runner.invoke(
        cli, ["solve", str(example2_file), "-a", "1", "--max-degree", "3"]
    )
    assert result.exit_code == 2
    assert "degree cap 3 exceeded" in result.stderr


def test_missing_file(tmp_path) -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["solve", str(tmp_path / "nope.json")])
    assert result.exit_code == 1
    assert "Cannot read problem file" in result.stderr


def test_invalid_json(tmp_path) -> None:
    path = tmp_path / "broken.json"
    path.write_text('{"nodes": ["1"],')
    runner = CliRunner()
    result = runner.invoke(cli, ["solve", str(path)])
    assert result.exit_code == 1
    assert "Invalid problem file" in result.stderr


def test_duplicate_condition(tmp_path) -> None:
    doc = {
        "nodes": ["1"],
        "conditions": [
            {"node_index": 0, "operator": {"order": 1}},
            {"node_index": 0, "operator": {"order": 1}},
        ],
        "values": ["1", "2"],
    }
    runner = CliRunner()
    result = runner.invoke(cli, ["solve", _write(tmp_path, doc)])
    assert result.exit_code == 1
    assert "duplicate" in result.stderr


def test_bad_algorithm(example1_file) -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["solve", str(example1_file), "--algorithm", "3"])
    assert result.exit_code == 1


def test_dependent_conditions(scaled_duplicate_file) -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["solve", str(scaled_duplicate_file)])
    assert result.exit_code == 2
    assert "dependent conditions" in result.stderr


def test_verification_failure(example1_file) -> None:
    runner = CliRunner()
    with patch(
        "birkhoff_interp.cli.verify_report",
        return_value={"triangular": False, "interpolates": True},
    ):
        result = runner.invoke(cli, ["solve", str(example1_file), "--verify"])
    assert result.exit_code == 3
    assert "triangular: FAILED" in result.stdout
    assert "Verification failed" in result.stderr


def test_polya_warning_on_stderr(tmp_path) -> None:
    doc = {"nodes": ["1"], "incidence": [[0, 0, 1]], "values": ["1"]}
    runner = CliRunner()
    result = runner.invoke(cli, ["solve", _write(tmp_path, doc)])
    assert result.exit_code == 0, result.output
    assert "Pólya" in result.stderr
    assert "interpolant: 1/2*x^2" in result.stdout


def test_random_empty() -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["random", "--count", "0"])
    assert result.exit_code == 0
    assert result.stdout == "0 passed, 0 failed\n"


def test_random_is_repeatable(tmp_path) -> None:
    runner = CliRunner()
    args = ["random", "--count", "20", "--seed", "5", "--reproducer-dir", str(tmp_path)]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout == "20 passed, 0 failed\n"


def test_random_bad_count() -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["random", "--count", "-1"])
    assert result.exit_code == 1


def test_polya_satisfied(example1_file) -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["polya", str(example1_file)])
    assert result.exit_code == 0
    assert result.stdout == (
        "x_0: 1 0 0\n"
        "x_1: 0 1 1\n"
        "x_2: 0 0 1\n"
        "Pólya condition satisfied\n"
    )


def test_polya_violated(tmp_path) -> None:
    doc = {"nodes": ["1", "2"], "incidence": [[0, 1], [0, 1]], "values": ["1", "2"]}
    runner = CliRunner()
    result = runner.invoke(cli, ["polya", _write(tmp_path, doc)])
    assert result.exit_code == 0
    assert result.stdout.endswith("Pólya condition violated at column 0\n")
    assert "Warning" not in result.stderr


def test_polya_needs_monomial_conditions(example4_file) -> None:
    runner = CliRunner()
    result = runner.invoke(cli, ["polya", str(example4_file)])
    assert result.exit_code == 1


def test_no_args_prints_help() -> None:
    runner = CliRunner()
    result = runner.invoke(cli, [])
    assert "solve" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["solve", "{file}", "--algorithm", "abc"],
        ["solve", "{file}", "--max-degree", "x"],
        ["solve", "{file}", "--bogus"],
        ["random", "--count", "many"],
        ["--bogus", "random"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_invalid(args, example1_file) -> None:
    runner = CliRunner()
    result = runner.invoke(cli, [a.format(file=example1_file) for a in args])
    assert result.exit_code == 1


def test_max_degree_below_starting_degree(example1_file) -> None:
    runner = CliRunner()
    result = runner.invoke(
        cli, ["solve", str(example1_file), "-a", "1", "--max-degree", "0"]
    )
    assert result.exit_code == 2
    assert "below the starting degree 3" in result.stderr
