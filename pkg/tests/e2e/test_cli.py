"""
End-to-end tests for the command line: exit codes, validation output and a
full run writing its summary.
"""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from main import EXIT_INVARIANT_FAILURE, EXIT_OK, EXIT_USAGE, cli

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"


@pytest.fixture
def cli_runner() -> CliRunner:
    return CliRunner()


def write_config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "experiment.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_list_presets(cli_runner):
    result = cli_runner.invoke(cli, ["list-presets"])
    assert result.exit_code == EXIT_OK
    assert "euler2d" in result.output
    assert "conjugate-scan" in result.output


def test_validate_prints_defaults(cli_runner):
    result = cli_runner.invoke(cli, ["validate", str(CONFIG_DIR / "euler2d_zero.yaml")])
    assert result.exit_code == EXIT_OK
    assert '"preset": "euler2d"' in result.output
    assert '"cadence": 10' in result.output


def test_validate_reports_issues(cli_runner, tmp_path):
    path = write_config(tmp_path, "preset: euler2d\ndt: -1\n")
    result = cli_runner.invoke(cli, ["validate", str(path)])
    assert result.exit_code == EXIT_USAGE
    assert "dt" in result.output


def test_run_writes_summary(cli_runner, output_dir):
    result = cli_runner.invoke(
        cli, ["run", str(CONFIG_DIR / "euler2d_zero.yaml"), "--output-dir", str(output_dir)]
    )
    assert result.exit_code == EXIT_OK, result.output
    summary = json.loads((output_dir / "summary.json").read_text(encoding="utf-8"))
    assert summary["preset"] == "euler2d"
    assert summary["error"] is None
    assert (output_dir / "energy.csv").exists()


def test_failed_run_exits_with_invariant_failure(cli_runner, tmp_path, output_dir):
    path = write_config(
        tmp_path,
        "preset: curvature-table\ncurvature:\n  wavenumbers: [4]\n  resolutions: [8]\n",
    )
    result = cli_runner.invoke(cli, ["run", str(path), "--output-dir", str(output_dir)])
    assert result.exit_code == EXIT_INVARIANT_FAILURE
    assert (output_dir / "summary.json").exists()


def test_missing_file(cli_runner, tmp_path):
    result = cli_runner.invoke(cli, ["run", str(tmp_path / "absent.yaml")])
    assert result.exit_code == EXIT_USAGE


def test_unknown_command(cli_runner):
    assert cli_runner.invoke(cli, ["plot"]).exit_code == EXIT_USAGE
