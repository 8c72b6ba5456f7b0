"""
Main entry point for alphalab.

    python main.py run configs/curvature_table.yaml [--output-dir DIR]
    python main.py validate configs/euler2d_random.yaml
    python main.py list-presets

Exit codes: 0 success, 1 invariant failure, 2 usage error.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from config.logging_config import get_logger
from harness import ConfigError, ExperimentRunner, RunSummary, load_config, validate

EXIT_OK = 0
EXIT_INVARIANT_FAILURE = 1
EXIT_USAGE = 2

console = Console()
logger = get_logger("main")


def _load_or_exit(path: Path):
    try:
        return load_config(path)
    except ConfigError as e:
        for issue in e.issues:
            console.print(f"[red]{issue}[/red]")
        sys.exit(EXIT_USAGE)
    except OSError as e:
        console.print(f"[red]cannot read {path}: {e}[/red]")
        sys.exit(EXIT_USAGE)


def _summary_table(summary: RunSummary) -> Table:
    table = Table(title=f"{summary.preset} ({summary.run_id})")
    table.add_column("invariant")
    table.add_column("measured", justify="right")
    table.add_column("threshold", justify="right")
    table.add_column("result")
    for result in summary.invariants:
        if result.passed:
            status = "[green]pass[/green]"
        elif result.hard:
            status = "[red]FAIL[/red]"
        else:
            status = "[yellow]soft fail[/yellow]"
        table.add_row(result.name, f"{result.measured:.6g}", f"{result.threshold:.6g}", status)
    return table


@click.group()
def cli() -> None:
    """Euler-α and H¹ diffeomorphism-group experiments on flat tori."""


@cli.command()
@click.argument("config_path", type=click.Path(path_type=Path))
@click.option("--output-dir", type=click.Path(path_type=Path), default=None, help="Override output_dir")
def run(config_path: Path, output_dir: Optional[Path]) -> None:
    """Run the experiment in CONFIG_PATH."""
    config = _load_or_exit(config_path)
    logger.info("cli_run", config_path=str(config_path), preset=config.preset.value)
    if output_dir is not None:
        config = config.model_copy(update={"output_dir": output_dir})

    summary = ExperimentRunner().run_sync(config)
    console.print(_summary_table(summary))
    console.print(f"outputs: {len(summary.outputs)} files, wall time {summary.wall_time:.2f}s")
    if summary.error:
        console.print(f"[red]error: {summary.error}[/red]")
    if not summary.passed:
        sys.exit(EXIT_INVARIANT_FAILURE)


@cli.command("validate")
@click.argument("config_path", type=click.Path(path_type=Path))
def validate_command(config_path: Path) -> None:
    """Validate CONFIG_PATH and print the config with defaults filled in."""
    try:
        text = config_path.read_text(encoding="utf-8")
    except OSError as e:
        console.print(f"[red]cannot read {config_path}: {e}[/red]")
        sys.exit(EXIT_USAGE)
    result = validate(text)
    if isinstance(result, list):
        for issue in result:
            console.print(f"[red]{issue}[/red]")
        sys.exit(EXIT_USAGE)
    console.print_json(result.model_dump_json())


@cli.command("list-presets")
def list_presets() -> None:
    """List the available presets and the invariants they check."""
    table = Table(title="presets")
    table.add_column("name")
    table.add_column("description")
    table.add_column("invariants")
    for info in ExperimentRunner().list_presets():
        table.add_row(info["name"], info["description"], ", ".join(info["invariants"]))
    console.print(table)


def main() -> None:
    # click reports its own usage errors with exit status 2
    cli()


if __name__ == "__main__":
    main()
