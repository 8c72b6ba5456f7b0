"""
Shared fixtures for the alphalab tests.
"""

import os
import sys
from pathlib import Path

import pytest

# Add the project root to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from spectral import Grid, TrigFieldSpec  # noqa: E402


@pytest.fixture
def field_of():
    """Build the vector field of a trigonometric spec on a grid."""

    def build(spec: str, grid: Grid):
        return TrigFieldSpec.parse(spec, dim=grid.dim, n_components=grid.dim).to_field(grid)

    return build


@pytest.fixture
def grid16() -> Grid:
    return Grid(2, 16)


@pytest.fixture
def grid32() -> Grid:
    return Grid(2, 32)


@pytest.fixture
def grid1d() -> Grid:
    return Grid(1, 64)


@pytest.fixture
def output_dir(tmp_path: Path, monkeypatch) -> Path:
    """A fresh output directory, with the environment override cleared."""
    monkeypatch.delenv("HARNESS_OUTPUT_DIR", raising=False)
    return tmp_path / "results"
