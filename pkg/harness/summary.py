"""
Run summary: config echo, timings, invariant outcomes and output manifest.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field


class InvariantResult(BaseModel):
    """Outcome of one invariant check."""

    name: str
    passed: bool
    measured: float
    threshold: float
    hard: bool = True
    detail: Optional[str] = None


class OutputFile(BaseModel):
    """A file written by the run, relative to the output directory."""

    path: str
    sha256: str
    kind: str = "csv"


class RunSummary(BaseModel):
    preset: str
    run_id: str
    config: dict[str, Any]
    started_at: str
    wall_time: float = 0.0
    seeds: dict[str, int] = Field(default_factory=dict)
    invariants: list[InvariantResult] = Field(default_factory=list)
    outputs: list[OutputFile] = Field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        """True unless the preset raised or a hard invariant failed."""
        return self.error is None and all(i.passed for i in self.invariants if i.hard)

    @property
    def failed_invariants(self) -> list[InvariantResult]:
        return [i for i in self.invariants if i.hard and not i.passed]

    def write(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")
        return path
