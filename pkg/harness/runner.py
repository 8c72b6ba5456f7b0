"""
Experiment runner.

Dispatches an ExperimentConfig to its preset, wraps the run in a RunContext,
and writes the RunSummary next to the outputs.
"""

from __future__ import annotations

import asyncio
import time
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from config.logging_config import RunContext, get_logger
from config.settings import get_settings

from .base_preset import BasePreset, PresetError
from .experiment import ExperimentConfig
from .presets import PRESETS
from .summary import RunSummary
from .writer import SeriesWriter


class UnknownPresetError(PresetError):
    """Raised when no preset is registered under the requested name."""
    pass


class ExperimentRunner:
    """
    Registry of presets and the entry point for running experiments.

    Presets are registered by name; ``run`` resolves the output directory
    (``HARNESS_OUTPUT_DIR`` wins over the experiment file), executes the
    preset and writes the summary.
    """

    def __init__(self, presets: Optional[dict[str, type[BasePreset]]] = None):
        self.logger = get_logger("harness.runner")
        self.settings = get_settings()
        self.presets: dict[str, type[BasePreset]] = dict(PRESETS if presets is None else presets)

    def register_preset(self, preset_cls: type[BasePreset]) -> None:
        self.presets[preset_cls.name] = preset_cls
        self.logger.debug("preset_registered", preset=preset_cls.name)

    def list_presets(self) -> list[dict[str, Any]]:
        return [
            {"name": cls.name, "description": cls.description, "invariants": list(cls.invariants)}
            for cls in self.presets.values()
        ]

    def output_dir_for(self, config: ExperimentConfig) -> Path:
        return Path(self.settings.resolve_output_dir(config.output_dir))

    async def run(self, config: ExperimentConfig, run_id: Optional[str] = None) -> RunSummary:
        """
        Execute ``config`` and write its summary.

        A failing preset is recorded in ``RunSummary.error`` rather than
        raised, so the summary is always written.

        Raises:
            UnknownPresetError: If the preset is not registered
        """
        name = config.preset.value
        preset_cls = self.presets.get(name)
        if preset_cls is None:
            raise UnknownPresetError(f"unknown preset {name!r}; available: {sorted(self.presets)}")

        run_id = run_id or uuid.uuid4().hex[:12]
        output_dir = self.output_dir_for(config)
        writer = SeriesWriter(output_dir)
        summary = RunSummary(
            preset=name,
            run_id=run_id,
            config=config.model_dump(mode="json"),
            started_at=datetime.now(timezone.utc).isoformat(),
        )

        with RunContext(run_id, preset=name):
            self.logger.info("run_started", output_dir=str(output_dir))
            preset = preset_cls(config, writer)
            start = time.perf_counter()
            try:
                await preset.execute()
            except PresetError as e:
                summary.error = str(e)
            summary.wall_time = time.perf_counter() - start
            summary.invariants = list(preset.results)
            summary.seeds = dict(preset.seeds)
            summary.outputs = list(writer.outputs)
            summary.write(output_dir / self.settings.harness.summary_name)
            self.logger.info(
                "run_finished",
                passed=summary.passed,
                failed=[i.name for i in summary.failed_invariants],
                wall_time=summary.wall_time,
            )
        return summary

    def run_sync(self, config: ExperimentConfig, run_id: Optional[str] = None) -> RunSummary:
        return asyncio.run(self.run(config, run_id))
