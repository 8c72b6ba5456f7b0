"""
Base preset class.

A preset turns an ExperimentConfig into output series and invariant checks.
Subclasses implement ``_run``; ``execute`` adds timing, logging and error
wrapping, and ``fan_out`` runs independent cases on worker threads.
"""

from __future__ import annotations

import asyncio
import time
from abc import ABC, abstractmethod
from typing import Any, Awaitable, Callable, Iterable, Optional, TypeVar

from config.logging_config import get_logger, log_invariant_check, log_preset_run
from config.settings import get_settings

from .experiment import ExperimentConfig
from .summary import InvariantResult
from .writer import SeriesWriter

T = TypeVar("T")
R = TypeVar("R")


class PresetError(Exception):
    """Base exception for preset failures."""
    pass


class PresetConfigurationError(PresetError):
    """The config is valid but does not suit this preset."""
    pass


class BasePreset(ABC):
    """
    Base class for all presets.

    Attributes:
        name: Preset name as used in experiment files
        description: One-line description for ``list-presets``
        invariants: Names of the invariants the preset checks
    """

    name: str = ""
    description: str = ""
    invariants: tuple[str, ...] = ()

    def __init__(self, config: ExperimentConfig, writer: SeriesWriter):
        self.config = config
        self.writer = writer
        self.logger = get_logger(f"preset.{self.name}")
        self.results: list[InvariantResult] = []
        self.seeds: dict[str, int] = {}
        self._semaphore = asyncio.Semaphore(get_settings().harness.max_workers)

    @abstractmethod
    async def _run(self) -> None:
        """Compute, write outputs and record invariants."""
        pass

    async def execute(self) -> list[InvariantResult]:
        """
        Run the preset with timing and error handling.

        Raises:
            PresetError: If the preset fails for any reason
        """
        start = time.perf_counter()
        try:
            self.logger.info("preset_started", preset=self.name)
            await self._run()
        except PresetError as e:
            log_preset_run(self.logger, self.name, time.perf_counter() - start, success=False, error_message=str(e))
            raise
        except Exception as e:
            log_preset_run(self.logger, self.name, time.perf_counter() - start, success=False, error_message=str(e))
            raise PresetError(f"preset {self.name} failed: {e}") from e
        log_preset_run(
            self.logger,
            self.name,
            time.perf_counter() - start,
            success=True,
            checks=len(self.results),
            failed=sum(1 for r in self.results if r.hard and not r.passed),
        )
        return self.results

    async def fan_out(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Apply ``fn`` to every item on worker threads; results keep item order."""

        async def bounded(item: T) -> R:
            async with self._semaphore:
                return await asyncio.to_thread(fn, item)

        tasks: list[Awaitable[R]] = [bounded(item) for item in items]
        return list(await asyncio.gather(*tasks))

    def check(
        self,
        name: str,
        measured: float,
        threshold: float,
        mode: str = "le",
        hard: bool = True,
        detail: Optional[str] = None,
    ) -> InvariantResult:
        """
        Record an invariant ``measured <= threshold`` (mode ``le``),
        ``measured >= threshold`` (``ge``) or ``measured > threshold`` (``gt``).
        """
        measured = float(measured)
        if mode == "le":
            passed = measured <= threshold
        elif mode == "ge":
            passed = measured >= threshold
        elif mode == "gt":
            passed = measured > threshold
        else:
            raise ValueError(f"unknown comparison mode {mode!r}")
        result = InvariantResult(
            name=name, passed=bool(passed), measured=measured, threshold=threshold, hard=hard, detail=detail
        )
        self.results.append(result)
        log_invariant_check(self.logger, name, measured, threshold, result.passed, hard)
        return result

    def get_info(self) -> dict[str, Any]:
        return {"name": self.name, "description": self.description, "invariants": list(self.invariants)}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"
