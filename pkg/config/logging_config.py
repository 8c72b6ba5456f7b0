"""
Logging configuration for alphalab.

This module provides structured logging with run identifiers bound through
structlog contextvars, plus helpers for the events every run emits: preset
runs, solver events and invariant checks.
"""

import logging
import sys
from datetime import datetime, timezone
from typing import Any, Optional

import structlog
from structlog.stdlib import LoggerFactory
from structlog.processors import JSONRenderer
from structlog.types import Processor

from .settings import get_settings


def setup_structured_logging() -> structlog.stdlib.BoundLogger:
    """
    Setup structured logging for the whole process.

    Returns:
        Configured structured logger instance
    """
    settings = get_settings()

    processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
    ]

    if settings.logging.enable_structured_logging and settings.logging.format == "json":
        processors.append(JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer())

    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stdout,
        level=getattr(logging, settings.logging.level.upper()),
    )

    return structlog.get_logger("alphalab")


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """
    Get a structured logger instance with the given name.

    Args:
        name: Logger name

    Returns:
        Structured logger instance
    """
    return structlog.get_logger(name)


class RunContext:
    """Context manager binding a run identifier into every log record."""

    def __init__(self, run_id: str, **context: Any):
        self.run_id = run_id
        self.context = context
        self._previous_context: dict[str, Any] = {}

    def __enter__(self) -> "RunContext":
        self._previous_context = structlog.contextvars.get_contextvars().copy()
        structlog.contextvars.clear_contextvars()
        structlog.contextvars.bind_contextvars(
            run_id=self.run_id,
            run_started=datetime.now(timezone.utc).isoformat(),
            **self.context,
        )
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        structlog.contextvars.clear_contextvars()
        if self._previous_context:
            structlog.contextvars.bind_contextvars(**self._previous_context)


def log_preset_run(
    logger: structlog.stdlib.BoundLogger,
    preset_name: str,
    wall_time: float,
    success: bool = True,
    error_message: Optional[str] = None,
    **kwargs: Any,
) -> None:
    """
    Log a preset execution with its wall time.

    Args:
        logger: Structured logger instance
        preset_name: Name of the preset
        wall_time: Wall time in seconds
        success: Whether the preset completed without raising
        error_message: Error message if the preset failed
        **kwargs: Additional context data
    """
    log_data = {
        "preset": preset_name,
        "wall_time": wall_time,
        "success": success,
        **kwargs,
    }
    if error_message:
        log_data["error_message"] = error_message

    if success:
        logger.info("preset_completed", **log_data)
    else:
        logger.error("preset_failed", **log_data)


def log_solver_event(
    logger: structlog.stdlib.BoundLogger,
    event: str,
    component: str,
    message: str,
    level: str = "info",
    **kwargs: Any,
) -> None:
    """
    Log solver events with structured data.

    Args:
        logger: Structured logger instance
        event: Event type (e.g. ``cfl_violation``)
        component: Solver component
        message: Human readable message
        level: Log level
        **kwargs: Additional context data
    """
    log_method = getattr(logger, level.lower())
    log_method(event, component=component, message=message, **kwargs)


def log_invariant_check(
    logger: structlog.stdlib.BoundLogger,
    name: str,
    measured: float,
    threshold: float,
    passed: bool,
    hard: bool = True,
    **kwargs: Any,
) -> None:
    """
    Log the outcome of one invariant check.

    Args:
        logger: Structured logger instance
        name: Invariant name
        measured: Measured value
        threshold: Threshold the value is compared against
        passed: Outcome
        hard: Whether a failure fails the run
        **kwargs: Additional context data
    """
    log_data = {
        "invariant": name,
        "measured": measured,
        "threshold": threshold,
        "passed": passed,
        "hard": hard,
        **kwargs,
    }
    if passed:
        logger.info("invariant_checked", **log_data)
    elif hard:
        logger.warning("invariant_failed", **log_data)
    else:
        logger.info("soft_invariant_failed", **log_data)


# Configure once on import
setup_structured_logging()
