"""
Configuration package for alphalab.

This package contains the settings (pydantic-settings) and the structured
logging configuration (structlog) shared by every other package.
"""

from .settings import get_settings, reload_settings, Settings
from .logging_config import get_logger, setup_structured_logging, RunContext

__all__ = [
    "get_settings",
    "reload_settings",
    "Settings",
    "get_logger",
    "setup_structured_logging",
    "RunContext",
]
