"""
Harness package for alphalab.

Experiment configuration, presets reproducing each published result, the
deterministic output writer, run summaries and the runner that ties them
together.
"""

from .experiment import ConfigError, ConfigIssue, ExperimentConfig, Preset, load_config, validate
from .summary import InvariantResult, OutputFile, RunSummary
from .writer import SeriesWriter, sha256_of
from .base_preset import BasePreset, PresetConfigurationError, PresetError
from .presets import PRESETS
from .runner import ExperimentRunner, UnknownPresetError

__all__ = [
    "ConfigError",
    "ConfigIssue",
    "ExperimentConfig",
    "Preset",
    "load_config",
    "validate",
    "InvariantResult",
    "OutputFile",
    "RunSummary",
    "SeriesWriter",
    "sha256_of",
    "BasePreset",
    "PresetConfigurationError",
    "PresetError",
    "PRESETS",
    "ExperimentRunner",
    "UnknownPresetError",
]
