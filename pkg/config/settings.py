"""
Configuration settings for alphalab.

This module contains the application-level settings: logging, numerical
tolerances shared by the solvers, and harness defaults. Experiment files
(YAML) are validated separately by ``harness.experiment``.
"""

from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LoggingConfig(BaseSettings):
    """Configuration for logging system."""

    level: str = Field(default="INFO", description="Logging level")
    format: str = Field(default="json", description="Log format (json or console)")
    enable_structured_logging: bool = Field(default=True, description="Render log records as JSON")

    model_config = SettingsConfigDict(env_prefix="LOGGING_")


class SolverConfig(BaseSettings):
    """Numerical tolerances and guards shared by the solvers."""

    cfl_number: float = Field(default=0.5, gt=0, description="CFL constant c in dt <= c*dx/max|U|")
    imaginary_tolerance: float = Field(
        default=1e-12, gt=0, description="Largest imaginary residue accepted by to_physical (relative)"
    )
    divergence_tolerance: float = Field(
        default=1e-12, gt=0, description="Relative divergence below which a field counts as divergence-free"
    )
    breakdown_threshold: float = Field(
        default=1e-3, gt=0, description="min eta_x below which a 1D diffeomorphism is declared broken"
    )
    jacobi_eps: float = Field(default=1e-6, gt=0, description="Base step of the linearized spray")
    inversion_tolerance: float = Field(default=1e-10, gt=0, description="Residual accepted when inverting eta")
    inversion_max_iterations: int = Field(default=50, ge=1, description="Newton iterations when inverting eta")

    model_config = SettingsConfigDict(env_prefix="SOLVER_")


class HarnessConfig(BaseSettings):
    """Configuration for the experiment harness."""

    output_dir: Optional[Path] = Field(
        default=None, description="Overrides the output_dir of every experiment when set"
    )
    max_workers: int = Field(default=4, ge=1, description="Worker threads for fan-out presets")
    summary_name: str = Field(default="summary.json", description="File name of the run summary")

    model_config = SettingsConfigDict(env_prefix="HARNESS_")


class Settings(BaseSettings):
    """Main application settings."""

    # Environment
    environment: str = Field(default="development", description="Application environment")
    debug: bool = Field(default=False, description="Enable debug mode")

    # Subsystems
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    harness: HarnessConfig = Field(default_factory=HarnessConfig)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    def resolve_output_dir(self, configured: Path) -> Path:
        """Return the output directory, honouring the environment override."""
        return self.harness.output_dir if self.harness.output_dir is not None else configured


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance."""
    return settings


def reload_settings() -> Settings:
    """Reload settings from environment."""
    global settings
    settings = Settings()
    return settings
