"""
Experiment configuration schema.

An experiment is one YAML file naming a preset plus its parameters. Every
model forbids unknown keys, so a typo is reported with its key path instead
of being ignored.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator


class Preset(str, Enum):
    EULER2D = "euler2d"
    GEODESIC1D = "geodesic1d"
    VERIFY_GEODESICS = "verify-geodesics"
    CURVATURE_TABLE = "curvature-table"
    JACOBI_STABILITY = "jacobi-stability"
    CONJUGATE_SCAN = "conjugate-scan"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridParameters(_Section):
    dim: Literal[1, 2] = Field(default=2, description="Spatial dimension")
    n_points: int = Field(default=64, ge=8, description="Points per axis (even)")
    alias_fraction: float = Field(default=2.0 / 3.0, gt=0.0, le=1.0, description="Dealiasing fraction")

    @field_validator("n_points")
    @classmethod
    def _even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("n_points must be even")
        return value


class InitialData(_Section):
    generator: Literal["zero", "shear", "taylor_green", "random", "trig"] = Field(
        default="random", description="Initial-data generator"
    )
    spec: Optional[str] = Field(default=None, description="Trigonometric spec for the trig generator")
    seed: int = Field(default=0, ge=0, description="Seed of the random generator")
    amplitude: float = Field(default=0.5, ge=0.0, description="Amplitude (RMS speed for random data)")
    max_wavenumber: int = Field(default=4, ge=1, description="Band of random data")
    wavenumber: int = Field(default=1, ge=1, description="Wavenumber of shear data")

    @model_validator(mode="after")
    def _spec_for_trig(self) -> "InitialData":
        if self.generator == "trig" and not self.spec:
            raise ValueError("generator 'trig' needs a spec")
        return self


class CurvatureParameters(_Section):
    wavenumbers: list[int] = Field(default_factory=lambda: [1, 2, 3], min_length=1)
    resolutions: list[int] = Field(default_factory=lambda: [32, 64], min_length=1)
    random_triples: int = Field(default=20, ge=0, description="Single-exponential triples to test")
    seed: int = Field(default=0, ge=0)

    @field_validator("wavenumbers")
    @classmethod
    def _positive_wavenumbers(cls, values: list[int]) -> list[int]:
        if any(k < 1 for k in values):
            raise ValueError("wavenumbers must be >= 1")
        return values

    @field_validator("resolutions")
    @classmethod
    def _even_resolutions(cls, values: list[int]) -> list[int]:
        if any(n < 8 or n % 2 for n in values):
            raise ValueError("resolutions must be even and >= 8")
        return values


class GeodesicParameters(_Section):
    wavenumbers: list[int] = Field(default_factory=lambda: [1, 2, 3], min_length=1)
    speeds: list[float] = Field(default_factory=lambda: [0.0, 1.0], min_length=1)
    spray_form: Literal["published", "camassa_holm"] = "camassa_holm"
    check_ch_residual: bool = True


class JacobiParameters(_Section):
    epsilons: list[float] = Field(default_factory=lambda: [1e-3, 1e-4, 1e-5], min_length=2)
    wavenumber: int = Field(default=1, ge=1)
    scan_window: float = Field(default=5.0, ge=0.0)
    scan_directions: list[str] = Field(
        default_factory=lambda: ["cos(0,1)[0]", "cos(0,2)[0]", "sin(0,2)[0]"]
    )
    surrogate_curvature: float = Field(default=1.0, gt=0.0)
    deviation_n_points: int = Field(default=64, ge=8)
    deviation_dt: float = Field(default=1e-3, gt=0.0)
    deviation_t_end: float = Field(default=1.0, gt=0.0)
    deviation_profile: str = "sin(1)"
    deviation_direction: str = "cos(1)"

    @field_validator("epsilons")
    @classmethod
    def _positive_epsilons(cls, values: list[float]) -> list[float]:
        if any(e <= 0 for e in values):
            raise ValueError("epsilons must be positive")
        return values


class ExperimentConfig(_Section):
    """One experiment."""

    preset: Preset
    grid: GridParameters = Field(default_factory=GridParameters)
    alpha: float = Field(default=1.0, ge=0.0)
    alphas: Optional[list[float]] = Field(default=None, description="Run euler2d once per alpha")
    dt: float = Field(default=1e-3, gt=0.0)
    t_end: float = Field(default=1.0, ge=0.0)
    cadence: int = Field(default=10, ge=1)
    cfl_number: float = Field(default=0.5, gt=0.0)
    a_variant: Literal["remark", "eq4"] = "remark"
    output_dir: Path = Path("results")
    emit_fields: bool = False
    initial_data: InitialData = Field(default_factory=InitialData)
    curvature: CurvatureParameters = Field(default_factory=CurvatureParameters)
    geodesics: GeodesicParameters = Field(default_factory=GeodesicParameters)
    jacobi: JacobiParameters = Field(default_factory=JacobiParameters)

    @field_validator("alphas")
    @classmethod
    def _nonnegative_alphas(cls, values: Optional[list[float]]) -> Optional[list[float]]:
        if values is not None and (not values or any(a < 0 for a in values)):
            raise ValueError("alphas must be a nonempty list of values >= 0")
        return values

    def run_alphas(self) -> list[float]:
        return list(self.alphas) if self.alphas else [self.alpha]


class ConfigIssue(BaseModel):
    """One validation problem, located by its dotted key path."""

    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path or '<root>'}: {self.message}"


class ConfigError(Exception):
    """Raised when an experiment file does not validate."""

    def __init__(self, issues: list[ConfigIssue]):
        super().__init__("; ".join(str(i) for i in issues))
        self.issues = issues


def validate(text: str) -> Union[ExperimentConfig, list[ConfigIssue]]:
    """
    Validate the text of an experiment file.

    Returns:
        The parsed config with defaults filled in, or the list of issues
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        return [ConfigIssue(path="", message=f"invalid YAML: {e}")]
    if not isinstance(data, dict):
        return [ConfigIssue(path="", message="an experiment file must be a mapping")]
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        return [
            ConfigIssue(path=".".join(str(part) for part in err["loc"]), message=err["msg"])
            for err in e.errors()
        ]


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Read and validate an experiment file.

    Raises:
        ConfigError: If the file does not validate
        OSError: If the file cannot be read
    """
    result = validate(Path(path).read_text(encoding="utf-8"))
    if isinstance(result, list):
        raise ConfigError(result)
    return result
