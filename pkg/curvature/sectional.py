"""
Sectional curvatures of the H¹ metric at the identity.

``sectional`` evaluates ⟨R(X,Y)Y, X⟩₁ on the full diffeomorphism group;
``sectional_dmu`` adds the Gauss correction of the volume-preserving subgroup,

    ⟨R̃(X,Y)Y, X⟩₁ = ⟨R(X,Y)Y, X⟩₁ + ⟨S(Y,Y), S(X,X)⟩₁ - ⟨S(X,Y), S(Y,X)⟩₁.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Union

from config.logging_config import get_logger, log_solver_event
from spectral import Grid, SpectralField, TrigFieldSpec, h1_inner

from .connection import DEFAULT_DIVERGENCE_SIGN, AVariant, second_fundamental
from .tensor import r1_operator

logger = get_logger("curvature.sectional")

SIGN_TOLERANCE = 1e-9
GRAM_FLOOR = 1e-12

SpecLike = Union[str, TrigFieldSpec]


class SignClass(str, Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class CurvatureReport:
    """
    One curvature evaluation on the plane spanned by X and Y.

    ``sectional`` is None when the Gram determinant is at most 1e-12.
    ``gauss_correction`` and ``divergence_free`` are only set for the
    volume-preserving subgroup.
    """

    x_spec: str
    y_spec: str
    numerator: float
    gram: float
    sectional: Optional[float]
    sign_class: SignClass
    variant: AVariant
    n_points: int
    alpha: float
    subgroup: bool = False
    gauss_correction: Optional[float] = None
    divergence_free: Optional[bool] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "x_spec": self.x_spec,
            "y_spec": self.y_spec,
            "numerator": self.numerator,
            "gram": self.gram,
            "sectional": self.sectional,
            "sign_class": self.sign_class.value,
            "variant": self.variant.value,
            "n_points": self.n_points,
            "alpha": self.alpha,
            "subgroup": self.subgroup,
            "gauss_correction": self.gauss_correction,
            "divergence_free": self.divergence_free,
        }


def classify(numerator: float, scale: float) -> SignClass:
    """Sign of ``numerator`` with tolerance SIGN_TOLERANCE·scale."""
    tol = SIGN_TOLERANCE * scale
    if numerator < -tol:
        return SignClass.NEGATIVE
    if numerator > tol:
        return SignClass.POSITIVE
    return SignClass.ZERO


def _report(
    x: SpectralField,
    y: SpectralField,
    numerator: float,
    variant: AVariant,
    alpha: float,
    x_label: str,
    y_label: str,
    **extra: Any,
) -> CurvatureReport:
    xx = h1_inner(x, x, alpha)
    yy = h1_inner(y, y, alpha)
    xy = h1_inner(x, y, alpha)
    gram = max(xx * yy - xy * xy, 0.0)
    return CurvatureReport(
        x_spec=x_label,
        y_spec=y_label,
        numerator=numerator,
        gram=gram,
        sectional=numerator / gram if gram > GRAM_FLOOR else None,
        sign_class=classify(numerator, xx * yy),
        variant=AVariant(variant),
        n_points=x.grid.n_points,
        alpha=alpha,
        **extra,
    )


def sectional_fields(
    x: SpectralField,
    y: SpectralField,
    variant: AVariant = AVariant.REMARK,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
    x_label: str = "",
    y_label: str = "",
) -> CurvatureReport:
    """⟨R(X,Y)Y, X⟩₁ and its normalization for two fields."""
    numerator = h1_inner(r1_operator(x, y, y, variant, alpha, divergence_sign), x, alpha)
    return _report(x, y, numerator, variant, alpha, x_label, y_label)


def gauss_correction(
    x: SpectralField,
    y: SpectralField,
    variant: AVariant = AVariant.REMARK,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
) -> float:
    """⟨S(Y,Y), S(X,X)⟩₁ - ⟨S(X,Y), S(Y,X)⟩₁."""

    def s(p: SpectralField, q: SpectralField) -> SpectralField:
        return second_fundamental(p, q, variant, alpha, divergence_sign, require_divergence_free=False)

    return h1_inner(s(y, y), s(x, x), alpha) - h1_inner(s(x, y), s(y, x), alpha)


def sectional_dmu_fields(
    x: SpectralField,
    y: SpectralField,
    variant: AVariant = AVariant.REMARK,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
    x_label: str = "",
    y_label: str = "",
) -> CurvatureReport:
    """
    Subgroup curvature through the Gauss formula.

    Inputs that are not divergence-free are accepted with a warning; the
    report records it in ``divergence_free``.
    """
    divergence_free = bool(x.is_divergence_free and y.is_divergence_free)
    if not divergence_free:
        log_solver_event(
            logger,
            "non_solenoidal_input",
            component="sectional",
            message="Gauss formula applied to fields that are not divergence-free",
            level="warning",
            x_spec=x_label,
            y_spec=y_label,
        )
    full = h1_inner(r1_operator(x, y, y, variant, alpha, divergence_sign), x, alpha)
    correction = gauss_correction(x, y, variant, alpha, divergence_sign)
    return _report(
        x,
        y,
        full + correction,
        variant,
        alpha,
        x_label,
        y_label,
        subgroup=True,
        gauss_correction=correction,
        divergence_free=divergence_free,
    )


def _field(spec: SpecLike, grid: Grid) -> tuple[SpectralField, str]:
    parsed = spec if isinstance(spec, TrigFieldSpec) else TrigFieldSpec.parse(spec, dim=2, n_components=2)
    return parsed.to_field(grid), str(parsed)


def sectional(
    x_spec: SpecLike,
    y_spec: SpecLike,
    variant: AVariant = AVariant.REMARK,
    n_points: int = 32,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
) -> CurvatureReport:
    """
    Curvature report for two trigonometric directions on T².

    Raises:
        TrigSpecError: If a spec does not parse or lies outside the band
    """
    grid = Grid(2, n_points)
    x, x_label = _field(x_spec, grid)
    y, y_label = _field(y_spec, grid)
    return sectional_fields(x, y, variant, alpha, divergence_sign, x_label, y_label)


def sectional_dmu(
    x_spec: SpecLike,
    y_spec: SpecLike,
    variant: AVariant = AVariant.REMARK,
    n_points: int = 32,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
) -> CurvatureReport:
    grid = Grid(2, n_points)
    x, x_label = _field(x_spec, grid)
    y, y_label = _field(y_spec, grid)
    return sectional_dmu_fields(x, y, variant, alpha, divergence_sign, x_label, y_label)


def compare_variants(
    x_spec: SpecLike, y_spec: SpecLike, n_points: int = 32, alpha: float = 1.0
) -> dict[AVariant, CurvatureReport]:
    """Full-group reports for the ``remark`` and ``eq4`` kernels side by side."""
    return {
        variant: sectional(x_spec, y_spec, variant, n_points, alpha)
        for variant in (AVariant.REMARK, AVariant.EQ4)
    }
