"""
Spectral package for alphalab.

Periodic grids on T¹ and T², Fourier-space vector fields, the differential
operators and projections acting on them, and exact trigonometric specs.
"""

from .grid import Grid
from .field import (
    SpectralField,
    SpectralError,
    InvalidFieldError,
    GridMismatchError,
    ConsistencyError,
    to_spectral,
    to_physical,
)
from .operators import (
    derivative,
    laplacian,
    helmholtz_apply,
    helmholtz_inverse,
    divergence,
    gradient,
    inverse_laplacian,
    gradient_part,
    leray_project,
    h1_inner,
    l2_inner,
    h1_norm,
    l2_norm,
    pointwise_product,
    velocity_gradient,
    advect,
    periodic_derivative,
)
from .trig import TrigFieldSpec, TrigTerm, Phase, TrigSpecError

__all__ = [
    "Grid",
    "SpectralField",
    "SpectralError",
    "InvalidFieldError",
    "GridMismatchError",
    "ConsistencyError",
    "to_spectral",
    "to_physical",
    "derivative",
    "laplacian",
    "helmholtz_apply",
    "helmholtz_inverse",
    "divergence",
    "gradient",
    "inverse_laplacian",
    "gradient_part",
    "leray_project",
    "h1_inner",
    "l2_inner",
    "h1_norm",
    "l2_norm",
    "pointwise_product",
    "velocity_gradient",
    "advect",
    "periodic_derivative",
    "TrigFieldSpec",
    "TrigTerm",
    "Phase",
    "TrigSpecError",
]
