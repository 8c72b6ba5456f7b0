"""
Closed-form pressure-constant geodesic families on T² and their residuals.

Both families are shear maps, so det(Tη) = 1 identically:

* example1: η_t(x) = (x¹ + h(x²), x² + c t), Eulerian velocity (0, c)
* example2: η_t(x) = (x¹ + t h(x²), x²), Eulerian velocity (h(y²), 0)

The ``control`` kind is U(t) = e^t·TaylorGreen, which is not a geodesic; its
residual equals ‖e^t·TG‖_{H¹} and serves as a negative check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
import sympy as sp

from flows import rhs, taylor_green_field
from spectral import Grid, SpectralField, TrigFieldSpec, h1_norm, leray_project

from .diffeo import DiffeoState, GeodesicError, eulerian_velocity

# step of the centred difference used for ∂_t U
TIME_DIFFERENCE_STEP = 1e-4


class FamilyKind(str, Enum):
    EXAMPLE1 = "example1"
    EXAMPLE2 = "example2"
    CONTROL = "control"


@dataclass(frozen=True)
class GeodesicFamily:
    """
    A one-parameter family of maps η_t on T².

    Attributes:
        kind: Which family
        profile: Scalar 1D spec h(s); unused by the control
        speed: Vertical speed c (example1 only)
        alpha: Metric length scale
    """

    kind: FamilyKind
    profile: Optional[TrigFieldSpec] = None
    speed: float = 0.0
    alpha: float = 1.0

    def __post_init__(self) -> None:
        if self.kind is not FamilyKind.CONTROL:
            if self.profile is None:
                raise GeodesicError(f"{self.kind.value} needs a profile h")
            if self.profile.dim != 1 or self.profile.n_components != 1:
                raise GeodesicError("profile must be a scalar 1D spec")
        if not math.isfinite(self.speed):
            raise GeodesicError("speed must be finite")
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise GeodesicError(f"alpha must be finite and >= 0, got {self.alpha}")

    @classmethod
    def example1(cls, profile: str, speed: float, alpha: float = 1.0) -> "GeodesicFamily":
        return cls(FamilyKind.EXAMPLE1, TrigFieldSpec.parse(profile, dim=1, n_components=1), speed, alpha)

    @classmethod
    def example2(cls, profile: str, alpha: float = 1.0) -> "GeodesicFamily":
        return cls(FamilyKind.EXAMPLE2, TrigFieldSpec.parse(profile, dim=1, n_components=1), 0.0, alpha)

    @classmethod
    def control(cls, alpha: float = 1.0) -> "GeodesicFamily":
        return cls(FamilyKind.CONTROL, alpha=alpha)

    def _profile_at(self, grid: Grid) -> np.ndarray:
        assert self.profile is not None
        return self.profile.evaluate([grid.nodes[1]])[0]

    def state_at(self, t: float, grid: Grid) -> DiffeoState:
        """Lagrangian state (η_t, η̇_t) on ``grid``."""
        if grid.dim != 2:
            raise GeodesicError("families live on T²")
        if self.kind is FamilyKind.CONTROL:
            raise GeodesicError("the control family has no Lagrangian representation")
        h = self._profile_at(grid)
        zeros = np.zeros(grid.shape)
        if self.kind is FamilyKind.EXAMPLE1:
            displacement = np.stack([h, np.full(grid.shape, self.speed * t)])
            velocity = np.stack([zeros, np.full(grid.shape, self.speed)])
        else:
            displacement = np.stack([t * h, zeros])
            velocity = np.stack([h, zeros])
        return DiffeoState(grid, displacement, velocity, self.alpha, t)

    def eulerian_velocity(self, t: float, grid: Grid) -> SpectralField:
        if self.kind is FamilyKind.CONTROL:
            return math.exp(t) * taylor_green_field(grid)
        return eulerian_velocity(self.state_at(t, grid))

    def velocity_time_derivative(self, t: float, grid: Grid) -> SpectralField:
        """∂_t U, analytic for the control and a centred difference otherwise."""
        if self.kind is FamilyKind.CONTROL:
            return self.eulerian_velocity(t, grid)
        tau = TIME_DIFFERENCE_STEP
        forward = self.eulerian_velocity(t + tau, grid)
        backward = self.eulerian_velocity(t - tau, grid)
        return (forward - backward) * (1.0 / (2.0 * tau))


def geodesic_residual_2d(family: GeodesicFamily, t: float, grid: Optional[Grid] = None) -> float:
    """
    ‖P(∂_t U) - P H⁻¹ F(U)‖_{H¹} for U the Eulerian velocity of the family.

    Zero for a geodesic of the right-invariant H¹ metric on the volume-preserving
    diffeomorphisms.
    """
    grid = grid if grid is not None else Grid(2, 32)
    u = family.eulerian_velocity(t, grid)
    u_t = family.velocity_time_derivative(t, grid)
    residual = leray_project(u_t) - rhs(u, family.alpha)
    return h1_norm(residual, family.alpha)


def jacobian_determinant(kind: FamilyKind) -> sp.Expr:
    """det(Tη_t) computed symbolically for a generic profile h and speed c."""
    x1, x2, t, c = sp.symbols("x1 x2 t c", real=True)
    h = sp.Function("h")
    if kind is FamilyKind.EXAMPLE1:
        eta = sp.Matrix([x1 + h(x2), x2 + c * t])
    elif kind is FamilyKind.EXAMPLE2:
        eta = sp.Matrix([x1 + t * h(x2), x2])
    else:
        raise GeodesicError("the control family has no Lagrangian representation")
    return sp.simplify(eta.jacobian([x1, x2]).det())


def is_volume_preserving(kind: FamilyKind) -> bool:
    return sp.simplify(jacobian_determinant(kind) - 1) == 0
