"""
Base geodesics along which Jacobi fields are integrated.

A base supplies the right-hand side of the Jacobi equation in its own state
variables together with the norms used by the diagnostics. State variables
only need ``+`` and scalar ``*``, so numpy arrays and SpectralFields both work.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Any, Optional

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from config.logging_config import get_logger
from curvature import AVariant, bracket, sectional_dmu_fields
from flows import rhs
from geodesics import DiffeoState, GeodesicFamily, GeodesicTrajectory, SprayForm, spray_1d
from spectral import Grid, SpectralField, advect, h1_inner, l2_inner, leray_project, periodic_derivative

from .linearized import JacobiError, linearized_spray

logger = get_logger("jacobi.bases")


class JacobiBase(ABC):
    """
    Abstract base geodesic.

    Attributes:
        t_start: First time covered
        t_end: Last time covered
        dt: Default Jacobi step
        name: Label used in logs and rows
    """

    def __init__(self, t_start: float, t_end: float, dt: float, name: str):
        if not dt > 0.0:
            raise JacobiError(f"dt must be positive, got {dt}")
        if t_end < t_start:
            raise JacobiError("base window ends before it starts")
        self.t_start = t_start
        self.t_end = t_end
        self.dt = dt
        self.name = name
        self.logger = get_logger(f"jacobi.{name}")

    @abstractmethod
    def derivative(self, t: float, y: Any, w: Any) -> tuple[Any, Any]:
        """Time derivative of the Jacobi state (y, w) at time t."""
        pass

    @abstractmethod
    def inner(self, t: float, a: Any, b: Any) -> float:
        """H¹ inner product of two variations at time t."""
        pass

    @abstractmethod
    def l2_norm(self, t: float, y: Any) -> float:
        pass

    @abstractmethod
    def tangent_pair(self, t: float) -> tuple[Any, Any]:
        """(Y, Ẏ) of the tangent Jacobi field η̇ at time t."""
        pass

    def h1_norm(self, t: float, y: Any) -> float:
        return math.sqrt(max(self.inner(t, y, y), 0.0))

    def initial_state(self, y0: Any, ydot0: Any) -> tuple[Any, Any]:
        """Convert (Y(t_start), Ẏ(t_start)) into the integration variables."""
        return y0, ydot0

    def sectional_along(self, t: float, y: Any) -> Optional[float]:
        """Curvature numerator of the plane (y, η̇), if the base can compute it."""
        return None

    def get_info(self) -> dict[str, Any]:
        return {"name": self.name, "t_start": self.t_start, "t_end": self.t_end, "dt": self.dt}


class LagrangianBase1D(JacobiBase):
    """
    A frozen 1D geodesic, interpolated in time.

    d and η̇ are cubic Hermite splines through the snapshots, with η̇ and η̈
    as their derivatives.
    """

    def __init__(self, trajectory: GeodesicTrajectory, eps: Optional[float] = None):
        if len(trajectory.states) < 2:
            raise JacobiError("a base trajectory needs at least two snapshots")
        times = trajectory.times
        super().__init__(float(times[0]), float(times[-1]), trajectory.dt * trajectory.cadence, "lagrangian_1d")
        self.trajectory = trajectory
        self.form: SprayForm = trajectory.form
        self.eps = eps
        first = trajectory.states[0]
        self.grid = first.grid
        self.alpha = first.alpha
        displacements = np.stack([s.displacement for s in trajectory.states])
        velocities = np.stack([s.velocity for s in trajectory.states])
        accelerations = np.stack(trajectory.accelerations)
        self._d = CubicHermiteSpline(times, displacements, velocities, axis=0)
        self._v = CubicHermiteSpline(times, velocities, accelerations, axis=0)

    def state_at(self, t: float) -> DiffeoState:
        t = min(max(t, self.t_start), self.t_end)
        return DiffeoState(self.grid, self._d(t), self._v(t), self.alpha, t)

    def derivative(self, t: float, y: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return linearized_spray(self.state_at(t), y, w, self.eps, self.form)

    def _eta_x(self, t: float) -> np.ndarray:
        return 1.0 + periodic_derivative(self.grid, self._d(min(max(t, self.t_start), self.t_end)))

    def inner(self, t: float, a: np.ndarray, b: np.ndarray) -> float:
        """∫(ab + α² a_x b_x / η_x²) η_x dx, the H¹ product of a∘η⁻¹ and b∘η⁻¹."""
        eta_x = self._eta_x(t)
        a_y = periodic_derivative(self.grid, a) / eta_x
        b_y = periodic_derivative(self.grid, b) / eta_x
        density = (a * b + self.alpha ** 2 * a_y * b_y) * eta_x
        return float(np.sum(density) * self.grid.cell_volume)

    def l2_norm(self, t: float, y: np.ndarray) -> float:
        return math.sqrt(float(np.sum(y * y * self._eta_x(t)) * self.grid.cell_volume))

    def tangent_pair(self, t: float) -> tuple[np.ndarray, np.ndarray]:
        state = self.state_at(t)
        return state.velocity.copy(), spray_1d(state, self.form)


class ShearFamilyBase(JacobiBase):
    """
    Example 1/2 geodesics in the right-translated Eulerian representation.

    With y = Y∘η⁻¹ and w the variation of the Eulerian velocity u,

        ∂_t y = P(w - [u, y]),   ∂_t w = D rhs(u)[w].

    rhs is quadratic, so the central difference defining D rhs(u)[w] is exact.
    """

    def __init__(self, family: GeodesicFamily, grid: Grid, t_end: float, dt: float, t_start: float = 0.0):
        super().__init__(t_start, t_end, dt, f"shear_{family.kind.value}")
        if grid.dim != 2:
            raise JacobiError("shear families live on T²")
        self.family = family
        self.grid = grid
        self.alpha = family.alpha
        self._u0 = family.eulerian_velocity(t_start, grid)

    def velocity(self, t: float) -> SpectralField:
        # both families have steady Eulerian velocity
        return self._u0

    def initial_state(self, y0: SpectralField, ydot0: SpectralField) -> tuple[SpectralField, SpectralField]:
        """w0 = Ẏ∘η⁻¹ - (y0·∇)u0, projected."""
        return leray_project(y0), leray_project(ydot0 - advect(y0, self._u0))

    def _rhs_variation(self, u: SpectralField, w: SpectralField) -> SpectralField:
        size = w.max_coefficient
        if size == 0.0:
            return SpectralField.zeros(self.grid, self.grid.dim)
        eps = max(u.max_coefficient, 1.0) / size
        return (rhs(u + eps * w, self.alpha) - rhs(u - eps * w, self.alpha)) * (0.5 / eps)

    def derivative(self, t: float, y: SpectralField, w: SpectralField) -> tuple[SpectralField, SpectralField]:
        u = self.velocity(t)
        dy = leray_project(w - bracket(u, y))
        return dy, self._rhs_variation(u, w)

    def inner(self, t: float, a: SpectralField, b: SpectralField) -> float:
        return h1_inner(a, b, self.alpha)

    def l2_norm(self, t: float, y: SpectralField) -> float:
        return math.sqrt(max(l2_inner(y, y), 0.0))

    def tangent_pair(self, t: float) -> tuple[SpectralField, SpectralField]:
        # η̈ = 0 for both families
        u = self.velocity(t)
        return u, SpectralField.zeros(self.grid, self.grid.dim)

    def sectional_along(self, t: float, y: SpectralField) -> Optional[float]:
        report = sectional_dmu_fields(y, self.velocity(t), AVariant.REMARK, self.alpha)
        return report.numerator


class GreatCircleBase(JacobiBase):
    """
    Great circle on the round sphere of curvature K, as a finite-dimensional
    surrogate: J = (J_n, J_t) with J_n'' = -K J_n and J_t'' = 0. Normal Jacobi
    fields starting at zero vanish again at π/√K.
    """

    def __init__(self, curvature: float = 1.0, t_end: float = 5.0, dt: float = 1e-3):
        super().__init__(0.0, t_end, dt, "great_circle")
        if not curvature > 0.0:
            raise JacobiError("surrogate curvature must be positive")
        self.curvature = curvature

    @property
    def conjugate_time(self) -> float:
        return math.pi / math.sqrt(self.curvature)

    def derivative(self, t: float, y: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(w, dtype=float), np.array([-self.curvature * y[0], 0.0])

    def inner(self, t: float, a: np.ndarray, b: np.ndarray) -> float:
        return float(np.dot(a, b))

    def l2_norm(self, t: float, y: np.ndarray) -> float:
        return float(np.linalg.norm(y))

    def tangent_pair(self, t: float) -> tuple[np.ndarray, np.ndarray]:
        return np.array([0.0, 1.0]), np.zeros(2)

    def sectional_along(self, t: float, y: np.ndarray) -> Optional[float]:
        return self.curvature * float(y[0] ** 2)
