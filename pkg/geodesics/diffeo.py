"""
Lagrangian configurations and the Lagrangian-to-Eulerian map.

A ``DiffeoState`` stores η = id + d with a periodic displacement d, together
with the material velocity η̇. ``eulerian_velocity`` returns U = η̇∘η⁻¹ on the
Eulerian grid: in 1D by Newton inversion of the monotone map η followed by
trigonometric interpolation, in 2D for shear-type maps
η = (x¹ + s(x²), x² + c) by the closed-form inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import fft as sfft
from scipy.optimize import newton

from config.logging_config import get_logger, log_solver_event
from config.settings import get_settings
from spectral import Grid, InvalidFieldError, SpectralField, periodic_derivative, to_spectral

logger = get_logger("geodesics.diffeo")


class GeodesicError(Exception):
    """Base exception for geodesic computations."""
    pass


class DiffeomorphismBreakdownError(GeodesicError):
    """η stopped being an orientation-preserving diffeomorphism."""

    def __init__(self, time: float, min_jacobian: float):
        super().__init__(f"diffeomorphism breakdown at t={time:.6g} (min jacobian {min_jacobian:.3e})")
        self.time = time
        self.min_jacobian = min_jacobian


class NonInvertibleMapError(GeodesicError):
    """η could not be inverted on the grid."""
    pass


@dataclass(frozen=True, eq=False)
class DiffeoState:
    """
    Lagrangian state (η, η̇) with η(x) = x + d(x).

    Attributes:
        grid: Grid of Lagrangian labels
        displacement: d, shape ``grid.shape`` in 1D or ``(dim, *grid.shape)``
        velocity: η̇, same shape as ``displacement``
        alpha: Metric length scale
        time: Time of the state
    """

    grid: Grid
    displacement: np.ndarray
    velocity: np.ndarray
    alpha: float = 1.0
    time: float = 0.0

    def __post_init__(self) -> None:
        expected = self.grid.shape if self.grid.dim == 1 else (self.grid.dim,) + self.grid.shape
        for name in ("displacement", "velocity"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != expected:
                raise InvalidFieldError(f"{name} has shape {arr.shape}, expected {expected}")
            if not np.all(np.isfinite(arr)):
                raise InvalidFieldError(f"{name} must be finite")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise InvalidFieldError(f"alpha must be finite and >= 0, got {self.alpha}")

    @classmethod
    def identity(cls, grid: Grid, velocity: np.ndarray, alpha: float = 1.0, time: float = 0.0) -> "DiffeoState":
        velocity = np.asarray(velocity, dtype=float)
        return cls(grid, np.zeros_like(velocity), velocity, alpha, time)

    def with_values(self, displacement: np.ndarray, velocity: np.ndarray, time: Optional[float] = None) -> "DiffeoState":
        return DiffeoState(
            self.grid, displacement, velocity, self.alpha, self.time if time is None else time
        )

    def positions(self) -> np.ndarray:
        """η at the labels (not reduced mod 2π)."""
        if self.grid.dim == 1:
            return self.grid.nodes[0] + self.displacement
        return np.stack(self.grid.nodes) + self.displacement

    def jacobian(self) -> np.ndarray:
        """η_x in 1D, det(Tη) in 2D."""
        if self.grid.dim == 1:
            return 1.0 + periodic_derivative(self.grid, self.displacement)
        g = [[periodic_derivative(self.grid, self.displacement[l], axis=i) for i in range(2)] for l in range(2)]
        return (1.0 + g[0][0]) * (1.0 + g[1][1]) - g[0][1] * g[1][0]

    def min_jacobian(self) -> float:
        return float(np.min(self.jacobian()))

    def check_diffeomorphism(self) -> None:
        """Raise DiffeomorphismBreakdownError unless the Jacobian is positive."""
        jac = self.jacobian()
        if not np.all(np.isfinite(jac)) or np.min(jac) <= 0.0:
            raise DiffeomorphismBreakdownError(self.time, float(np.nanmin(jac)))


def _interpolation_coefficients(grid: Grid, samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fourier coefficients of a 1D periodic sample vector, Nyquist dropped."""
    coeffs = sfft.fft(samples) / grid.n_points
    k = grid.axis_wavenumbers.copy()
    coeffs[grid.n_points // 2] = 0.0
    k[grid.n_points // 2] = 0.0
    return coeffs, k


def trig_interpolate(grid: Grid, samples: np.ndarray, points: np.ndarray, order: int = 0) -> np.ndarray:
    """
    Evaluate the trigonometric interpolant of 1D periodic samples (or its
    ``order``-th derivative) at arbitrary points.
    """
    coeffs, k = _interpolation_coefficients(grid, np.asarray(samples, dtype=float))
    if order:
        coeffs = coeffs * (1j * k) ** order
    phase = np.exp(1j * np.multiply.outer(np.asarray(points, dtype=float), k))
    return (phase @ coeffs).real


def invert_monotone_map(grid: Grid, displacement: np.ndarray, targets: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Solve x + d(x) = y for every target y by vectorized Newton iteration.

    Args:
        grid: 1D grid
        displacement: d at the labels
        targets: Points y; defaults to the Eulerian nodes

    Returns:
        Labels x with η(x) = y

    Raises:
        NonInvertibleMapError: If Newton fails or leaves a residual above the
            configured tolerance
    """
    solver = get_settings().solver
    y = grid.nodes[0] if targets is None else np.asarray(targets, dtype=float)
    d_coeffs, k = _interpolation_coefficients(grid, np.asarray(displacement, dtype=float))
    dx_coeffs = d_coeffs * (1j * k)

    def evaluate(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
        return (np.exp(1j * np.multiply.outer(x, k)) @ coeffs).real

    def residual(x: np.ndarray) -> np.ndarray:
        return x + evaluate(d_coeffs, x) - y

    def slope(x: np.ndarray) -> np.ndarray:
        return 1.0 + evaluate(dx_coeffs, x)

    x0 = y - evaluate(d_coeffs, y)
    try:
        result = newton(
            residual,
            x0,
            fprime=slope,
            tol=1e-13,
            maxiter=solver.inversion_max_iterations,
            full_output=True,
        )
    except RuntimeError as e:
        raise NonInvertibleMapError(f"Newton inversion failed: {e}") from e

    roots = np.asarray(result.root, dtype=float)
    worst = float(np.max(np.abs(residual(roots))))
    if not np.all(np.isfinite(roots)) or worst > solver.inversion_tolerance:
        log_solver_event(
            logger, "inversion_failed", component="diffeo",
            message="eta could not be inverted", level="error", residual=worst,
        )
        raise NonInvertibleMapError(f"inversion residual {worst:.3e} above tolerance")
    return roots


def _shear_profile(grid: Grid, array: np.ndarray, tol: float) -> Optional[np.ndarray]:
    """The x²-profile of ``array`` if it does not depend on x¹, else None."""
    profile = array[0, :]
    if np.max(np.abs(array - profile[np.newaxis, :])) > tol:
        return None
    return profile


def _eulerian_velocity_1d(state: DiffeoState) -> SpectralField:
    grid = state.grid
    labels = invert_monotone_map(grid, state.displacement)
    u = trig_interpolate(grid, state.velocity, labels)
    return to_spectral(grid, u)


def _eulerian_velocity_shear(state: DiffeoState) -> SpectralField:
    grid = state.grid
    d, v = state.displacement, state.velocity
    scale = max(1.0, float(np.max(np.abs(d))), float(np.max(np.abs(v))))
    tol = 1e-12 * scale
    shift = float(np.mean(d[1]))
    profile = _shear_profile(grid, v[0], tol)
    shear_d = _shear_profile(grid, d[0], tol)
    if (
        profile is None
        or shear_d is None
        or np.max(np.abs(d[1] - shift)) > tol
        or np.max(np.abs(v[1] - np.mean(v[1]))) > tol
    ):
        raise NonInvertibleMapError("only shear-type maps (x¹ + s(x²), x² + c) can be inverted in 2D")
    y2 = grid.nodes[1][0, :]
    u1 = trig_interpolate(grid, profile, y2 - shift)
    u = np.stack([np.broadcast_to(u1, grid.shape), np.full(grid.shape, float(np.mean(v[1])))])
    return to_spectral(grid, u)


def eulerian_velocity(state: DiffeoState) -> SpectralField:
    """
    U = η̇∘η⁻¹ sampled on the Eulerian grid.

    Raises:
        NonInvertibleMapError: If η cannot be inverted (1D: η_x <= 0 or
            Newton failure; 2D: the map is not of shear type)
    """
    if state.grid.dim == 1:
        if state.min_jacobian() <= 0.0:
            raise NonInvertibleMapError(f"eta_x <= 0 at t={state.time:.6g}")
        return _eulerian_velocity_1d(state)
    return _eulerian_velocity_shear(state)
