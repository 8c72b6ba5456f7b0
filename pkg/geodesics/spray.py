"""
Geodesic spray of the right-invariant H¹ metric on Diff(S¹).

The acceleration of a geodesic η is

    η̈ = (1 - α² Δ_η)⁻¹ [(-2 η̇ + s α² Δ_η η̇) η̇_x / η_x],
    Δ_η = η_x⁻¹ ∂_x (η_x⁻¹ ∂_x),

where s = +1 for the formula as published and s = -1 for the Lagrangian
form of the Camassa-Holm equation. Δ_η is the pullback of ∂_y² by η, so the
η-dependent Helmholtz solve is done on the Eulerian side: the Fourier
coefficients of r∘η⁻¹ are obtained by the change of variables y = η(x),
divided by 1 + α²k², and evaluated back at η(x_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from config.logging_config import get_logger, log_solver_event
from config.settings import get_settings
from spectral import Grid, helmholtz_apply, l2_norm, periodic_derivative, pointwise_product, to_physical

from .diffeo import DiffeoState, DiffeomorphismBreakdownError, GeodesicError, eulerian_velocity

logger = get_logger("geodesics.spray")


class SprayForm(str, Enum):
    """Sign of the α² term inside the spray bracket."""

    PUBLISHED = "published"
    CAMASSA_HOLM = "camassa_holm"

    @property
    def sign(self) -> float:
        return 1.0 if self is SprayForm.PUBLISHED else -1.0


def _jacobian_1d(state: DiffeoState) -> np.ndarray:
    eta_x = 1.0 + periodic_derivative(state.grid, state.displacement)
    if not np.all(np.isfinite(eta_x)) or np.min(eta_x) <= 0.0:
        raise DiffeomorphismBreakdownError(state.time, float(np.nanmin(eta_x)))
    return eta_x


def pullback_helmholtz_solve(grid: Grid, positions: np.ndarray, eta_x: np.ndarray, source: np.ndarray, alpha: float) -> np.ndarray:
    """
    Solve (1 - α² Δ_η) w = source for w given at the labels.

    Args:
        grid: 1D grid of labels
        positions: η(x_j)
        eta_x: η_x(x_j) > 0
        source: Right-hand side at the labels
        alpha: Length scale

    Returns:
        w at the labels
    """
    cutoff = grid.cutoff
    k = np.arange(-cutoff, cutoff + 1, dtype=float)
    phase = np.exp(-1j * np.multiply.outer(k, positions))
    coeffs = phase @ (source * eta_x) / grid.n_points
    coeffs /= 1.0 + alpha ** 2 * k ** 2
    return (phase.conj().T @ coeffs).real


def spray_1d(state: DiffeoState, form: SprayForm = SprayForm.CAMASSA_HOLM) -> np.ndarray:
    """
    Acceleration η̈ of the geodesic through ``state``.

    Raises:
        DiffeomorphismBreakdownError: If η_x <= 0 somewhere or is not finite
    """
    if state.grid.dim != 1:
        raise GeodesicError("spray_1d needs a 1D state")
    grid = state.grid
    v = state.velocity
    eta_x = _jacobian_1d(state)
    u_y = periodic_derivative(grid, v) / eta_x
    if state.alpha == 0.0:
        return -2.0 * v * u_y
    u_yy = periodic_derivative(grid, u_y) / eta_x
    source = (-2.0 * v + form.sign * state.alpha ** 2 * u_yy) * u_y
    return pullback_helmholtz_solve(grid, state.positions(), eta_x, source, state.alpha)


def lagrangian_energy(state: DiffeoState) -> float:
    """½∫(η̇² + α²(η̇_x/η_x)²) η_x dx, the H¹ energy of U = η̇∘η⁻¹."""
    grid = state.grid
    eta_x = 1.0 + periodic_derivative(grid, state.displacement)
    u_y = periodic_derivative(grid, state.velocity) / eta_x
    density = (state.velocity ** 2 + state.alpha ** 2 * u_y ** 2) * eta_x
    return float(0.5 * np.sum(density) * grid.cell_volume)


@dataclass(frozen=True)
class GeodesicDiagnostics:
    """Row (t, min η_x, H¹ energy, max |η̇|)."""

    time: float
    min_jacobian: float
    h1_energy: float
    max_velocity: float

    def to_dict(self) -> dict[str, float]:
        return {
            "time": self.time,
            "min_jacobian": self.min_jacobian,
            "h1_energy": self.h1_energy,
            "max_velocity": self.max_velocity,
        }


def geodesic_diagnostics(state: DiffeoState) -> GeodesicDiagnostics:
    return GeodesicDiagnostics(
        time=state.time,
        min_jacobian=state.min_jacobian(),
        h1_energy=lagrangian_energy(state),
        max_velocity=float(np.max(np.abs(state.velocity))),
    )


@dataclass
class GeodesicTrajectory:
    """Snapshots of a 1D geodesic together with the accelerations at those times."""

    dt: float
    cadence: int
    form: SprayForm
    states: list[DiffeoState] = field(default_factory=list)
    accelerations: list[np.ndarray] = field(default_factory=list)
    rows: list[GeodesicDiagnostics] = field(default_factory=list)
    breakdown_time: Optional[float] = None

    @property
    def final(self) -> DiffeoState:
        return self.states[-1]

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.states])

    def energy_drift(self) -> float:
        """max_t |E(t) - E(0)| / E(0)."""
        if not self.rows:
            return 0.0
        e0 = self.rows[0].h1_energy
        if e0 == 0.0:
            return max(abs(r.h1_energy) for r in self.rows)
        return max(abs(r.h1_energy - e0) for r in self.rows) / e0


def _advance(state: DiffeoState, d: np.ndarray, v: np.ndarray, time: float) -> DiffeoState:
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(v))):
        raise DiffeomorphismBreakdownError(time, float("nan"))
    return state.with_values(d, v, time)


def _rk4_step(state: DiffeoState, dt: float, form: SprayForm, k1: np.ndarray) -> DiffeoState:
    d, v = state.displacement, state.velocity
    half = 0.5 * dt

    s2 = _advance(state, d + half * v, v + half * k1, state.time + half)
    a2 = spray_1d(s2, form)
    s3 = _advance(state, d + half * s2.velocity, v + half * a2, state.time + half)
    a3 = spray_1d(s3, form)
    s4 = _advance(state, d + dt * s3.velocity, v + dt * a3, state.time + dt)
    a4 = spray_1d(s4, form)

    new_d = d + (dt / 6.0) * (v + 2.0 * s2.velocity + 2.0 * s3.velocity + s4.velocity)
    new_v = v + (dt / 6.0) * (k1 + 2.0 * a2 + 2.0 * a3 + a4)
    return _advance(state, new_d, new_v, state.time + dt)


def integrate_geodesic_1d(
    state: DiffeoState,
    dt: float,
    t_end: float,
    cadence: int = 1,
    form: SprayForm = SprayForm.CAMASSA_HOLM,
    breakdown_threshold: Optional[float] = None,
    raise_on_breakdown: bool = False,
) -> GeodesicTrajectory:
    """
    Integrate the spray with classical RK4 on (d, η̇).

    Integration stops at the first step where min η_x drops below the
    breakdown threshold (or a value becomes non-finite); that step's end time
    is recorded as ``breakdown_time``.

    Args:
        state: Initial 1D state
        dt: Positive time step
        t_end: Final time; (t_end - t0)/dt must be an integer
        cadence: Snapshots are kept every ``cadence`` steps and at the end
        form: Spray bracket to use
        breakdown_threshold: Override for the configured threshold
        raise_on_breakdown: Raise instead of returning a truncated trajectory

    Returns:
        GeodesicTrajectory

    Raises:
        ValueError: On invalid step parameters
        DiffeomorphismBreakdownError: On breakdown when ``raise_on_breakdown``

    Any other error raised by the spray propagates unchanged; only a loss
    of monotonicity or finiteness ends the run as a breakdown.
    """
    if state.grid.dim != 1:
        raise GeodesicError("integrate_geodesic_1d needs a 1D state")
    if not (dt > 0.0 and math.isfinite(dt)):
        raise ValueError(f"dt must be positive and finite, got {dt}")
    if cadence < 1:
        raise ValueError("cadence must be >= 1")
    span = t_end - state.time
    n_steps = int(round(span / dt))
    if n_steps < 0 or abs(n_steps * dt - span) > 1e-9 * max(1.0, abs(t_end)):
        raise ValueError(f"t_end - t0 = {span} is not a nonnegative multiple of dt = {dt}")

    threshold = get_settings().solver.breakdown_threshold if breakdown_threshold is None else breakdown_threshold
    trajectory = GeodesicTrajectory(dt=dt, cadence=cadence, form=form)
    t0 = state.time
    current = state
    accel = spray_1d(current, form)

    def record(s: DiffeoState, a: np.ndarray) -> None:
        trajectory.states.append(s)
        trajectory.accelerations.append(a)
        trajectory.rows.append(geodesic_diagnostics(s))

    record(current, accel)
    for i in range(1, n_steps + 1):
        t_next = t0 + i * dt
        try:
            stepped = _rk4_step(current, dt, form, accel)
            nxt = stepped.with_values(stepped.displacement, stepped.velocity, t_next)
            min_jac = nxt.min_jacobian()
            if not math.isfinite(min_jac) or min_jac < threshold:
                raise DiffeomorphismBreakdownError(t_next, min_jac)
            accel = spray_1d(nxt, form)
        except (DiffeomorphismBreakdownError, FloatingPointError) as e:
            min_jac = getattr(e, "min_jacobian", float("nan"))
            trajectory.breakdown_time = t_next
            log_solver_event(
                logger,
                "diffeomorphism_breakdown",
                component="spray",
                message="eta_x fell below the breakdown threshold",
                level="warning",
                time=t_next,
                min_jacobian=min_jac,
                alpha=state.alpha,
            )
            if raise_on_breakdown:
                raise DiffeomorphismBreakdownError(t_next, min_jac) from e
            break
        current = nxt
        if i % cadence == 0 or i == n_steps:
            record(current, accel)

    logger.debug(
        "geodesic_integrated",
        t_end=trajectory.final.time,
        breakdown_time=trajectory.breakdown_time,
        form=form.value,
    )
    return trajectory


def characteristic_breakdown_time(grid: Grid, u0: np.ndarray) -> float:
    """
    First crossing time 1/max(-3 u0') of the characteristics of
    u_t + 3 u u_y = 0, the Eulerian form of the α = 0 spray.

    Returns ``inf`` when u0 is nondecreasing.
    """
    slope = float(np.max(-3.0 * periodic_derivative(grid, u0)))
    return math.inf if slope <= 0.0 else 1.0 / slope


def camassa_holm_residual(trajectory: GeodesicTrajectory) -> float:
    """
    Largest L² norm of m_t + u m_y + 2 u_y m over interior snapshots, where
    u = η̇∘η⁻¹, m = (1 - α²∂²)u and m_t is a centred difference.
    """
    states = trajectory.states
    if len(states) < 3:
        return 0.0
    grid = states[0].grid
    alpha = states[0].alpha
    momenta = [helmholtz_apply(eulerian_velocity(s), alpha) for s in states]
    worst = 0.0
    for i in range(1, len(states) - 1):
        u = eulerian_velocity(states[i])
        us = to_physical(u)[0]
        u_y = periodic_derivative(grid, us)
        m = to_physical(momenta[i])[0]
        m_y = periodic_derivative(grid, m)
        m_t = (momenta[i + 1] - momenta[i - 1]) * (1.0 / (states[i + 1].time - states[i - 1].time))
        residual = m_t + pointwise_product(grid, us, m_y) + pointwise_product(grid, 2.0 * u_y, m)
        worst = max(worst, l2_norm(residual))
    return worst


__all__ = [
    "SprayForm",
    "GeodesicDiagnostics",
    "GeodesicTrajectory",
    "camassa_holm_residual",
    "characteristic_breakdown_time",
    "geodesic_diagnostics",
    "integrate_geodesic_1d",
    "lagrangian_energy",
    "pullback_helmholtz_solve",
    "spray_1d",
]
