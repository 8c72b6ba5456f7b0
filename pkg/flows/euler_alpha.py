"""
Method-of-lines solver for the averaged-Euler (Euler-alpha) equations on T².

The velocity U evolves by

    ∂_t U = P H⁻¹ F(U),   F(U) = -(U·∇)V + alpha² (∇U)ᵗ ΔU,   V = H U,

with H = 1 - alpha² Δ and P the Leray projection. On the torus P, H⁻¹, grad
and div are Fourier multipliers and commute, so the order of P and H⁻¹ is
immaterial. The pressure is p = Δ⁻¹ div F in the zero-mean gauge.

At alpha = 0 the right-hand side reduces to incompressible Euler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from config.logging_config import get_logger, log_solver_event
from config.settings import get_settings
from spectral import (
    InvalidFieldError,
    SpectralField,
    derivative,
    divergence,
    gradient_part,
    h1_inner,
    helmholtz_apply,
    helmholtz_inverse,
    inverse_laplacian,
    laplacian,
    leray_project,
    to_physical,
    to_spectral,
)

logger = get_logger("flows.euler_alpha")

# relative divergence accepted for solver inputs
INPUT_DIVERGENCE_TOLERANCE = 1e-10


class SolverError(Exception):
    """Base exception for flow-solver errors."""
    pass


class SolverDivergenceError(SolverError):
    """Raised when a step produces non-finite values; the run is aborted."""

    def __init__(self, time: float, message: str = "non-finite velocity"):
        super().__init__(f"{message} at t={time:.6g}")
        self.time = time


def _require_divergence_free(u: SpectralField) -> None:
    if u.n_components != u.grid.dim:
        raise InvalidFieldError("velocity must have one component per dimension")
    if u.max_divergence > INPUT_DIVERGENCE_TOLERANCE:
        raise InvalidFieldError(f"velocity is not divergence-free (relative {u.max_divergence:.2e})")


@dataclass(frozen=True)
class FlowState:
    """Velocity U at ``time`` for the flow with parameter ``alpha``."""

    velocity: SpectralField
    alpha: float = 1.0
    time: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise InvalidFieldError(f"alpha must be finite and >= 0, got {self.alpha}")
        _require_divergence_free(self.velocity)


@dataclass(frozen=True)
class FlowDiagnostics:
    """One diagnostics row emitted per sampled step."""

    time: float
    h1_energy: float
    l2_energy: float
    max_divergence: float
    max_velocity: float

    def to_dict(self) -> dict[str, float]:
        return {
            "time": self.time,
            "h1_energy": self.h1_energy,
            "l2_energy": self.l2_energy,
            "max_divergence": self.max_divergence,
            "max_velocity": self.max_velocity,
        }


@dataclass
class FlowRun:
    """Result of ``integrate_flow``: final state plus sampled rows and snapshots."""

    final: FlowState
    rows: list[FlowDiagnostics] = field(default_factory=list)
    snapshots: list[FlowState] = field(default_factory=list)

    def energy_drift(self) -> float:
        """max_t |E(t) - E(0)| / E(0); zero for the zero flow."""
        if not self.rows:
            return 0.0
        e0 = self.rows[0].h1_energy
        if e0 == 0.0:
            return max(abs(r.h1_energy) for r in self.rows)
        return max(abs(r.h1_energy - e0) for r in self.rows) / e0


def momentum_forcing(u: SpectralField, alpha: float) -> SpectralField:
    """
    Unprojected momentum right-hand side F = -(U·∇)V + alpha² (∇U)ᵗ ΔU.

    ``[(∇U)ᵗ w]_i = Σ_j ∂_i U_j w_j``. All products are dealiased.
    """
    grid = u.grid
    dim = grid.dim
    v = helmholtz_apply(u, alpha)
    us = to_physical(u)
    forcing = np.zeros_like(us)
    for j in range(dim):
        forcing -= us[j] * to_physical(derivative(v, j))
    if alpha != 0.0:
        lap = to_physical(laplacian(u))
        for i in range(dim):
            du = to_physical(derivative(u, i))
            forcing[i] += alpha ** 2 * np.sum(du * lap, axis=0)
    return to_spectral(grid, forcing)


def rhs(u: SpectralField, alpha: float) -> SpectralField:
    """
    ∂_t U = P H⁻¹ F(U).

    Args:
        u: Divergence-free velocity
        alpha: Length scale alpha >= 0

    Returns:
        Divergence-free time derivative of U
    """
    _require_divergence_free(u)
    return leray_project(helmholtz_inverse(momentum_forcing(u, alpha), alpha))


def pressure(u: SpectralField, alpha: float) -> np.ndarray:
    """Zero-mean pressure p = Δ⁻¹ div F on the grid (shape ``grid.shape``)."""
    _require_divergence_free(u)
    p = inverse_laplacian(divergence(momentum_forcing(u, alpha)))
    return to_physical(p)[0]


def pressure_gradient(u: SpectralField, alpha: float) -> SpectralField:
    """grad p, identical to the gradient part of F."""
    return gradient_part(momentum_forcing(u, alpha))


def h1_energy(state: FlowState) -> float:
    """(1/2) ⟨U, U⟩_1."""
    return 0.5 * h1_inner(state.velocity, state.velocity, state.alpha)


def diagnostics(state: FlowState) -> FlowDiagnostics:
    u = state.velocity
    us = to_physical(u)
    return FlowDiagnostics(
        time=state.time,
        h1_energy=h1_energy(state),
        l2_energy=0.5 * h1_inner(u, u, 0.0),
        max_divergence=u.max_divergence,
        max_velocity=float(np.max(np.sqrt(np.sum(us * us, axis=0)))),
    )


def _check_cfl(state: FlowState, dt: float, cfl_number: float) -> None:
    us = to_physical(state.velocity)
    umax = float(np.max(np.sqrt(np.sum(us * us, axis=0))))
    if umax == 0.0:
        return
    limit = cfl_number * state.velocity.grid.spacing / umax
    if abs(dt) > limit:
        log_solver_event(
            logger,
            "cfl_violation",
            component="euler_alpha",
            message="time step exceeds the CFL guard",
            level="warning",
            dt=dt,
            limit=limit,
            time=state.time,
        )


def step_rk4(state: FlowState, dt: float, cfl_number: Optional[float] = None) -> FlowState:
    """
    Advance by one classical RK4 step, then re-project.

    A negative ``dt`` steps backwards in time.

    Raises:
        ValueError: If dt is zero or not finite
        SolverDivergenceError: If the new velocity is not finite
    """
    if dt == 0.0 or not math.isfinite(dt):
        raise ValueError(f"dt must be finite and nonzero, got {dt}")
    cfl = get_settings().solver.cfl_number if cfl_number is None else cfl_number
    _check_cfl(state, dt, cfl)

    a = state.alpha
    u = state.velocity
    k1 = rhs(u, a)
    k2 = rhs(u + (0.5 * dt) * k1, a)
    k3 = rhs(u + (0.5 * dt) * k2, a)
    k4 = rhs(u + dt * k3, a)
    coeffs = u.coefficients + (dt / 6.0) * (
        k1.coefficients + 2.0 * k2.coefficients + 2.0 * k3.coefficients + k4.coefficients
    )
    if not np.all(np.isfinite(coeffs)):
        log_solver_event(
            logger, "solver_abort", component="euler_alpha",
            message="non-finite velocity", level="error", time=state.time + dt,
        )
        raise SolverDivergenceError(state.time + dt)
    new_u = leray_project(SpectralField(u.grid, coeffs))
    return FlowState(new_u, a, state.time + dt)


def integrate_flow(
    state: FlowState,
    dt: float,
    t_end: float,
    cadence: int = 1,
    cfl_number: Optional[float] = None,
    keep_snapshots: bool = False,
    observer: Optional[Callable[[FlowState], Any]] = None,
) -> FlowRun:
    """
    Integrate from ``state.time`` to ``t_end`` with a fixed step.

    Args:
        state: Initial state
        dt: Step (sign must match the direction of t_end)
        t_end: Final time; (t_end - t0)/dt must be an integer
        cadence: Diagnostics are sampled every ``cadence`` steps and at the end
        cfl_number: Override for the CFL constant
        keep_snapshots: Keep the sampled states
        observer: Called with each sampled state

    Returns:
        FlowRun with the final state and sampled diagnostics
    """
    if cadence < 1:
        raise ValueError("cadence must be >= 1")
    span = t_end - state.time
    n_steps = int(round(span / dt)) if span != 0.0 else 0
    if n_steps < 0 or abs(n_steps * dt - span) > 1e-9 * max(1.0, abs(t_end)):
        raise ValueError(f"t_end - t0 = {span} is not a nonnegative multiple of dt = {dt}")

    t0 = state.time
    run = FlowRun(final=state)

    def sample(s: FlowState) -> None:
        run.rows.append(diagnostics(s))
        if keep_snapshots:
            run.snapshots.append(s)
        if observer is not None:
            observer(s)

    sample(state)
    current = state
    for i in range(1, n_steps + 1):
        current = step_rk4(current, dt, cfl_number)
        # recompute time from the step count so rows do not accumulate rounding
        current = FlowState(current.velocity, current.alpha, t0 + i * dt)
        if i % cadence == 0 or i == n_steps:
            sample(current)
    run.final = current
    logger.debug("flow_integrated", steps=n_steps, t_end=current.time, alpha=state.alpha)
    return run
