"""
RK4 integration of Jacobi fields and the two-geodesic deviation check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from config.logging_config import get_logger, log_solver_event
from geodesics import DiffeoState, SprayForm, integrate_geodesic_1d

from .bases import JacobiBase, LagrangianBase1D
from .linearized import JacobiError

logger = get_logger("jacobi.integrate")

# interior second differences above -CONVEXITY_TOLERANCE·max‖Y‖₁ count as convex
CONVEXITY_TOLERANCE = 1e-6


class JacobiWindowError(JacobiError):
    """The requested window is not covered by the base geodesic."""
    pass


@dataclass
class JacobiTrajectory:
    """Sampled Jacobi field: times, Y and integration variable W, norm traces."""

    base: JacobiBase
    times: list[float] = field(default_factory=list)
    ys: list[Any] = field(default_factory=list)
    ws: list[Any] = field(default_factory=list)
    h1_trace: list[float] = field(default_factory=list)
    l2_trace: list[float] = field(default_factory=list)

    def second_differences(self) -> np.ndarray:
        """Raw second differences of ‖Y‖₁ at interior samples."""
        norms = np.asarray(self.h1_trace)
        if norms.size < 3:
            return np.zeros(0)
        return norms[2:] - 2.0 * norms[1:-1] + norms[:-2]

    @property
    def convexity_flags(self) -> list[bool]:
        scale = max(self.h1_trace, default=0.0)
        return [bool(v >= -CONVEXITY_TOLERANCE * scale) for v in self.second_differences()]

    def rows(self) -> list[dict[str, float]]:
        """(t, ‖Y‖₁, ‖Y‖_{L²}, second difference) per sample; NaN at the ends."""
        diffs = self.second_differences()
        out = []
        for i, t in enumerate(self.times):
            second = float(diffs[i - 1]) if 0 < i < len(self.times) - 1 else math.nan
            out.append({"time": t, "h1_norm": self.h1_trace[i], "l2_norm": self.l2_trace[i], "second_difference": second})
        return out


def integrate_jacobi(
    base: JacobiBase,
    y0: Any,
    ydot0: Any,
    t_end: Optional[float] = None,
    dt: Optional[float] = None,
    cadence: int = 1,
) -> JacobiTrajectory:
    """
    Co-integrate (Y, Ẏ) with classical RK4 along ``base``.

    Args:
        base: Base geodesic
        y0: Y(t_start)
        ydot0: Ẏ(t_start)
        t_end: End of the window; defaults to the end of the base
        dt: Step; defaults to the base's step
        cadence: Samples are kept every ``cadence`` steps and at the end

    Returns:
        JacobiTrajectory

    Raises:
        JacobiWindowError: If the window extends beyond the base geodesic
    """
    t0 = base.t_start
    t_end = base.t_end if t_end is None else t_end
    dt = base.dt if dt is None else dt
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end > base.t_end + 1e-9 * max(1.0, abs(base.t_end)) or t_end < t0:
        raise JacobiWindowError(f"window [{t0}, {t_end}] is not inside the base window [{base.t_start}, {base.t_end}]")
    n_steps = int(round((t_end - t0) / dt))

    trajectory = JacobiTrajectory(base=base)
    y, w = base.initial_state(y0, ydot0)

    def record(t: float, y: Any, w: Any) -> None:
        trajectory.times.append(t)
        trajectory.ys.append(y)
        trajectory.ws.append(w)
        trajectory.h1_trace.append(base.h1_norm(t, y))
        trajectory.l2_trace.append(base.l2_norm(t, y))

    record(t0, y, w)
    for i in range(n_steps):
        t = t0 + i * dt
        half = 0.5 * dt
        k1y, k1w = base.derivative(t, y, w)
        k2y, k2w = base.derivative(t + half, y + half * k1y, w + half * k1w)
        k3y, k3w = base.derivative(t + half, y + half * k2y, w + half * k2w)
        k4y, k4w = base.derivative(t + dt, y + dt * k3y, w + dt * k3w)
        y = y + (dt / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        w = w + (dt / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        if (i + 1) % cadence == 0 or i + 1 == n_steps:
            record(t0 + (i + 1) * dt, y, w)

    base.logger.debug("jacobi_integrated", steps=n_steps, t_end=t_end, final_norm=trajectory.h1_trace[-1])
    return trajectory


@dataclass
class DeviationTrace:
    """(η_ε(t) - η(t))/ε at the sampled times of two geodesics."""

    eps: float
    times: np.ndarray
    deviations: list[np.ndarray]
    base: LagrangianBase1D


def geodesic_deviation(
    base_state: DiffeoState,
    direction: np.ndarray,
    eps: float,
    dt: float,
    t_end: float,
    form: SprayForm = SprayForm.CAMASSA_HOLM,
) -> DeviationTrace:
    """
    Integrate the geodesics through (η, η̇) and (η, η̇ + εV) and return their
    scaled difference, the finite-difference counterpart of the Jacobi field
    with Y(0) = 0, Ẏ(0) = V.

    Raises:
        JacobiError: If either geodesic breaks down inside the window
    """
    reference = integrate_geodesic_1d(base_state, dt, t_end, form=form)
    perturbed_state = base_state.with_values(base_state.displacement, base_state.velocity + eps * direction)
    perturbed = integrate_geodesic_1d(perturbed_state, dt, t_end, form=form)
    if reference.breakdown_time is not None or perturbed.breakdown_time is not None:
        log_solver_event(
            logger,
            "deviation_breakdown",
            component="jacobi",
            message="a geodesic broke down inside the deviation window",
            level="error",
            eps=eps,
        )
        raise JacobiError("geodesic broke down inside the deviation window")
    deviations = [
        (p.displacement - r.displacement) / eps for r, p in zip(reference.states, perturbed.states)
    ]
    return DeviationTrace(eps, reference.times, deviations, LagrangianBase1D(reference))


def deviation_error(trace: DeviationTrace, jacobi: JacobiTrajectory) -> float:
    """sup_t ‖Y_fd(t) - Y(t)‖₁ over the common samples."""
    if len(trace.deviations) != len(jacobi.ys):
        raise JacobiError("deviation and Jacobi samples do not line up")
    return max(
        trace.base.h1_norm(t, fd - y) for t, fd, y in zip(jacobi.times, trace.deviations, jacobi.ys)
    )
