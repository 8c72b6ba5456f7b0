"""
Growth diagnostics of Jacobi fields and conjugate-point scanning.

A geodesic with nonpositive curvature along a Jacobi field Y, Y(0) = 0, has
a convex H¹ norm trace, hence ‖Y(t)‖₁ >= c·t. ``stability_report`` checks the
convexity in discrete form and fits c; ``conjugate_point_scan`` looks for
interior zeros of Y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from config.logging_config import get_logger

from .bases import JacobiBase
from .integrate import CONVEXITY_TOLERANCE, JacobiTrajectory, integrate_jacobi
from .linearized import JacobiError

logger = get_logger("jacobi.stability")

# ‖Y‖₁ below this fraction of its running maximum flags a conjugate point
VANISHING_FRACTION = 1e-6

CurvatureProbe = Callable[[float, Any], Optional[float]]


@dataclass(frozen=True)
class StabilityReport:
    """Summary of an H¹ norm trace."""

    min_second_difference: float
    max_second_difference: float
    growth_coefficient: float
    slope: float
    intercept: float
    growth_ratio: float
    convex: bool
    max_norm: float
    curvature_nonpositive: Optional[bool] = None
    consistent: Optional[bool] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "min_second_difference": self.min_second_difference,
            "max_second_difference": self.max_second_difference,
            "growth_coefficient": self.growth_coefficient,
            "slope": self.slope,
            "intercept": self.intercept,
            "growth_ratio": self.growth_ratio,
            "convex": self.convex,
            "max_norm": self.max_norm,
            "curvature_nonpositive": self.curvature_nonpositive,
            "consistent": self.consistent,
        }


def stability_report(
    trajectory: JacobiTrajectory,
    curvature_probe: Optional[CurvatureProbe] = None,
    probe_every: int = 10,
    curvature_tolerance: float = 1e-9,
) -> StabilityReport:
    """
    Convexity and growth of ‖Y(t)‖₁.

    Args:
        trajectory: Nonempty Jacobi trajectory
        curvature_probe: Optional map (t, Y) -> curvature numerator of the
            plane (Y, η̇); typically ``base.sectional_along``
        probe_every: Probe every n-th sample
        curvature_tolerance: Relative tolerance for "nonpositive"

    Returns:
        StabilityReport; ``growth_coefficient`` is the least-squares c in
        ‖Y‖₁ ≈ c·(t - t0) and ``growth_ratio`` is ‖Y(t_end)‖₁/‖Y(t_mid)‖₁
    """
    if not trajectory.times:
        raise ValueError("stability_report needs a nonempty trajectory")
    times = np.asarray(trajectory.times) - trajectory.times[0]
    norms = np.asarray(trajectory.h1_trace)
    max_norm = float(np.max(norms))
    diffs = trajectory.second_differences()
    min_diff = float(np.min(diffs)) if diffs.size else 0.0
    max_diff = float(np.max(diffs)) if diffs.size else 0.0
    convex = bool(min_diff >= -CONVEXITY_TOLERANCE * max_norm)

    denom = float(np.dot(times, times))
    c = float(np.dot(times, norms) / denom) if denom > 0.0 else 0.0
    if times.size >= 2:
        slope, intercept = (float(v) for v in np.polyfit(times, norms, 1))
    else:
        slope, intercept = 0.0, float(norms[0])
    mid = norms[norms.size // 2]
    growth_ratio = float(norms[-1] / mid) if mid > 0.0 else float("inf") if norms[-1] > 0.0 else 1.0

    nonpositive = None
    consistent = None
    if curvature_probe is not None:
        samples = []
        for i in range(0, len(trajectory.times), max(probe_every, 1)):
            value = curvature_probe(trajectory.times[i], trajectory.ys[i])
            if value is not None:
                samples.append((value, trajectory.base.h1_norm(trajectory.times[i], trajectory.ys[i])))
        if samples:
            nonpositive = all(v <= curvature_tolerance * max(n * n, 1.0) for v, n in samples)
            consistent = (not nonpositive) or convex

    report = StabilityReport(
        min_second_difference=min_diff,
        max_second_difference=max_diff,
        growth_coefficient=c,
        slope=slope,
        intercept=intercept,
        growth_ratio=growth_ratio,
        convex=convex,
        max_norm=max_norm,
        curvature_nonpositive=nonpositive,
        consistent=consistent,
    )
    logger.debug("stability_report", base=trajectory.base.name, **report.to_dict())
    return report


@dataclass
class ConjugateScanResult:
    """Candidate conjugate times found along one direction."""

    direction_index: int
    label: str
    candidates: list[float] = field(default_factory=list)
    max_norm: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "direction_index": self.direction_index,
            "label": self.label,
            "candidates": list(self.candidates),
            "max_norm": self.max_norm,
        }


def find_conjugate_times(trajectory: JacobiTrajectory) -> list[float]:
    """
    Interior times where Y vanishes.

    A sample is a candidate when ‖Y‖₁ falls below VANISHING_FRACTION of its
    running maximum; a sign change between consecutive samples
    (⟨Y_i, Y_{i+1}⟩₁ < 0) is refined by linear interpolation along Y_i.
    """
    base = trajectory.base
    times = trajectory.times
    norms = trajectory.h1_trace
    found: list[float] = []
    running = norms[0] if norms else 0.0
    for i in range(1, len(times) - 1):
        running = max(running, norms[i])
        if running > 0.0 and norms[i] < VANISHING_FRACTION * running:
            if not found or times[i] - found[-1] > 2.0 * (times[i] - times[i - 1]):
                found.append(times[i])
            continue
        if norms[i] == 0.0:
            continue
        projected = base.inner(times[i], trajectory.ys[i + 1], trajectory.ys[i]) / norms[i]
        if projected < 0.0:
            tau = times[i] + (times[i + 1] - times[i]) * norms[i] / (norms[i] - projected)
            if not found or tau - found[-1] > 2.0 * (times[i + 1] - times[i]):
                found.append(tau)
    return found


def conjugate_point_scan(
    base: JacobiBase,
    directions: Sequence[Any],
    labels: Optional[Sequence[str]] = None,
    t_end: Optional[float] = None,
    dt: Optional[float] = None,
) -> list[ConjugateScanResult]:
    """
    Integrate Y(0) = 0, Ẏ(0) = direction for each direction and report
    candidate conjugate times. A zero-length window yields an empty report.

    Raises:
        JacobiError: If a direction has zero or non-finite H¹ norm
    """
    end = base.t_end if t_end is None else t_end
    if end <= base.t_start:
        return []
    labels = list(labels) if labels is not None else [f"direction_{i}" for i in range(len(directions))]
    for index, direction in enumerate(directions):
        size = base.h1_norm(base.t_start, direction)
        if not math.isfinite(size) or size == 0.0:
            raise JacobiError(f"direction {labels[index]!r} has H1 norm {size}; a scan needs a nonzero direction")
    results = []
    for index, direction in enumerate(directions):
        zero = 0.0 * direction
        trajectory = integrate_jacobi(base, zero, direction, t_end=end, dt=dt)
        candidates = find_conjugate_times(trajectory)
        results.append(
            ConjugateScanResult(index, labels[index], candidates, max(trajectory.h1_trace))
        )
        if candidates:
            logger.info("conjugate_point_candidate", base=base.name, label=labels[index], times=candidates)
    return results
