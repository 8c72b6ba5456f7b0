"""
Linearization of the 1D geodesic spray.

The Jacobi operator is the directional derivative of the spray,

    Ÿ = [S(η + εY, η̇ + εẎ) - S(η - εY, η̇ - εẎ)] / (2ε),

taken by central differences with ε scaled to the sizes of η̇ and (Y, Ẏ).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from config.logging_config import get_logger, log_solver_event
from config.settings import get_settings
from geodesics import DiffeoState, DiffeomorphismBreakdownError, SprayForm, spray_1d
from spectral import InvalidFieldError

logger = get_logger("jacobi.linearized")

# factor applied to eps on the single retry
RETRY_SHRINK = 0.1


class JacobiError(Exception):
    """Base exception for Jacobi-field computations."""
    pass


class LinearizationError(JacobiError):
    """Both perturbed states left the diffeomorphism region."""
    pass


def effective_eps(state: DiffeoState, y: np.ndarray, ydot: np.ndarray, eps: Optional[float] = None) -> float:
    """eps·max(‖η̇‖∞, 1) / max(‖Y‖∞, ‖Ẏ‖∞); zero when (Y, Ẏ) vanishes."""
    base = get_settings().solver.jacobi_eps if eps is None else eps
    size = max(float(np.max(np.abs(y))), float(np.max(np.abs(ydot))))
    if size == 0.0:
        return 0.0
    return base * max(float(np.max(np.abs(state.velocity))), 1.0) / size


def _central_difference(
    state: DiffeoState, y: np.ndarray, ydot: np.ndarray, step: float, form: SprayForm
) -> np.ndarray:
    d, v = state.displacement, state.velocity
    plus = spray_1d(state.with_values(d + step * y, v + step * ydot), form)
    minus = spray_1d(state.with_values(d - step * y, v - step * ydot), form)
    return (plus - minus) / (2.0 * step)


def linearized_spray(
    state: DiffeoState,
    y: np.ndarray,
    ydot: np.ndarray,
    eps: Optional[float] = None,
    form: SprayForm = SprayForm.CAMASSA_HOLM,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Right-hand side (Ẏ, Ÿ) of the Jacobi equation along ``state``.

    Args:
        state: Base point (η, η̇)
        y: Variation of η
        ydot: Variation of η̇
        eps: Base step; defaults to the configured ``jacobi_eps``
        form: Spray bracket

    Returns:
        (Ẏ, Ÿ)

    Raises:
        LinearizationError: If a perturbed state breaks down even after
            shrinking eps once
    """
    y = np.asarray(y, dtype=float)
    ydot = np.asarray(ydot, dtype=float)
    step = effective_eps(state, y, ydot, eps)
    if step == 0.0:
        return ydot.copy(), np.zeros_like(y)
    try:
        return ydot.copy(), _central_difference(state, y, ydot, step, form)
    except (DiffeomorphismBreakdownError, InvalidFieldError):
        log_solver_event(
            logger,
            "linearization_retry",
            component="jacobi",
            message="perturbed state left the diffeomorphism region, shrinking eps",
            level="warning",
            time=state.time,
            eps=step,
        )
    try:
        return ydot.copy(), _central_difference(state, y, ydot, step * RETRY_SHRINK, form)
    except (DiffeomorphismBreakdownError, InvalidFieldError) as e:
        raise LinearizationError(f"linearization failed at t={state.time:.6g}: {e}") from e
