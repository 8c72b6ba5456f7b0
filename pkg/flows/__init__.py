"""
Flows package for alphalab.

Eulerian solver for the averaged-Euler equations on T² together with its
energy and pressure diagnostics and the initial-data generators.
"""

from .euler_alpha import (
    FlowState,
    FlowDiagnostics,
    FlowRun,
    SolverError,
    SolverDivergenceError,
    momentum_forcing,
    rhs,
    pressure,
    pressure_gradient,
    h1_energy,
    diagnostics,
    step_rk4,
    integrate_flow,
)
from .initial_data import (
    GENERATORS,
    make_initial_velocity,
    random_field,
    random_vector_field,
    shear_field,
    taylor_green_field,
    trig_field,
    zero_field,
)

__all__ = [
    "FlowState",
    "FlowDiagnostics",
    "FlowRun",
    "SolverError",
    "SolverDivergenceError",
    "momentum_forcing",
    "rhs",
    "pressure",
    "pressure_gradient",
    "h1_energy",
    "diagnostics",
    "step_rk4",
    "integrate_flow",
    "GENERATORS",
    "make_initial_velocity",
    "random_field",
    "random_vector_field",
    "shear_field",
    "taylor_green_field",
    "trig_field",
    "zero_field",
]
