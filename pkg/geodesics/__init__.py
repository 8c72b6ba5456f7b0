"""
Geodesics package for alphalab.

Lagrangian states on Diff(T¹) and Diff(T²), the 1D geodesic spray of the H¹
metric and its integrator, the Lagrangian-to-Eulerian map, and the analytic
2D geodesic families with their residual checks.
"""

from .diffeo import (
    DiffeoState,
    GeodesicError,
    DiffeomorphismBreakdownError,
    NonInvertibleMapError,
    eulerian_velocity,
    invert_monotone_map,
    trig_interpolate,
)
from .spray import (
    SprayForm,
    GeodesicDiagnostics,
    GeodesicTrajectory,
    camassa_holm_residual,
    characteristic_breakdown_time,
    geodesic_diagnostics,
    integrate_geodesic_1d,
    lagrangian_energy,
    pullback_helmholtz_solve,
    spray_1d,
)
from .families import (
    FamilyKind,
    GeodesicFamily,
    geodesic_residual_2d,
    is_volume_preserving,
    jacobian_determinant,
)

__all__ = [
    "DiffeoState",
    "GeodesicError",
    "DiffeomorphismBreakdownError",
    "NonInvertibleMapError",
    "eulerian_velocity",
    "invert_monotone_map",
    "trig_interpolate",
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
    "FamilyKind",
    "GeodesicFamily",
    "geodesic_residual_2d",
    "is_volume_preserving",
    "jacobian_determinant",
]
