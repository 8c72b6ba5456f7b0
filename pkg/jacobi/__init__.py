"""
Jacobi package for alphalab.

Jacobi fields along 1D geodesics, the analytic shear families and a
finite-dimensional surrogate, with growth diagnostics and conjugate-point
scanning.
"""

from .linearized import JacobiError, LinearizationError, effective_eps, linearized_spray
from .bases import GreatCircleBase, JacobiBase, LagrangianBase1D, ShearFamilyBase
from .integrate import (
    CONVEXITY_TOLERANCE,
    DeviationTrace,
    JacobiTrajectory,
    JacobiWindowError,
    deviation_error,
    geodesic_deviation,
    integrate_jacobi,
)
from .stability import (
    ConjugateScanResult,
    StabilityReport,
    conjugate_point_scan,
    find_conjugate_times,
    stability_report,
)

__all__ = [
    "JacobiError",
    "LinearizationError",
    "effective_eps",
    "linearized_spray",
    "GreatCircleBase",
    "JacobiBase",
    "LagrangianBase1D",
    "ShearFamilyBase",
    "CONVEXITY_TOLERANCE",
    "DeviationTrace",
    "JacobiTrajectory",
    "JacobiWindowError",
    "deviation_error",
    "geodesic_deviation",
    "integrate_jacobi",
    "ConjugateScanResult",
    "StabilityReport",
    "conjugate_point_scan",
    "find_conjugate_times",
    "stability_report",
]
