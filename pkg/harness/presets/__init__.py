"""
Presets package for alphalab.

One class per experiment preset, registered by the name used in experiment
files.
"""

from ..base_preset import BasePreset
from .euler2d import Euler2DPreset
from .geodesic1d import Geodesic1DPreset
from .verify_geodesics import VerifyGeodesicsPreset
from .curvature_table import CurvatureTablePreset
from .jacobi_stability import JacobiStabilityPreset
from .conjugate_scan import ConjugateScanPreset

PRESETS: dict[str, type[BasePreset]] = {
    cls.name: cls
    for cls in (
        Euler2DPreset,
        Geodesic1DPreset,
        VerifyGeodesicsPreset,
        CurvatureTablePreset,
        JacobiStabilityPreset,
        ConjugateScanPreset,
    )
}

__all__ = [
    "PRESETS",
    "Euler2DPreset",
    "Geodesic1DPreset",
    "VerifyGeodesicsPreset",
    "CurvatureTablePreset",
    "JacobiStabilityPreset",
    "ConjugateScanPreset",
]
