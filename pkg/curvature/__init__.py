"""
Curvature package for alphalab.

The A-form of the H¹ connection at the identity, the curvature operator in
operator and coordinate form, the second fundamental form of the
volume-preserving subgroup, and sectional curvature reports.
"""

from .connection import (
    AVariant,
    CurvatureError,
    NotDivergenceFreeError,
    DEFAULT_DIVERGENCE_SIGN,
    a_form,
    a_kernel,
    bracket,
    covariant,
    second_fundamental,
)
from .tensor import r1_operator, single_exponential_triple
from .coordinate import r1_coordinate
from .sectional import (
    CurvatureReport,
    SignClass,
    classify,
    compare_variants,
    gauss_correction,
    sectional,
    sectional_dmu,
    sectional_dmu_fields,
    sectional_fields,
)

__all__ = [
    "AVariant",
    "CurvatureError",
    "NotDivergenceFreeError",
    "DEFAULT_DIVERGENCE_SIGN",
    "a_form",
    "a_kernel",
    "bracket",
    "covariant",
    "second_fundamental",
    "r1_operator",
    "single_exponential_triple",
    "r1_coordinate",
    "CurvatureReport",
    "SignClass",
    "classify",
    "compare_variants",
    "gauss_correction",
    "sectional",
    "sectional_dmu",
    "sectional_dmu_fields",
    "sectional_fields",
]
