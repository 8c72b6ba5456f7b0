"""
Curvature operator of the H¹ connection at the identity.

With ∇¹ = ∇⁰ + A and the flat ∇⁰ having no curvature,

    R(X, Y)Z = ∇⁰_X A(Y, Z) - ∇⁰_Y A(X, Z)
             + A(X, ∇⁰_Y Z) - A(Y, ∇⁰_X Z)
             + A(X, A(Y, Z)) - A(Y, A(X, Z))
             - A([X, Y], Z).

The operator is assembled as T(X, Y, Z) - T(Y, X, Z) - A([X, Y], Z), so
antisymmetry in (X, Y) holds bit for bit.
"""

from __future__ import annotations

import numpy as np

from spectral import Grid, SpectralField, TrigFieldSpec, TrigTerm, Phase, advect

from .connection import DEFAULT_DIVERGENCE_SIGN, AVariant, a_form, bracket, covariant


def _half_operator(
    x: SpectralField, y: SpectralField, z: SpectralField, variant: AVariant, alpha: float, sign: float
) -> SpectralField:
    inner = a_form(y, z, variant, alpha, sign)
    return a_form(x, covariant(y, z, variant, alpha, sign), variant, alpha, sign) + advect(x, inner)


def r1_operator(
    x: SpectralField,
    y: SpectralField,
    z: SpectralField,
    variant: AVariant = AVariant.REMARK,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
) -> SpectralField:
    """
    R(X, Y)Z for the connection built from the given A-variant.

    Args:
        x, y, z: Vector fields on the same grid
        variant: Kernel of the A-form
        alpha: Metric length scale
        divergence_sign: Sign of the adjoint divergence

    Returns:
        R(X, Y)Z, trilinear and antisymmetric in (X, Y)
    """
    first = _half_operator(x, y, z, variant, alpha, divergence_sign)
    second = _half_operator(y, x, z, variant, alpha, divergence_sign)
    return (first - second) - a_form(bracket(x, y), z, variant, alpha, divergence_sign)


def single_exponential_triple(grid: Grid, seed: int, max_wavenumber: int = 3) -> tuple[SpectralField, ...]:
    """
    Three divergence-free fields built from one plane wave direction k.

    Each field is (-k₂, k₁)(a cos⟨k,x⟩ + b sin⟨k,x⟩) with random a, b, so all
    components are combinations of e^{±i⟨k,x⟩}.
    """
    if grid.dim != 2:
        raise ValueError("plane wave triples are generated on T²")
    rng = np.random.default_rng(seed)
    band = min(max_wavenumber, grid.cutoff)
    k = (0, 0)
    while k == (0, 0):
        k = tuple(int(v) for v in rng.integers(-band, band + 1, size=2))
    direction = (-k[1], k[0])
    fields = []
    for _ in range(3):
        a, b = rng.standard_normal(2)
        terms = []
        for component, weight in enumerate(direction):
            if weight == 0:
                continue
            terms.append(TrigTerm(component, k, Phase.COS, float(a * weight)))
            terms.append(TrigTerm(component, k, Phase.SIN, float(b * weight)))
        spec = TrigFieldSpec.from_terms(terms, dim=2, n_components=2)
        fields.append(spec.to_field(grid))
    return tuple(fields)
