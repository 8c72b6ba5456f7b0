"""
The H¹ connection at the identity of Diff(Tⁿ).

On a flat torus the Levi-Civita connection of the right-invariant H¹ metric
at the identity is ∇¹_X Z = ∇⁰_X Z + A(X, Z) with

    A(X, Z) = ½ α² H_α⁻¹ ∇*(K(∇X, ∇Z)),   (∇*τ)_n = σ Σ_l ∂_l τ_{ln},

where ∇⁰ is the flat directional derivative, G[l, i] = ∂_i X^l, and the
kernel K depends on the variant:

* ``remark``:         GX·GZ + GZ·GX
* ``eq4``:            GX·GZ + GZ·GX + GX·GZᵀ + GZ·GXᵀ - GXᵀ·GZ - GZᵀ·GX
* ``unsymmetrized``:  2 GX·GZ

σ = -1 is the adjoint of the gradient; σ = +1 reads the coordinate formula
without the sign of the adjoint.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from spectral import (
    SpectralField,
    advect,
    derivative,
    gradient_part,
    helmholtz_inverse,
    to_spectral,
    velocity_gradient,
)

DEFAULT_DIVERGENCE_SIGN = -1.0


class CurvatureError(Exception):
    """Base exception for curvature computations."""
    pass


class NotDivergenceFreeError(CurvatureError, ValueError):
    """An operation restricted to divergence-free fields got another field."""
    pass


class AVariant(str, Enum):
    REMARK = "remark"
    EQ4 = "eq4"
    UNSYMMETRIZED = "unsymmetrized"


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("li...,in...->ln...", a, b)


def _transpose(a: np.ndarray) -> np.ndarray:
    return np.swapaxes(a, 0, 1)


def a_kernel(x: SpectralField, z: SpectralField, variant: AVariant = AVariant.REMARK) -> np.ndarray:
    """Physical kernel K[l, n] of the given variant, shape (dim, dim, *grid.shape)."""
    gx = velocity_gradient(x)
    gz = velocity_gradient(z)
    variant = AVariant(variant)
    if variant is AVariant.REMARK:
        return _matmul(gx, gz) + _matmul(gz, gx)
    if variant is AVariant.UNSYMMETRIZED:
        return 2.0 * _matmul(gx, gz)
    return (
        _matmul(gx, gz)
        + _matmul(gz, gx)
        + _matmul(gx, _transpose(gz))
        + _matmul(gz, _transpose(gx))
        - _matmul(_transpose(gx), gz)
        - _matmul(_transpose(gz), gx)
    )


def adjoint_divergence(grid_kernel: np.ndarray, like: SpectralField, divergence_sign: float) -> SpectralField:
    """σ Σ_l ∂_l τ[l, ·] of a physical tensor, each entry dealiased first."""
    grid = like.grid
    total = SpectralField.zeros(grid, grid.dim)
    for l in range(grid.dim):
        total = total + derivative(to_spectral(grid, grid_kernel[l]), l)
    return divergence_sign * total


def a_form(
    x: SpectralField,
    z: SpectralField,
    variant: AVariant = AVariant.REMARK,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
) -> SpectralField:
    """
    The bilinear form A(X, Z).

    Symmetric in (X, Z) for ``remark`` and ``eq4``; vanishes when either
    argument is constant.
    """
    kernel = a_kernel(x, z, variant)
    return (0.5 * alpha ** 2) * helmholtz_inverse(adjoint_divergence(kernel, x, divergence_sign), alpha)


def covariant(
    x: SpectralField,
    z: SpectralField,
    variant: AVariant = AVariant.REMARK,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
) -> SpectralField:
    """∇¹_X Z = (X·∇)Z + A(X, Z)."""
    return advect(x, z) + a_form(x, z, variant, alpha, divergence_sign)


def bracket(x: SpectralField, y: SpectralField) -> SpectralField:
    """[X, Y] = (X·∇)Y - (Y·∇)X."""
    return advect(x, y) - advect(y, x)


def second_fundamental(
    x: SpectralField,
    y: SpectralField,
    variant: AVariant = AVariant.REMARK,
    alpha: float = 1.0,
    divergence_sign: float = DEFAULT_DIVERGENCE_SIGN,
    require_divergence_free: bool = True,
) -> SpectralField:
    """
    S(X, Y) = Q(∇¹_X Y), the gradient part of the covariant derivative.

    Raises:
        NotDivergenceFreeError: If an input is not divergence-free and
            ``require_divergence_free`` is set
    """
    if require_divergence_free and not (x.is_divergence_free and y.is_divergence_free):
        raise NotDivergenceFreeError("second fundamental form needs divergence-free fields")
    return gradient_part(covariant(x, y, variant, alpha, divergence_sign))
