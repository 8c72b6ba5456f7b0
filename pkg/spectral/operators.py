"""
Differential operators, projections and inner products on the flat torus.

Every linear operator here is a Fourier multiplier, so they commute with one
another and preserve Hermitian symmetry and the dealiasing band. Nonlinear
terms go through ``pointwise_product``: multiply in physical space, transform
back, truncate.

Sign conventions: ``laplacian`` is the componentwise analysts' Laplacian with
symbol -|k|^2, and the Helmholtz operator is H_alpha = 1 - alpha^2 Δ with
symbol 1 + alpha^2 |k|^2.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import fft as sfft

from .field import GridMismatchError, InvalidFieldError, SpectralField, to_physical, to_spectral
from .grid import Grid


def _check_alpha(alpha: float) -> float:
    if not math.isfinite(alpha):
        raise InvalidFieldError(f"alpha must be finite, got {alpha}")
    return float(alpha)


def _check_same_grid(x: SpectralField, y: SpectralField) -> None:
    if x.grid != y.grid:
        raise GridMismatchError(f"grid {x.grid} does not match {y.grid}")


def derivative(field: SpectralField, axis: int) -> SpectralField:
    """Partial derivative along ``axis`` (multiplier i·k_axis)."""
    if not 0 <= axis < field.grid.dim:
        raise InvalidFieldError(f"axis {axis} out of range for dim {field.grid.dim}")
    return SpectralField(field.grid, field.coefficients * (1j * field.grid.wavenumbers[axis]))


def laplacian(field: SpectralField) -> SpectralField:
    return SpectralField(field.grid, field.coefficients * (-field.grid.k_squared))


def helmholtz_symbol(grid: Grid, alpha: float) -> np.ndarray:
    return 1.0 + _check_alpha(alpha) ** 2 * grid.k_squared


def helmholtz_apply(field: SpectralField, alpha: float) -> SpectralField:
    """H_alpha f = f - alpha^2 Δf."""
    return SpectralField(field.grid, field.coefficients * helmholtz_symbol(field.grid, alpha))


def helmholtz_inverse(field: SpectralField, alpha: float) -> SpectralField:
    """Exact inverse of ``helmholtz_apply``; the symbol never vanishes."""
    return SpectralField(field.grid, field.coefficients / helmholtz_symbol(field.grid, alpha))


def divergence(field: SpectralField) -> SpectralField:
    """Scalar field Σ_i ∂_i f^i."""
    return SpectralField(field.grid, (1j * field.divergence_symbol())[np.newaxis])


def gradient(scalar: SpectralField) -> SpectralField:
    if scalar.n_components != 1:
        raise InvalidFieldError("gradient expects a scalar field")
    coeffs = np.stack([1j * k * scalar.coefficients[0] for k in scalar.grid.wavenumbers])
    return SpectralField(scalar.grid, coeffs)


def _inverse_k_squared(grid: Grid) -> np.ndarray:
    k2 = grid.k_squared
    return np.divide(1.0, k2, out=np.zeros_like(k2, dtype=float), where=k2 > 0)


def inverse_laplacian(scalar: SpectralField) -> SpectralField:
    """Δ^{-1} with the k = 0 mode set to zero (zero-mean gauge)."""
    return SpectralField(scalar.grid, scalar.coefficients * (-_inverse_k_squared(scalar.grid)))


def gradient_part(field: SpectralField) -> SpectralField:
    """Q(V) = grad Δ^{-1} div V, multiplier k kᵀ/|k|^2 (zero at k = 0)."""
    grid = field.grid
    weight = field.divergence_symbol() * _inverse_k_squared(grid)
    return SpectralField(grid, np.stack([k * weight for k in grid.wavenumbers]))


def leray_project(field: SpectralField) -> SpectralField:
    """P(V) = V - Q(V), the divergence-free part."""
    return field - gradient_part(field)


def h1_inner(x: SpectralField, y: SpectralField, alpha: float) -> float:
    """
    ⟨X, Y⟩_{L²} + alpha² ⟨∇X, ∇Y⟩_{L²}, evaluated exactly by Parseval.

    Raises:
        GridMismatchError: If X and Y live on different grids
    """
    _check_same_grid(x, y)
    if x.n_components != y.n_components:
        raise InvalidFieldError("operands have different component counts")
    weight = helmholtz_symbol(x.grid, alpha)
    total = np.sum(weight * np.real(np.conj(x.coefficients) * y.coefficients))
    return float(x.grid.volume * total)


def l2_inner(x: SpectralField, y: SpectralField) -> float:
    return h1_inner(x, y, 0.0)


def h1_norm(field: SpectralField, alpha: float) -> float:
    return math.sqrt(max(h1_inner(field, field, alpha), 0.0))


def l2_norm(field: SpectralField) -> float:
    return h1_norm(field, 0.0)


def pointwise_product(grid: Grid, a: np.ndarray, b: np.ndarray) -> SpectralField:
    """
    Dealiased product of two physical fields.

    A scalar factor (shape ``grid.shape``) broadcasts against a vector one.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-grid.dim:] != grid.shape or b.shape[-grid.dim:] != grid.shape:
        raise GridMismatchError("operands do not live on the grid")
    return to_spectral(grid, a * b)


def velocity_gradient(field: SpectralField) -> np.ndarray:
    """Physical array G with G[l, i] = ∂_i f^l, shape (n_components, dim, *grid.shape)."""
    dim = field.grid.dim
    return np.stack([to_physical(derivative(field, i)) for i in range(dim)], axis=1)


def advect(x: SpectralField, w: SpectralField) -> SpectralField:
    """(X·∇)W, the flat directional derivative of W along X, dealiased."""
    _check_same_grid(x, w)
    if x.n_components != x.grid.dim:
        raise InvalidFieldError("advecting field must have dim components")
    xs = to_physical(x)
    gw = velocity_gradient(w)
    return to_spectral(w.grid, np.einsum("j...,lj...->l...", xs, gw))


def periodic_derivative(grid: Grid, samples: np.ndarray, axis: int = 0) -> np.ndarray:
    """
    Full-band spectral derivative of raw periodic samples along ``axis``.

    No dealiasing is applied; the Nyquist mode is dropped. Used for
    Lagrangian quantities (η, η̇) that must not be filtered.
    """
    arr = np.asarray(samples, dtype=float)
    k = grid.axis_wavenumbers.copy()
    k[grid.n_points // 2] = 0.0
    shape = [1] * arr.ndim
    shape[axis] = grid.n_points
    spectrum = sfft.fft(arr, axis=axis) * (1j * k.reshape(shape))
    return sfft.ifft(spectrum, axis=axis).real
