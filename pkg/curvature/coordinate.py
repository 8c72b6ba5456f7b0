"""
Coordinate expansion of the curvature operator on T².

Written term by term with explicit indices, using the single kernel

    A(P, Q)^n = σ α² H_α⁻¹ ∂_l (∂_i P^l ∂_n Q^i),

and the seven terms

    X^j ∂_j A(Y,Z)^n - Y^l ∂_l A(X,Z)^n
    + A(X, (Y·∇)Z)^n - A(Y, (X·∇)Z)^n
    + A(X, A(Y,Z))^n - A(Y, A(X,Z))^n
    - A([X,Y], Z)^n.

It shares no assembly code with ``tensor.r1_operator`` and matches it with the
``unsymmetrized`` variant for either sign σ.
"""

from __future__ import annotations

import numpy as np

from spectral import SpectralField, derivative, helmholtz_inverse, to_physical, to_spectral

DIM = 2


def _partials(field: SpectralField) -> list[list[np.ndarray]]:
    """d[l][i] = ∂_i f^l on the grid."""
    grads = [to_physical(derivative(field, i)) for i in range(DIM)]
    return [[grads[i][l] for i in range(DIM)] for l in range(DIM)]


def _from_components(like: SpectralField, parts: list[SpectralField]) -> SpectralField:
    return SpectralField(like.grid, np.concatenate([p.coefficients for p in parts]))


def _a_coordinate(p: SpectralField, q: SpectralField, alpha: float, sign: float) -> SpectralField:
    grid = p.grid
    dp = _partials(p)
    dq = _partials(q)
    components = []
    for n in range(DIM):
        total = SpectralField.zeros(grid, 1)
        for l in range(DIM):
            entry = np.zeros(grid.shape)
            for i in range(DIM):
                entry += dp[l][i] * dq[i][n]
            total = total + derivative(to_spectral(grid, entry), l)
        components.append(total)
    return (sign * alpha ** 2) * helmholtz_inverse(_from_components(p, components), alpha)


def _directional(x: SpectralField, w: SpectralField) -> SpectralField:
    """Σ_j X^j ∂_j W^n."""
    grid = x.grid
    xs = to_physical(x)
    dw = _partials(w)
    samples = np.zeros((DIM,) + grid.shape)
    for n in range(DIM):
        for j in range(DIM):
            samples[n] += xs[j] * dw[n][j]
    return to_spectral(grid, samples)


def r1_coordinate(
    x: SpectralField,
    y: SpectralField,
    z: SpectralField,
    alpha: float = 1.0,
    divergence_sign: float = 1.0,
) -> SpectralField:
    """
    R(X, Y)Z from the coordinate expansion on T².

    ``divergence_sign`` defaults to +1, the sign as displayed; pass -1 to
    compare with the adjoint convention used elsewhere.
    """
    if x.grid.dim != DIM:
        raise ValueError("the coordinate expansion is written for T²")

    def a(p: SpectralField, q: SpectralField) -> SpectralField:
        return _a_coordinate(p, q, alpha, divergence_sign)

    a_yz = a(y, z)
    a_xz = a(x, z)
    commutator = _directional(x, y) - _directional(y, x)
    return (
        _directional(x, a_yz)
        - _directional(y, a_xz)
        + a(x, _directional(y, z))
        - a(y, _directional(x, z))
        + a(x, a_yz)
        - a(y, a_xz)
        - a(commutator, z)
    )
