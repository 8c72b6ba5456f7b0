"""
Initial-data generators for the flow solver.

Every generator returns a divergence-free SpectralField. Random data are
band-limited and drawn from a seeded numpy Generator, so a (seed, grid)
pair always reproduces the same field.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
from scipy import fft as sfft

from spectral import (
    Grid,
    SpectralField,
    TrigFieldSpec,
    derivative,
    h1_norm,
    leray_project,
    to_spectral,
)


def zero_field(grid: Grid) -> SpectralField:
    return SpectralField.zeros(grid)


def shear_field(grid: Grid, wavenumber: int = 1, amplitude: float = 1.0) -> SpectralField:
    """Parallel shear (amplitude·sin(k x²), 0), a steady Laplacian eigenfunction."""
    if grid.dim != 2:
        raise ValueError("shear data live on T²")
    spec = TrigFieldSpec.parse(f"{amplitude!r}*sin(0,{wavenumber})[0]", dim=2, n_components=2)
    return spec.to_field(grid)


def taylor_green_field(grid: Grid, amplitude: float = 1.0) -> SpectralField:
    """(sin x¹ cos x², -cos x¹ sin x²), the Taylor–Green eigenfunction."""
    if grid.dim != 2:
        raise ValueError("Taylor-Green data live on T²")
    a = 0.5 * amplitude
    spec = TrigFieldSpec.parse(
        f"{a!r}*sin(1,1)[0] + {a!r}*sin(1,-1)[0] - {a!r}*sin(1,1)[1] + {a!r}*sin(1,-1)[1]",
        dim=2,
        n_components=2,
    )
    return spec.to_field(grid)


def random_band_limited_scalar(grid: Grid, seed: int, max_wavenumber: int) -> SpectralField:
    """Zero-mean real scalar with random modes in 1 <= |k|∞ <= max_wavenumber."""
    rng = np.random.default_rng(seed)
    band = min(max_wavenumber, grid.cutoff)
    coeffs = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    mask = np.ones(grid.shape, dtype=bool)
    for k in grid.wavenumbers:
        mask &= np.abs(k) <= band
    mask &= grid.k_squared > 0
    coeffs = np.where(mask, coeffs / (1.0 + grid.k_squared), 0.0)
    # taking the real part in physical space enforces Hermitian symmetry
    samples = sfft.ifftn(coeffs, axes=tuple(range(grid.dim))).real
    return to_spectral(grid, samples)


def random_field(
    grid: Grid, seed: int = 0, amplitude: float = 0.5, max_wavenumber: int = 4
) -> SpectralField:
    """
    Seeded random divergence-free field.

    In 2D the field is the skew gradient of a random stream function, scaled
    so that its L² norm equals ``amplitude`` times the domain's sqrt volume
    (an RMS speed of ``amplitude``).
    """
    if grid.dim != 2:
        raise ValueError("random divergence-free data are generated on T²")
    psi = random_band_limited_scalar(grid, seed, max_wavenumber)
    u = SpectralField(
        grid,
        np.stack([derivative(psi, 1).coefficients[0], -derivative(psi, 0).coefficients[0]]),
    )
    norm = h1_norm(u, 0.0)
    if norm == 0.0:
        return u
    return (amplitude * np.sqrt(grid.volume) / norm) * u


def random_vector_field(grid: Grid, seed: int = 0, max_wavenumber: int = 4) -> SpectralField:
    """Seeded random band-limited vector field, not divergence-free."""
    parts = [
        random_band_limited_scalar(grid, seed + 7919 * i, max_wavenumber).coefficients[0]
        for i in range(grid.dim)
    ]
    return SpectralField(grid, np.stack(parts))


def trig_field(grid: Grid, spec: str) -> SpectralField:
    """A TrigFieldSpec string, Leray-projected onto divergence-free fields."""
    parsed = TrigFieldSpec.parse(spec, dim=grid.dim, n_components=grid.dim)
    return leray_project(parsed.to_field(grid))


GENERATORS: dict[str, Callable[..., SpectralField]] = {
    "zero": zero_field,
    "shear": shear_field,
    "taylor_green": taylor_green_field,
    "random": random_field,
    "trig": trig_field,
}


def make_initial_velocity(
    generator: str,
    grid: Grid,
    *,
    spec: Optional[str] = None,
    seed: int = 0,
    amplitude: float = 0.5,
    max_wavenumber: int = 4,
    wavenumber: int = 1,
) -> SpectralField:
    """
    Build initial data by generator name.

    Raises:
        KeyError: For an unknown generator
        ValueError: When ``trig`` is requested without a spec
    """
    if generator not in GENERATORS:
        raise KeyError(f"unknown generator {generator!r}; known: {sorted(GENERATORS)}")
    if generator == "zero":
        return zero_field(grid)
    if generator == "shear":
        return shear_field(grid, wavenumber, amplitude)
    if generator == "taylor_green":
        return taylor_green_field(grid, amplitude)
    if generator == "random":
        return random_field(grid, seed, amplitude, max_wavenumber)
    if spec is None:
        raise ValueError("generator 'trig' needs a spec")
    return trig_field(grid, spec)
