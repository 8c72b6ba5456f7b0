"""
Fourier-space vector fields on a periodic grid.

``SpectralField`` is the value type every Eulerian computation passes around:
an immutable array of complex Fourier coefficients, one slab per vector
component, normalized so that the constant field 1 has coefficient 1 at k = 0.
Fields are real-valued (Hermitian coefficients) and band-limited to the grid's
dealiasing cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np
from scipy import fft as sfft

from config.settings import get_settings
from .grid import Grid


class SpectralError(Exception):
    """Base exception for spectral-core errors."""
    pass


class InvalidFieldError(SpectralError, ValueError):
    """Raised for malformed input: wrong shape, non-finite samples, bad axis."""
    pass


class GridMismatchError(SpectralError, ValueError):
    """Raised when two operands live on different grids."""
    pass


class ConsistencyError(SpectralError):
    """Raised when an internal consistency check fails (e.g. imaginary residue)."""
    pass


Scalar = Union[int, float, np.floating]


@dataclass(frozen=True, eq=False)
class SpectralField:
    """
    A real vector (or scalar) field stored by its Fourier coefficients.

    Attributes:
        grid: Grid the field lives on
        coefficients: Complex array of shape (n_components, *grid.shape) in
            FFT ordering; read-only
    """

    grid: Grid
    coefficients: np.ndarray

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        coeffs = np.array(self.coefficients, dtype=complex)
        if coeffs.ndim != self.grid.dim + 1 or coeffs.shape[1:] != self.grid.shape:
            raise InvalidFieldError(
                f"coefficients of shape {coeffs.shape} do not fit grid shape {self.grid.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise InvalidFieldError("coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zeros(cls, grid: Grid, n_components: int | None = None) -> "SpectralField":
        n = grid.dim if n_components is None else n_components
        return cls(grid, np.zeros((n,) + grid.shape, dtype=complex))

    @property
    def n_components(self) -> int:
        return self.coefficients.shape[0]

    @property
    def max_coefficient(self) -> float:
        return float(np.max(np.abs(self.coefficients))) if self.coefficients.size else 0.0

    def coefficient(self, component: int, wavevector: tuple[int, ...]) -> complex:
        """Coefficient of ``component`` at integer wavevector ``wavevector``."""
        return complex(self.coefficients[(component,) + self.grid.index_of(wavevector)])

    def divergence_symbol(self) -> np.ndarray:
        """Σ_i k_i û_i(k) on the wavenumber lattice (requires n_components == dim)."""
        if self.n_components != self.grid.dim:
            raise InvalidFieldError("divergence needs a vector field with dim components")
        return sum(k * self.coefficients[i] for i, k in enumerate(self.grid.wavenumbers))

    @cached_property
    def max_divergence(self) -> float:
        """max_k |k·û(k)| relative to the largest coefficient (0 for the zero field)."""
        scale = self.max_coefficient
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(self.divergence_symbol()))) / scale

    @cached_property
    def is_divergence_free(self) -> bool:
        if self.n_components != self.grid.dim:
            return False
        return self.max_divergence <= get_settings().solver.divergence_tolerance

    def _check_operand(self, other: "SpectralField") -> None:
        if not isinstance(other, SpectralField):
            raise TypeError(f"expected SpectralField, got {type(other).__name__}")
        if other.grid != self.grid:
            raise GridMismatchError(f"grid {other.grid} does not match {self.grid}")
        if other.n_components != self.n_components:
            raise InvalidFieldError(
                f"component count {other.n_components} does not match {self.n_components}"
            )

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self._check_operand(other)
        return SpectralField(self.grid, self.coefficients + other.coefficients)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self._check_operand(other)
        return SpectralField(self.grid, self.coefficients - other.coefficients)

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coefficients)

    def __mul__(self, scalar: Scalar) -> "SpectralField":
        if not np.isscalar(scalar) or isinstance(scalar, complex):
            return NotImplemented
        return SpectralField(self.grid, self.coefficients * float(scalar))

    __rmul__ = __mul__

    def component(self, index: int) -> "SpectralField":
        """The scalar field holding one component."""
        return SpectralField(self.grid, self.coefficients[index : index + 1])

    def __repr__(self) -> str:
        return (
            f"SpectralField(dim={self.grid.dim}, n_points={self.grid.n_points}, "
            f"n_components={self.n_components}, max_coefficient={self.max_coefficient:.3e})"
        )


def _as_component_array(grid: Grid, samples: np.ndarray) -> np.ndarray:
    arr = np.asarray(samples, dtype=float)
    if arr.shape == grid.shape:
        arr = arr[np.newaxis]
    if arr.ndim != grid.dim + 1 or arr.shape[1:] != grid.shape:
        raise InvalidFieldError(
            f"samples of shape {np.shape(samples)} do not fit grid shape {grid.shape}"
        )
    return arr


def to_spectral(grid: Grid, samples: np.ndarray) -> SpectralField:
    """
    Forward transform of real samples, normalized and dealiased.

    Args:
        grid: Grid the samples live on
        samples: Array of shape ``grid.shape`` (scalar) or
            ``(n_components, *grid.shape)``

    Returns:
        SpectralField with modes above the dealiasing cutoff set to zero

    Raises:
        InvalidFieldError: If the samples are non-finite or mis-shaped
    """
    arr = _as_component_array(grid, samples)
    if not np.all(np.isfinite(arr)):
        raise InvalidFieldError("samples must be finite")
    axes = tuple(range(1, grid.dim + 1))
    coeffs = sfft.fftn(arr, axes=axes) / grid.n_points ** grid.dim
    coeffs *= grid.dealias_mask
    return SpectralField(grid, coeffs)


def to_physical(field: SpectralField) -> np.ndarray:
    """
    Inverse transform to real samples of shape (n_components, *grid.shape).

    Raises:
        ConsistencyError: If the imaginary residue exceeds the configured
            tolerance (the coefficients were not Hermitian)
    """
    grid = field.grid
    axes = tuple(range(1, grid.dim + 1))
    values = sfft.ifftn(field.coefficients * grid.n_points ** grid.dim, axes=axes)
    residue = float(np.max(np.abs(values.imag))) if values.size else 0.0
    scale = max(1.0, float(np.max(np.abs(values.real))) if values.size else 0.0)
    if residue > get_settings().solver.imaginary_tolerance * scale:
        raise ConsistencyError(f"imaginary residue {residue:.3e} exceeds tolerance")
    return np.ascontiguousarray(values.real)
