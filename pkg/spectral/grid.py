"""
Periodic grids on the flat torus T^dim = [0, 2π)^dim.

A grid fixes the resolution, the integer wavenumber lattice seen by the FFT
and the dealiasing cutoff. Grids are immutable values; the derived arrays are
computed once and cached on the instance.
"""

from dataclasses import dataclass
from functools import cached_property
from math import floor, pi

import numpy as np
from scipy import fft as sfft

DOMAIN_LENGTH = 2.0 * pi


@dataclass(frozen=True)
class Grid:
    """
    Uniform periodic grid with ``n_points`` nodes per axis.

    Attributes:
        dim: Number of spatial dimensions (1 or 2)
        n_points: Nodes per axis, even and at least 8
        alias_fraction: Fraction of the Nyquist band that survives dealiasing
    """

    dim: int
    n_points: int
    alias_fraction: float = 2.0 / 3.0

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if self.n_points < 8 or self.n_points % 2:
            raise ValueError(f"n_points must be even and >= 8, got {self.n_points}")
        if not 0.0 < self.alias_fraction <= 1.0:
            raise ValueError(f"alias_fraction must lie in (0, 1], got {self.alias_fraction}")

    @property
    def domain_length(self) -> float:
        return DOMAIN_LENGTH

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_points,) * self.dim

    @property
    def spacing(self) -> float:
        return DOMAIN_LENGTH / self.n_points

    @property
    def cutoff(self) -> int:
        """Largest |k_i| kept by dealiasing; the Nyquist mode is always dropped."""
        return min(floor(self.alias_fraction * self.n_points / 2), self.n_points // 2 - 1)

    @cached_property
    def axis_wavenumbers(self) -> np.ndarray:
        """Integer wavenumbers in FFT order: 0, 1, ..., N/2-1, -N/2, ..., -1."""
        return sfft.fftfreq(self.n_points, d=1.0 / self.n_points)

    @cached_property
    def wavenumbers(self) -> tuple[np.ndarray, ...]:
        """Per-axis wavenumber arrays broadcast to the full grid shape."""
        k = self.axis_wavenumbers
        return tuple(np.meshgrid(*([k] * self.dim), indexing="ij"))

    @cached_property
    def k_squared(self) -> np.ndarray:
        return sum(k * k for k in self.wavenumbers)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        mask = np.ones(self.shape, dtype=bool)
        for k in self.wavenumbers:
            mask &= np.abs(k) <= self.cutoff
        return mask

    @cached_property
    def nodes(self) -> tuple[np.ndarray, ...]:
        """Physical node coordinates x_j = 2πj/N, broadcast to the grid shape."""
        x = self.spacing * np.arange(self.n_points)
        return tuple(np.meshgrid(*([x] * self.dim), indexing="ij"))

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    @property
    def volume(self) -> float:
        return DOMAIN_LENGTH ** self.dim

    def index_of(self, wavevector: tuple[int, ...]) -> tuple[int, ...]:
        """Array index of an integer wavevector in FFT ordering."""
        if len(wavevector) != self.dim:
            raise ValueError(f"wavevector {wavevector} does not match dim {self.dim}")
        return tuple(int(k) % self.n_points for k in wavevector)

    def in_band(self, wavevector: tuple[int, ...]) -> bool:
        return all(abs(int(k)) <= self.cutoff for k in wavevector)
