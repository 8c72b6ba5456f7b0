"""
Exact symbolic trigonometric fields.

A ``TrigFieldSpec`` is a finite sum of terms ``A * sin(⟨k, x⟩)`` or
``A * cos(⟨k, x⟩)`` placed in one vector component. Specs have a compact text
form used in experiment files and output tables::

    1.0*sin(1,0)[0] + 0.5*cos(0,2)[1]

Each term occupies exactly two conjugate Fourier modes, so conversion to a
``SpectralField`` involves no quadrature.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .field import SpectralError, SpectralField
from .grid import Grid


class TrigSpecError(SpectralError, ValueError):
    """Raised for unparsable specs and terms outside the grid's band."""
    pass


class Phase(str, Enum):
    SIN = "sin"
    COS = "cos"


@dataclass(frozen=True, order=True)
class TrigTerm:
    """One term ``amplitude * phase(⟨wavevector, x⟩)`` in vector component ``component``."""

    component: int
    wavevector: tuple[int, ...]
    phase: Phase
    amplitude: float

    def canonical(self) -> "TrigTerm":
        """Equivalent term whose first nonzero wavevector entry is positive."""
        lead = next((k for k in self.wavevector if k != 0), 0)
        if lead >= 0:
            return self
        flipped = tuple(-k for k in self.wavevector)
        amplitude = -self.amplitude if self.phase is Phase.SIN else self.amplitude
        return TrigTerm(self.component, flipped, self.phase, amplitude)

    def magnitude_str(self) -> str:
        """The term with ``abs(amplitude)``, as written after a binary sign."""
        k = ",".join(str(v) for v in self.wavevector)
        return f"{abs(self.amplitude)!r}*{self.phase.value}({k})[{self.component}]"

    def __str__(self) -> str:
        return ("-" if self.amplitude < 0 else "") + self.magnitude_str()


_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    rf"(?:(?P<amp>{_NUMBER})\s*\*\s*)?"
    r"(?P<phase>sin|cos)\s*\(\s*(?P<k>[+-]?\d+(?:\s*,\s*[+-]?\d+)*)\s*\)"
    r"(?:\s*\[\s*(?P<comp>\d+)\s*\])?\s*"
)


@dataclass(frozen=True)
class TrigFieldSpec:
    """
    A trigonometric vector field on T^dim with ``n_components`` components.

    Attributes:
        terms: The terms, in the order given
        dim: Spatial dimension of every wavevector
        n_components: Number of vector components
    """

    terms: tuple[TrigTerm, ...]
    dim: int
    n_components: int

    def __post_init__(self) -> None:
        for term in self.terms:
            if len(term.wavevector) != self.dim:
                raise TrigSpecError(f"term {term} does not have dimension {self.dim}")
            if not 0 <= term.component < self.n_components:
                raise TrigSpecError(f"term {term} addresses a missing component")

    @classmethod
    def parse(
        cls, text: str, dim: Optional[int] = None, n_components: Optional[int] = None
    ) -> "TrigFieldSpec":
        """
        Parse the text form.

        Args:
            text: e.g. ``"sin(1,0)[0] - 0.5*cos(0,2)[1]"``; the component index
                defaults to 0 and the amplitude to 1
            dim: Spatial dimension; inferred from the wavevectors when omitted
            n_components: Component count; defaults to ``dim``

        Raises:
            TrigSpecError: If the text is not a valid spec
        """
        terms: list[TrigTerm] = []
        pos = 0
        stripped = text.strip()
        while pos < len(stripped):
            match = _TERM.match(stripped, pos)
            if match is None or match.end() == pos:
                raise TrigSpecError(f"cannot parse spec {text!r} at offset {pos}")
            if terms and match.group("sign") is None:
                raise TrigSpecError(f"missing '+' or '-' between terms in {text!r}")
            amplitude = float(match.group("amp")) if match.group("amp") else 1.0
            if match.group("sign") == "-":
                amplitude = -amplitude
            wavevector = tuple(int(v) for v in match.group("k").split(","))
            component = int(match.group("comp")) if match.group("comp") else 0
            terms.append(TrigTerm(component, wavevector, Phase(match.group("phase")), amplitude))
            pos = match.end()

        if dim is None:
            if not terms:
                raise TrigSpecError("an empty spec needs an explicit dim")
            dim = len(terms[0].wavevector)
        if n_components is None:
            n_components = max([dim] + [t.component + 1 for t in terms]) if dim > 1 else 1
        return cls(tuple(terms), dim, n_components)

    @classmethod
    def from_terms(cls, terms: Iterable[TrigTerm], dim: int, n_components: int) -> "TrigFieldSpec":
        return cls(tuple(terms), dim, n_components)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [str(self.terms[0])]
        for term in self.terms[1:]:
            sign = "-" if term.amplitude < 0 else "+"
            parts.append(f" {sign} {term.magnitude_str()}")
        return "".join(parts)

    def normalized(self) -> "TrigFieldSpec":
        """Canonical wavevector signs, duplicates merged, zero terms dropped, sorted."""
        merged: dict[tuple, float] = {}
        for term in self.terms:
            c = term.canonical()
            if c.phase is Phase.SIN and not any(c.wavevector):
                continue
            key = (c.component, c.wavevector, c.phase)
            merged[key] = merged.get(key, 0.0) + c.amplitude
        terms = sorted(
            TrigTerm(comp, k, phase, amp) for (comp, k, phase), amp in merged.items() if amp != 0.0
        )
        return TrigFieldSpec(tuple(terms), self.dim, self.n_components)

    def to_field(self, grid: Grid) -> SpectralField:
        """
        Exact Fourier coefficients of the spec on ``grid``.

        Raises:
            TrigSpecError: On a dimension mismatch or a term above the cutoff
        """
        if grid.dim != self.dim:
            raise TrigSpecError(f"spec has dim {self.dim}, grid has dim {grid.dim}")
        coeffs = np.zeros((self.n_components,) + grid.shape, dtype=complex)
        for term in self.terms:
            if not grid.in_band(term.wavevector):
                raise TrigSpecError(f"term {term} lies outside the band |k_i| <= {grid.cutoff}")
            plus = (term.component,) + grid.index_of(term.wavevector)
            minus = (term.component,) + grid.index_of(tuple(-k for k in term.wavevector))
            if not any(term.wavevector):
                if term.phase is Phase.COS:
                    coeffs[plus] += term.amplitude
                continue
            if term.phase is Phase.COS:
                coeffs[plus] += 0.5 * term.amplitude
                coeffs[minus] += 0.5 * term.amplitude
            else:
                coeffs[plus] += -0.5j * term.amplitude
                coeffs[minus] += 0.5j * term.amplitude
        return SpectralField(grid, coeffs)

    @classmethod
    def from_field(cls, field: SpectralField, rel_tol: float = 0.0) -> "TrigFieldSpec":
        """
        Read a normalized spec back from Fourier coefficients.

        Coefficients with magnitude at most ``rel_tol`` times the largest one
        are treated as zero.
        """
        grid = field.grid
        threshold = rel_tol * field.max_coefficient
        cutoff = grid.cutoff
        axis = range(-cutoff, cutoff + 1)
        lattice = np.array(np.meshgrid(*([axis] * grid.dim), indexing="ij")).reshape(grid.dim, -1).T
        terms: list[TrigTerm] = []
        for component in range(field.n_components):
            for k in lattice:
                wavevector = tuple(int(v) for v in k)
                lead = next((v for v in wavevector if v != 0), 0)
                if lead < 0:
                    continue
                c = field.coefficient(component, wavevector)
                if abs(c) <= threshold:
                    continue
                if lead == 0:
                    if c.real != 0.0:
                        terms.append(TrigTerm(component, wavevector, Phase.COS, c.real))
                    continue
                if c.real != 0.0 and abs(c.real) > threshold:
                    terms.append(TrigTerm(component, wavevector, Phase.COS, 2.0 * c.real))
                if c.imag != 0.0 and abs(c.imag) > threshold:
                    terms.append(TrigTerm(component, wavevector, Phase.SIN, -2.0 * c.imag))
        return cls(tuple(sorted(terms)), grid.dim, field.n_components)

    def derivative(self, axis: int) -> "TrigFieldSpec":
        """Exact partial derivative along ``axis``."""
        terms = []
        for term in self.terms:
            k = term.wavevector[axis]
            if k == 0:
                continue
            if term.phase is Phase.SIN:
                terms.append(TrigTerm(term.component, term.wavevector, Phase.COS, k * term.amplitude))
            else:
                terms.append(TrigTerm(term.component, term.wavevector, Phase.SIN, -k * term.amplitude))
        return TrigFieldSpec(tuple(terms), self.dim, self.n_components)

    def evaluate(self, points: Sequence[np.ndarray]) -> np.ndarray:
        """Values at arbitrary points; returns shape (n_components, *points[0].shape)."""
        if len(points) != self.dim:
            raise TrigSpecError(f"expected {self.dim} coordinate arrays, got {len(points)}")
        coords = [np.asarray(p, dtype=float) for p in points]
        out = np.zeros((self.n_components,) + coords[0].shape)
        for term in self.terms:
            theta = sum(k * x for k, x in zip(term.wavevector, coords))
            wave = np.sin(theta) if term.phase is Phase.SIN else np.cos(theta)
            out[term.component] += term.amplitude * wave
        return out

    def embed(self, dim: int, axis: int, component: int, n_components: int) -> "TrigFieldSpec":
        """
        Lift a scalar 1D spec h(s) to the field h(x^axis) e_component on T^dim.

        Used to turn shear profiles into 2D vector fields.
        """
        if self.dim != 1 or self.n_components != 1:
            raise TrigSpecError("only scalar 1D specs can be embedded")
        terms = []
        for term in self.terms:
            k = [0] * dim
            k[axis] = term.wavevector[0]
            terms.append(TrigTerm(component, tuple(k), term.phase, term.amplitude))
        return TrigFieldSpec(tuple(terms), dim, n_components)

    @property
    def max_wavenumber(self) -> int:
        return max((abs(k) for t in self.terms for k in t.wavevector), default=0)
