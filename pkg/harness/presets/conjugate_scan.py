"""
conjugate-scan: no conjugate points along the Example 2 geodesic; the scanner
itself is validated on a great circle whose conjugate time is known.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from geodesics import GeodesicFamily
from jacobi import ConjugateScanResult, GreatCircleBase, ShearFamilyBase, conjugate_point_scan
from spectral import Grid, TrigFieldSpec

from ..base_preset import BasePreset, PresetConfigurationError

SURROGATE_RELATIVE_TOLERANCE = 0.01
# the surrogate window covers exactly one conjugate time
SURROGATE_WINDOW_FACTOR = 1.5

SCAN_COLUMNS = ["base", "direction_index", "label", "n_candidates", "first_candidate", "max_norm"]


def _scan_rows(base: str, results: list[ConjugateScanResult]) -> list[dict[str, Any]]:
    return [
        {
            "base": base,
            "direction_index": r.direction_index,
            "label": r.label,
            "n_candidates": len(r.candidates),
            "first_candidate": r.candidates[0] if r.candidates else None,
            "max_norm": r.max_norm,
        }
        for r in results
    ]


class ConjugateScanPreset(BasePreset):
    name = "conjugate-scan"
    description = "Conjugate-point scan along Example 2 and along a great-circle surrogate"
    invariants = ("no_conjugate_points", "surrogate_conjugate_time")

    def _scan_direction(self, label: str) -> ConjugateScanResult:
        cfg = self.config
        params = cfg.jacobi
        grid = Grid(2, cfg.grid.n_points, cfg.grid.alias_fraction)
        family = GeodesicFamily.example2(f"sin({params.wavenumber})", cfg.alpha)
        base = ShearFamilyBase(family, grid, t_end=params.scan_window, dt=cfg.dt)
        direction = TrigFieldSpec.parse(label, dim=2, n_components=2).to_field(grid)
        results = conjugate_point_scan(base, [direction], [label])
        return results[0] if results else ConjugateScanResult(0, label)

    def _surrogate(self, curvature: float) -> tuple[float, ConjugateScanResult]:
        window = SURROGATE_WINDOW_FACTOR * math.pi / math.sqrt(curvature)
        base = GreatCircleBase(curvature=curvature, t_end=window, dt=self.config.dt)
        (result,) = conjugate_point_scan(base, [np.array([1.0, 0.0])], ["normal"])
        return base.conjugate_time, result

    async def _run(self) -> None:
        cfg = self.config
        params = cfg.jacobi
        if cfg.grid.dim != 2:
            raise PresetConfigurationError("conjugate-scan needs grid.dim = 2")
        if not params.scan_directions:
            raise PresetConfigurationError("conjugate-scan needs at least one scan direction")

        results = await self.fan_out(self._scan_direction, params.scan_directions)
        ((expected, surrogate),) = await self.fan_out(self._surrogate, [params.surrogate_curvature])

        rows = _scan_rows("example2", results) + _scan_rows("great_circle", [surrogate])
        self.writer.write_rows("conjugate_scan", rows, columns=SCAN_COLUMNS)

        found = sum(len(r.candidates) for r in results)
        self.check(
            "no_conjugate_points",
            float(found),
            0.0,
            detail=f"window t <= {params.scan_window:g}, {len(results)} directions",
        )

        if len(surrogate.candidates) == 1:
            error = abs(surrogate.candidates[0] - expected) / expected
        else:
            error = float("inf")
        self.check(
            "surrogate_conjugate_time",
            error,
            SURROGATE_RELATIVE_TOLERANCE,
            detail=f"candidates {surrogate.candidates}, expected {expected:.6g}",
        )
