"""
verify-geodesics: residuals of the pressure-constant shear families on T².
"""

from __future__ import annotations

import math
from typing import Any

from flows import taylor_green_field
from geodesics import FamilyKind, GeodesicFamily, geodesic_residual_2d, is_volume_preserving
from spectral import Grid, h1_norm

from ..base_preset import BasePreset, PresetConfigurationError

RESIDUAL_TOLERANCE = 1e-10
CONTROL_RELATIVE_TOLERANCE = 1e-10


class VerifyGeodesicsPreset(BasePreset):
    name = "verify-geodesics"
    description = "Examples 1-2 solve the geodesic equation; e^t Taylor-Green does not"
    invariants = ("residual", "control_residual", "volume_preserving")

    def _families(self) -> list[GeodesicFamily]:
        cfg = self.config
        families = []
        for k in cfg.geodesics.wavenumbers:
            profile = f"sin({k})"
            for c in cfg.geodesics.speeds:
                families.append(GeodesicFamily.example1(profile, c, cfg.alpha))
            families.append(GeodesicFamily.example2(profile, cfg.alpha))
        return families

    def _evaluate(self, item: tuple[GeodesicFamily, float]) -> dict[str, Any]:
        family, t = item
        grid = Grid(2, self.config.grid.n_points, self.config.grid.alias_fraction)
        return {
            "family": family.kind.value,
            "profile": str(family.profile) if family.profile is not None else "taylor_green",
            "speed": family.speed,
            "time": t,
            "residual": geodesic_residual_2d(family, t, grid),
        }

    async def _run(self) -> None:
        cfg = self.config
        if cfg.grid.dim != 2:
            raise PresetConfigurationError("verify-geodesics needs grid.dim = 2")
        grid = Grid(2, cfg.grid.n_points, cfg.grid.alias_fraction)
        times = sorted({0.0, 0.5 * cfg.t_end, cfg.t_end})
        control = GeodesicFamily.control(cfg.alpha)

        cases = [(family, t) for family in self._families() for t in times]
        cases += [(control, t) for t in times]
        rows = await self.fan_out(self._evaluate, cases)
        self.writer.write_rows("residuals", rows, columns=["family", "profile", "speed", "time", "residual"])

        for kind in (FamilyKind.EXAMPLE1, FamilyKind.EXAMPLE2):
            worst = max(r["residual"] for r in rows if r["family"] == kind.value)
            self.check(f"residual[{kind.value}]", worst, RESIDUAL_TOLERANCE)
            self.check(f"volume_preserving[{kind.value}]", float(is_volume_preserving(kind)), 1.0, mode="ge")

        tg = taylor_green_field(grid)
        worst_relative = 0.0
        for row in rows:
            if row["family"] != FamilyKind.CONTROL.value:
                continue
            expected = math.exp(row["time"]) * h1_norm(tg, cfg.alpha)
            worst_relative = max(worst_relative, abs(row["residual"] - expected) / expected)
        self.check("control_residual", worst_relative, CONTROL_RELATIVE_TOLERANCE)
        self.check(
            "control_nonzero",
            min(r["residual"] for r in rows if r["family"] == FamilyKind.CONTROL.value),
            0.0,
            mode="gt",
        )
