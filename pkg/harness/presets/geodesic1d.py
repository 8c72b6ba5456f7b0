"""
geodesic1d: H¹ geodesics on Diff(S¹) against the α = 0 shock oracle.
"""

from __future__ import annotations

import math

import numpy as np

from flows.initial_data import random_band_limited_scalar
from geodesics import (
    DiffeoState,
    GeodesicTrajectory,
    SprayForm,
    camassa_holm_residual,
    characteristic_breakdown_time,
    integrate_geodesic_1d,
)
from spectral import Grid, TrigFieldSpec, to_physical

from ..base_preset import BasePreset, PresetConfigurationError

BREAKDOWN_RELATIVE_TOLERANCE = 0.1
ENERGY_DRIFT_TOLERANCE = 1e-6
CH_RESIDUAL_TOLERANCE = 1e-4
DEFAULT_PROFILE = "sin(1)"


def profile_samples(grid: Grid, spec: str) -> np.ndarray:
    """Samples of a scalar 1D trigonometric spec at the grid nodes."""
    parsed = TrigFieldSpec.parse(spec, dim=1, n_components=1)
    return parsed.evaluate([grid.nodes[0]])[0]


class Geodesic1DPreset(BasePreset):
    name = "geodesic1d"
    description = "1D spray: α=0 breakdown time, α>0 survival, energy and Camassa-Holm residual"
    invariants = ("breakdown_time", "survival", "energy_drift", "ch_residual")

    def _initial_profile(self, grid: Grid) -> np.ndarray:
        data = self.config.initial_data
        if data.generator == "random":
            self.seeds["initial_data"] = data.seed
            samples = to_physical(random_band_limited_scalar(grid, data.seed, data.max_wavenumber))[0]
            rms = math.sqrt(float(np.mean(samples ** 2)))
            return samples * (data.amplitude / rms) if rms > 0 else samples
        if data.generator == "trig":
            return profile_samples(grid, data.spec or DEFAULT_PROFILE)
        if data.generator == "zero":
            return np.zeros(grid.shape)
        return profile_samples(grid, DEFAULT_PROFILE)

    def _integrate(self, alpha: float) -> GeodesicTrajectory:
        cfg = self.config
        grid = Grid(1, cfg.grid.n_points, cfg.grid.alias_fraction)
        state = DiffeoState.identity(grid, self._initial_profile(grid), alpha)
        return integrate_geodesic_1d(
            state, cfg.dt, cfg.t_end, cadence=cfg.cadence, form=SprayForm(cfg.geodesics.spray_form)
        )

    async def _run(self) -> None:
        cfg = self.config
        if cfg.grid.dim != 1:
            raise PresetConfigurationError("geodesic1d needs grid.dim = 1")
        if cfg.alpha <= 0.0:
            raise PresetConfigurationError("geodesic1d compares alpha > 0 against alpha = 0; set alpha > 0")

        grid = Grid(1, cfg.grid.n_points, cfg.grid.alias_fraction)
        u0 = self._initial_profile(grid)
        oracle = characteristic_breakdown_time(grid, u0)

        shock, regular = await self.fan_out(self._integrate, [0.0, cfg.alpha])

        rows = []
        for alpha, traj in ((0.0, shock), (cfg.alpha, regular)):
            rows.extend({"alpha": alpha, **row.to_dict()} for row in traj.rows)
        self.writer.write_rows(
            "geodesic", rows, columns=["alpha", "time", "min_jacobian", "h1_energy", "max_velocity"]
        )

        if math.isfinite(oracle) and oracle <= cfg.t_end:
            detected = shock.breakdown_time if shock.breakdown_time is not None else math.inf
            self.check(
                "breakdown_time",
                abs(detected - oracle) / oracle,
                BREAKDOWN_RELATIVE_TOLERANCE,
                detail=f"detected {detected:.6g}, characteristic {oracle:.6g}",
            )
            self.check(
                "survival",
                regular.final.min_jacobian() if regular.breakdown_time is None else 0.0,
                0.0,
                mode="gt",
                detail=f"alpha={cfg.alpha:g} reached t={regular.final.time:.6g}",
            )
        else:
            self.logger.info("no_characteristic_crossing", oracle=oracle, t_end=cfg.t_end)

        self.check("energy_drift", regular.energy_drift(), ENERGY_DRIFT_TOLERANCE)

        if cfg.geodesics.check_ch_residual:
            residual = await self.fan_out(camassa_holm_residual, [regular])
            form = SprayForm(cfg.geodesics.spray_form)
            self.check(
                "ch_residual",
                residual[0],
                CH_RESIDUAL_TOLERANCE,
                hard=form is SprayForm.CAMASSA_HOLM,
                detail=f"spray form {form.value}",
            )

        if cfg.emit_fields:
            for label, traj in (("alpha0", shock), (f"alpha{cfg.alpha:g}", regular)):
                final = traj.final
                self.writer.write_field(f"eta_{label}", final.positions())
                self.writer.write_field(f"eta_dot_{label}", final.velocity)
