"""
euler2d: integrate the averaged-Euler equations and check conservation.
"""

from __future__ import annotations

from dataclasses import dataclass

from flows import FlowRun, FlowState, integrate_flow, make_initial_velocity
from spectral import Grid, SpectralField, to_physical

from ..base_preset import BasePreset, PresetConfigurationError

ENERGY_DRIFT_TOLERANCE = 1e-8
DIVERGENCE_TOLERANCE = 1e-10
STEADY_TOLERANCE = 1e-8
STEADY_GENERATORS = ("zero", "shear", "taylor_green")


@dataclass
class _AlphaRun:
    alpha: float
    initial: SpectralField
    run: FlowRun


class Euler2DPreset(BasePreset):
    name = "euler2d"
    description = "Averaged-Euler flow on T²: H¹ energy, divergence and steady eigenfunctions"
    invariants = ("energy_drift", "max_divergence", "steady_state")

    def _initial_velocity(self, grid: Grid) -> SpectralField:
        data = self.config.initial_data
        if data.generator == "random":
            self.seeds["initial_data"] = data.seed
        return make_initial_velocity(
            data.generator,
            grid,
            spec=data.spec,
            seed=data.seed,
            amplitude=data.amplitude,
            max_wavenumber=data.max_wavenumber,
            wavenumber=data.wavenumber,
        )

    def _integrate(self, alpha: float) -> _AlphaRun:
        cfg = self.config
        grid = Grid(2, cfg.grid.n_points, cfg.grid.alias_fraction)
        u0 = self._initial_velocity(grid)
        run = integrate_flow(FlowState(u0, alpha, 0.0), cfg.dt, cfg.t_end, cfg.cadence, cfg.cfl_number)
        return _AlphaRun(alpha, u0, run)

    async def _run(self) -> None:
        cfg = self.config
        if cfg.grid.dim != 2:
            raise PresetConfigurationError("euler2d needs grid.dim = 2")

        runs = await self.fan_out(self._integrate, cfg.run_alphas())

        rows = []
        for item in runs:
            for row in item.run.rows:
                rows.append({"alpha": item.alpha, **row.to_dict()})
        self.writer.write_rows(
            "energy",
            rows,
            columns=["alpha", "time", "h1_energy", "l2_energy", "max_divergence", "max_velocity"],
        )

        for item in runs:
            tag = f"alpha={item.alpha:g}"
            self.check(f"energy_drift[{tag}]", item.run.energy_drift(), ENERGY_DRIFT_TOLERANCE)
            self.check(
                f"max_divergence[{tag}]",
                max(r.max_divergence for r in item.run.rows),
                DIVERGENCE_TOLERANCE,
            )
            if cfg.initial_data.generator in STEADY_GENERATORS:
                scale = max(item.initial.max_coefficient, 1.0)
                change = (item.run.final.velocity - item.initial).max_coefficient / scale
                self.check(f"steady_state[{tag}]", change, STEADY_TOLERANCE)
            if cfg.emit_fields:
                self.writer.write_field(f"velocity_alpha{item.alpha:g}_final", to_physical(item.run.final.velocity))
                self.writer.write_field(f"velocity_alpha{item.alpha:g}_initial", to_physical(item.initial))

        self.logger.info("euler2d_finished", alphas=[r.alpha for r in runs], final_time=runs[0].run.final.time)


__all__ = ["Euler2DPreset"]
