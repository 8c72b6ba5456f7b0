"""
jacobi-stability: Jacobi fields against geodesic deviation, and the growth
certificate along the pressure-constant shear geodesics.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from geodesics import DiffeoState, GeodesicFamily, SprayForm, integrate_geodesic_1d
from jacobi import (
    CONVEXITY_TOLERANCE,
    JacobiTrajectory,
    LagrangianBase1D,
    ShearFamilyBase,
    deviation_error,
    geodesic_deviation,
    integrate_jacobi,
    stability_report,
)
from spectral import Grid, TrigFieldSpec

from ..base_preset import BasePreset, PresetConfigurationError
from .geodesic1d import profile_samples

MIN_DEVIATION_ORDER = 0.9
TANGENT_TOLERANCE_1D = 1e-6
TANGENT_CONSTANCY_TOLERANCE = 1e-8

NORM_COLUMNS = ["case", "time", "h1_norm", "l2_norm", "second_difference"]


def observed_order(epsilons: list[float], errors: list[float]) -> float:
    """Least-squares slope of log(error) against log(eps)."""
    slope, _ = np.polyfit(np.log(epsilons), np.log(errors), 1)
    return float(slope)


def _norm_rows(case: str, trajectory: JacobiTrajectory) -> list[dict[str, Any]]:
    return [{"case": case, **row} for row in trajectory.rows()]


class JacobiStabilityPreset(BasePreset):
    name = "jacobi-stability"
    description = "Jacobi vs two-geodesic deviation order; convex growth along Example 2; tangent fields"
    invariants = ("deviation_order", "tangent_1d", "convexity", "growth_coefficient", "tangent_constancy")

    def _deviation_base_state(self) -> tuple[DiffeoState, np.ndarray]:
        params = self.config.jacobi
        grid = Grid(1, params.deviation_n_points, self.config.grid.alias_fraction)
        u0 = profile_samples(grid, params.deviation_profile)
        direction = profile_samples(grid, params.deviation_direction)
        return DiffeoState.identity(grid, u0, self.config.alpha), direction

    def _deviation(self, eps: float) -> float:
        params = self.config.jacobi
        state, direction = self._deviation_base_state()
        trace = geodesic_deviation(
            state, direction, eps, params.deviation_dt, params.deviation_t_end, SprayForm(self.config.geodesics.spray_form)
        )
        jacobi = integrate_jacobi(trace.base, np.zeros_like(direction), direction)
        return deviation_error(trace, jacobi)

    def _tangent_1d(self, form: SprayForm) -> float:
        """sup_t ‖Y(t) - η̇(t)‖₁ / ‖η̇(0)‖₁ for Y(0) = η̇(0), Ẏ(0) = η̈(0)."""
        params = self.config.jacobi
        state, _ = self._deviation_base_state()
        base = LagrangianBase1D(integrate_geodesic_1d(state, params.deviation_dt, params.deviation_t_end, form=form))
        y0, ydot0 = base.tangent_pair(base.t_start)
        jacobi = integrate_jacobi(base, y0, ydot0)
        scale = base.h1_norm(base.t_start, y0)
        if scale == 0.0:
            return 0.0
        return max(base.h1_norm(t, y - base.state_at(t).velocity) for t, y in zip(jacobi.times, jacobi.ys)) / scale

    def _shear_base(self, family: GeodesicFamily) -> ShearFamilyBase:
        grid = Grid(2, self.config.grid.n_points, self.config.grid.alias_fraction)
        return ShearFamilyBase(family, grid, t_end=self.config.t_end, dt=self.config.dt)

    def _perturbation(self, k: int) -> tuple[JacobiTrajectory, dict[str, Any]]:
        base = self._shear_base(GeodesicFamily.example2(f"sin({k})", self.config.alpha))
        direction = TrigFieldSpec.parse(f"cos(0,{k})[0]", dim=2, n_components=2).to_field(base.grid)
        trajectory = integrate_jacobi(base, 0.0 * direction, direction, cadence=self.config.cadence)
        report = stability_report(trajectory, base.sectional_along)
        return trajectory, report.to_dict()

    def _tangent(self, family: GeodesicFamily) -> JacobiTrajectory:
        base = self._shear_base(family)
        y0, ydot0 = base.tangent_pair(base.t_start)
        return integrate_jacobi(base, y0, ydot0, cadence=self.config.cadence)

    async def _run(self) -> None:
        cfg = self.config
        params = cfg.jacobi
        if cfg.grid.dim != 2:
            raise PresetConfigurationError("jacobi-stability needs grid.dim = 2 for the shear families")
        if cfg.alpha <= 0.0:
            raise PresetConfigurationError("the 1D deviation check needs alpha > 0 to stay smooth")

        epsilons = sorted(params.epsilons, reverse=True)
        errors = await self.fan_out(self._deviation, epsilons)
        self.writer.write_rows(
            "deviation", [{"eps": e, "error": err} for e, err in zip(epsilons, errors)], columns=["eps", "error"]
        )
        if min(errors) > 0.0:
            self.check("deviation_order", observed_order(epsilons, errors), MIN_DEVIATION_ORDER, mode="ge")
        else:
            self.check("deviation_order", math.inf, MIN_DEVIATION_ORDER, mode="ge", detail="exact agreement")

        (tangent_error,) = await self.fan_out(self._tangent_1d, [SprayForm(cfg.geodesics.spray_form)])
        self.check("tangent_1d", tangent_error, TANGENT_TOLERANCE_1D)

        k = params.wavenumber
        speed = max(cfg.geodesics.speeds, key=abs)
        families = {
            "example1": GeodesicFamily.example1(f"sin({k})", speed, cfg.alpha),
            "example2": GeodesicFamily.example2(f"sin({k})", cfg.alpha),
        }
        ((perturbed, report),) = await self.fan_out(self._perturbation, [k])
        tangents = await self.fan_out(self._tangent, list(families.values()))

        rows = _norm_rows("example2_cos_perturbation", perturbed)
        for label, trajectory in zip(families, tangents):
            rows.extend(_norm_rows(f"{label}_tangent", trajectory))
        self.writer.write_rows("jacobi_norms", rows, columns=NORM_COLUMNS)
        self.writer.write_rows("stability", [{"case": "example2_cos_perturbation", **report}])

        self.check(
            "convexity",
            report["min_second_difference"],
            -CONVEXITY_TOLERANCE * report["max_norm"],
            mode="ge",
        )
        self.check("growth_coefficient", report["growth_coefficient"], 0.0, mode="gt")
        if report["consistent"] is not None:
            self.check(
                "curvature_consistency",
                float(report["consistent"]),
                1.0,
                mode="ge",
                hard=False,
                detail=f"curvature nonpositive: {report['curvature_nonpositive']}",
            )

        for label, trajectory in zip(families, tangents):
            norms = np.asarray(trajectory.h1_trace)
            spread = float(np.max(norms) - np.min(norms)) / max(float(np.max(norms)), 1.0)
            self.check(f"tangent_constancy[{label}]", spread, TANGENT_CONSTANCY_TOLERANCE)

        self.logger.info("jacobi_stability_finished", epsilons=epsilons, errors=errors)
