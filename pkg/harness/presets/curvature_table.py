"""
curvature-table: sectional curvature signs of the H¹ metric at the identity.

For each wavenumber k the table holds the four sin/cos direction pairs

    (sin kx¹, 0) with (0, cos kx²)    zero
    (cos kx¹, 0) with (0, sin kx²)    zero
    (sin kx¹, 0) with (cos kx¹, 0)    negative
    (cos kx¹, 0) with (sin kx¹, 0)    negative

at every configured resolution, together with the refinement check against
twice that resolution. The preset also checks that R vanishes on plane-wave
triples and that the coordinate expansion matches the operator assembly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from curvature import (
    AVariant,
    CurvatureReport,
    SignClass,
    compare_variants,
    r1_coordinate,
    r1_operator,
    sectional,
    sectional_dmu,
    single_exponential_triple,
)
from spectral import Grid, TrigFieldSpec, h1_norm

from ..base_preset import BasePreset, PresetConfigurationError

REFINEMENT_TOLERANCE = 1e-8
VANISHING_TOLERANCE = 1e-10
COORDINATE_TOLERANCE = 1e-10
# numerators below this fraction of the Gram determinant count as zero when
# comparing resolutions
REFINEMENT_FLOOR = 1e-9

REPORT_COLUMNS = [
    "x_spec",
    "y_spec",
    "numerator",
    "gram",
    "sectional",
    "sign_class",
    "variant",
    "n_points",
    "alpha",
    "subgroup",
    "gauss_correction",
    "divergence_free",
]


@dataclass(frozen=True)
class DirectionPair:
    x_spec: str
    y_spec: str
    expected: SignClass


def direction_pairs(k: int) -> list[DirectionPair]:
    """The four published direction pairs for wavenumber k."""
    return [
        DirectionPair(f"sin({k},0)[0]", f"cos(0,{k})[1]", SignClass.ZERO),
        DirectionPair(f"cos({k},0)[0]", f"sin(0,{k})[1]", SignClass.ZERO),
        DirectionPair(f"sin({k},0)[0]", f"cos({k},0)[0]", SignClass.NEGATIVE),
        DirectionPair(f"cos({k},0)[0]", f"sin({k},0)[0]", SignClass.NEGATIVE),
    ]


def mixed_triple_specs(k: int) -> tuple[str, str, str]:
    """A triple with several wavevectors, so no term of R vanishes by symmetry."""
    return (
        f"sin({k},0)[0] + 0.5*cos(0,{k})[1]",
        f"cos({k},0)[0] + cos(0,{k})[1]",
        f"sin({k},{k})[1] + 0.25*cos(1,{k})[0]",
    )


@dataclass
class _TableCase:
    pair: DirectionPair
    n_points: int
    report: CurvatureReport
    refined: CurvatureReport


class CurvatureTablePreset(BasePreset):
    name = "curvature-table"
    description = "Sign table of ⟨R(X,Y)Y,X⟩₁ for sin/cos shears, plane-wave vanishing, coordinate check"
    invariants = ("sign_class", "refinement", "plane_wave_vanishing", "coordinate_agreement", "subgroup_sign")

    @property
    def _variant(self) -> AVariant:
        return AVariant(self.config.a_variant)

    def _table_case(self, item: tuple[DirectionPair, int]) -> _TableCase:
        pair, n = item
        alpha = self.config.alpha
        report = sectional(pair.x_spec, pair.y_spec, self._variant, n, alpha)
        refined = sectional(pair.x_spec, pair.y_spec, self._variant, 2 * n, alpha)
        return _TableCase(pair, n, report, refined)

    def _vanishing(self, seed: int) -> dict[str, Any]:
        grid = Grid(2, max(self.config.curvature.resolutions))
        alpha = self.config.alpha
        x, y, z = single_exponential_triple(grid, seed)
        value = h1_norm(r1_operator(x, y, z, AVariant.REMARK, alpha), alpha)
        scale = h1_norm(x, alpha) * h1_norm(y, alpha) * h1_norm(z, alpha)
        return {"seed": seed, "r_norm": value, "relative": value / scale}

    def _coordinate(self, item: tuple[int, float]) -> dict[str, Any]:
        k, sign = item
        grid = Grid(2, max(self.config.curvature.resolutions))
        alpha = self.config.alpha
        x, y, z = (TrigFieldSpec.parse(s, dim=2, n_components=2).to_field(grid) for s in mixed_triple_specs(k))
        operator = r1_operator(x, y, z, AVariant.UNSYMMETRIZED, alpha, sign)
        coordinate = r1_coordinate(x, y, z, alpha, sign)
        scale = h1_norm(x, alpha) * h1_norm(y, alpha) * h1_norm(z, alpha)
        return {
            "wavenumber": k,
            "divergence_sign": sign,
            "operator_norm": h1_norm(operator, alpha),
            "relative_difference": h1_norm(operator - coordinate, alpha) / scale,
        }

    def _compare(self, pair: DirectionPair) -> list[dict[str, Any]]:
        n = min(self.config.curvature.resolutions)
        return [r.to_dict() for r in compare_variants(pair.x_spec, pair.y_spec, n, self.config.alpha).values()]

    def _subgroup(self, pair: DirectionPair) -> CurvatureReport:
        n = min(self.config.curvature.resolutions)
        return sectional_dmu(pair.x_spec, pair.y_spec, self._variant, n, self.config.alpha)

    async def _run(self) -> None:
        cfg = self.config
        params = cfg.curvature
        if cfg.grid.dim != 2:
            raise PresetConfigurationError("curvature-table needs grid.dim = 2")
        too_high = [k for k in params.wavenumbers for n in params.resolutions if 3 * k > Grid(2, n).cutoff]
        if too_high:
            raise PresetConfigurationError(
                f"wavenumbers {sorted(set(too_high))} are not resolved at resolutions {params.resolutions}"
            )
        published = self._variant is AVariant.REMARK
        pairs = [pair for k in params.wavenumbers for pair in direction_pairs(k)]

        cases = await self.fan_out(self._table_case, [(p, n) for p in pairs for n in params.resolutions])
        self.writer.write_rows("curvature_table", [c.report.to_dict() for c in cases], columns=REPORT_COLUMNS)

        worst_refinement = 0.0
        for case in cases:
            report = case.report
            self.check(
                f"sign_class[{report.x_spec}|{report.y_spec}|N={case.n_points}]",
                float(report.sign_class is case.pair.expected),
                1.0,
                mode="ge",
                hard=published,
                detail=f"{report.sign_class.value}, expected {case.pair.expected.value}",
            )
            denominator = max(abs(case.refined.numerator), REFINEMENT_FLOOR * report.gram)
            if denominator > 0.0:
                worst_refinement = max(
                    worst_refinement, abs(report.numerator - case.refined.numerator) / denominator
                )
        self.check("refinement", worst_refinement, REFINEMENT_TOLERANCE)

        seeds = [params.seed + i for i in range(params.random_triples)]
        if seeds:
            self.seeds["plane_wave_triples"] = params.seed
            vanishing = await self.fan_out(self._vanishing, seeds)
            self.writer.write_rows("plane_wave_triples", vanishing, columns=["seed", "r_norm", "relative"])
            self.check("plane_wave_vanishing", max(r["relative"] for r in vanishing), VANISHING_TOLERANCE)

        coordinate = await self.fan_out(
            self._coordinate, [(k, sign) for k in params.wavenumbers for sign in (1.0, -1.0)]
        )
        self.writer.write_rows(
            "coordinate_check",
            coordinate,
            columns=["wavenumber", "divergence_sign", "operator_norm", "relative_difference"],
        )
        self.check(
            "coordinate_agreement", max(r["relative_difference"] for r in coordinate), COORDINATE_TOLERANCE
        )

        compared = await self.fan_out(self._compare, pairs)
        self.writer.write_rows("variant_comparison", [row for rows in compared for row in rows], columns=REPORT_COLUMNS)

        subgroup = await self.fan_out(self._subgroup, pairs)
        self.writer.write_rows("subgroup_table", [r.to_dict() for r in subgroup], columns=REPORT_COLUMNS)
        for pair, report in zip(pairs, subgroup):
            if pair.expected is SignClass.NEGATIVE:
                self.check(
                    f"subgroup_sign[{report.x_spec}|{report.y_spec}]",
                    float(report.sign_class is SignClass.NEGATIVE),
                    1.0,
                    mode="ge",
                    hard=published,
                    detail=f"gauss correction {report.gauss_correction:.6g}",
                )

        self.logger.info(
            "curvature_table_finished",
            pairs=len(pairs),
            resolutions=params.resolutions,
            variant=self._variant.value,
        )

