"""
Unit tests for Jacobi fields: bases, the co-integrator, stability reports and
the conjugate-point scan.
"""

import math

import numpy as np
import pytest

from geodesics import DiffeoState, GeodesicFamily, integrate_geodesic_1d, spray_1d
from jacobi import (
    ConjugateScanResult,
    GreatCircleBase,
    JacobiError,
    JacobiTrajectory,
    JacobiWindowError,
    LagrangianBase1D,
    ShearFamilyBase,
    conjugate_point_scan,
    deviation_error,
    effective_eps,
    find_conjugate_times,
    geodesic_deviation,
    integrate_jacobi,
    linearized_spray,
    stability_report,
)
from spectral import Grid


@pytest.fixture
def example2_base(grid16) -> ShearFamilyBase:
    return ShearFamilyBase(GeodesicFamily.example2("sin(1)"), grid16, t_end=1.0, dt=0.1)


@pytest.fixture
def sine_state() -> DiffeoState:
    grid = Grid(1, 32)
    return DiffeoState.identity(grid, np.sin(grid.nodes[0]), alpha=1.0)


class TestGreatCircle:
    def test_normal_field_is_a_sine(self):
        base = GreatCircleBase(curvature=1.0, t_end=2.0, dt=1e-2)
        trajectory = integrate_jacobi(base, np.zeros(2), np.array([1.0, 0.0]))
        values = np.array([y[0] for y in trajectory.ys])
        np.testing.assert_allclose(values, np.sin(trajectory.times), atol=1e-8)

    @pytest.mark.parametrize("curvature", [1.0, 4.0])
    def test_scan_finds_the_conjugate_time(self, curvature):
        base = GreatCircleBase(curvature=curvature, t_end=1.5 * math.pi / math.sqrt(curvature), dt=1e-2)
        (result,) = conjugate_point_scan(base, [np.array([1.0, 0.0])], ["normal"])
        assert len(result.candidates) == 1
        assert result.candidates[0] == pytest.approx(base.conjugate_time, rel=1e-3)
        assert result.label == "normal"

    def test_tangent_direction_has_no_conjugate_point(self):
        base = GreatCircleBase(t_end=5.0, dt=1e-2)
        (result,) = conjugate_point_scan(base, [np.array([0.0, 1.0])])
        assert result.candidates == []
        assert result.label == "direction_0"

    def test_empty_window(self):
        base = GreatCircleBase(t_end=5.0, dt=1e-2)
        assert conjugate_point_scan(base, [np.array([1.0, 0.0])], t_end=0.0) == []

    def test_scan_rejects_a_zero_direction(self):
        base = GreatCircleBase(t_end=5.0, dt=1e-2)
        with pytest.raises(JacobiError, match="nonzero direction"):
            conjugate_point_scan(base, [np.array([1.0, 0.0]), np.zeros(2)], ["normal", "zero"])

    def test_invalid_curvature(self):
        with pytest.raises(JacobiError):
            GreatCircleBase(curvature=0.0)


class TestShearFamilyBase:
    def test_cosine_perturbation_grows_linearly(self, example2_base, field_of):
        direction = field_of("cos(0,1)[0]", example2_base.grid)
        trajectory = integrate_jacobi(example2_base, 0.0 * direction, direction)
        for t, y in zip(trajectory.times, trajectory.ys):
            assert (y - t * direction).max_coefficient < 1e-12
        assert trajectory.h1_trace[-1] == pytest.approx(2 * math.pi)

    def test_jacobi_fields_are_linear(self, example2_base, field_of):
        direction = field_of("cos(0,2)[0]", example2_base.grid)
        single = integrate_jacobi(example2_base, 0.0 * direction, direction)
        double = integrate_jacobi(example2_base, 0.0 * direction, 2.0 * direction)
        assert (double.ys[-1] - 2.0 * single.ys[-1]).max_coefficient < 1e-12

    def test_zero_field_stays_zero(self, example2_base, field_of):
        zero = 0.0 * field_of("cos(0,1)[0]", example2_base.grid)
        trajectory = integrate_jacobi(example2_base, zero, zero)
        assert max(trajectory.h1_trace) == 0.0

    @pytest.mark.parametrize(
        "family",
        [GeodesicFamily.example1("sin(1)", 1.0), GeodesicFamily.example2("sin(2)")],
        ids=["example1", "example2"],
    )
    def test_tangent_field_is_constant(self, grid16, family):
        base = ShearFamilyBase(family, grid16, t_end=1.0, dt=0.1)
        y0, ydot0 = base.tangent_pair(0.0)
        trajectory = integrate_jacobi(base, y0, ydot0)
        norms = np.asarray(trajectory.h1_trace)
        assert np.max(norms) - np.min(norms) < 1e-10 * np.max(norms)

    def test_stability_report_along_example2(self, example2_base, field_of):
        direction = field_of("cos(0,1)[0]", example2_base.grid)
        trajectory = integrate_jacobi(example2_base, 0.0 * direction, direction)
        report = stability_report(trajectory, example2_base.sectional_along, probe_every=5)
        assert report.growth_coefficient == pytest.approx(2 * math.pi)
        assert report.convex
        assert abs(report.min_second_difference) < 1e-10
        assert report.curvature_nonpositive is True
        assert report.consistent is True
        assert report.to_dict()["max_norm"] == pytest.approx(2 * math.pi)

    def test_window_outside_the_base(self, example2_base, field_of):
        direction = field_of("cos(0,1)[0]", example2_base.grid)
        with pytest.raises(JacobiWindowError):
            integrate_jacobi(example2_base, 0.0 * direction, direction, t_end=2.0)

    def test_no_conjugate_points_along_example2(self, example2_base, field_of):
        directions = [field_of(s, example2_base.grid) for s in ("cos(0,1)[0]", "sin(0,2)[0]")]
        results = conjugate_point_scan(example2_base, directions)
        assert [r.candidates for r in results] == [[], []]

    def test_scan_rejects_a_zero_field(self, example2_base, field_of):
        zero = 0.0 * field_of("cos(0,1)[0]", example2_base.grid)
        with pytest.raises(JacobiError):
            conjugate_point_scan(example2_base, [zero])


class TestTrajectory:
    def test_second_differences_of_a_parabola(self):
        base = GreatCircleBase(t_end=1.0, dt=0.1)
        trajectory = JacobiTrajectory(
            base,
            times=[0.0, 1.0, 2.0, 3.0],
            ys=[None] * 4,
            ws=[None] * 4,
            h1_trace=[0.0, 1.0, 4.0, 9.0],
            l2_trace=[0.0] * 4,
        )
        np.testing.assert_allclose(trajectory.second_differences(), [2.0, 2.0])
        assert trajectory.convexity_flags == [True, True]
        rows = trajectory.rows()
        assert math.isnan(rows[0]["second_difference"])
        assert rows[1]["second_difference"] == 2.0

    def test_empty_trajectory_has_no_report(self):
        with pytest.raises(ValueError):
            stability_report(JacobiTrajectory(GreatCircleBase()))

    def test_base_window_is_validated(self):
        with pytest.raises(JacobiError):
            GreatCircleBase(t_end=1.0, dt=0.0)

    def test_scan_result_serializes(self):
        assert ConjugateScanResult(1, "x", [0.5]).to_dict() == {
            "direction_index": 1,
            "label": "x",
            "candidates": [0.5],
            "max_norm": 0.0,
        }

    def test_find_conjugate_times_on_a_sign_change(self):
        base = GreatCircleBase(t_end=4.0, dt=0.5)
        trajectory = integrate_jacobi(base, np.zeros(2), np.array([1.0, 0.0]), dt=0.05)
        (found,) = find_conjugate_times(trajectory)
        assert found == pytest.approx(math.pi, rel=1e-3)


class TestLinearizedSpray:
    def test_zero_variation(self, sine_state):
        zero = np.zeros_like(sine_state.velocity)
        assert effective_eps(sine_state, zero, zero) == 0.0
        ydot, yddot = linearized_spray(sine_state, zero, zero)
        assert not ydot.any()
        assert not yddot.any()

    def test_velocity_variation_matches_the_quadratic_spray(self, sine_state):
        x = sine_state.grid.nodes[0]
        w = np.cos(2 * x)
        v = sine_state.velocity
        plus = spray_1d(sine_state.with_values(sine_state.displacement, v + w))
        minus = spray_1d(sine_state.with_values(sine_state.displacement, v - w))
        _, yddot = linearized_spray(sine_state, np.zeros_like(w), w)
        np.testing.assert_allclose(yddot, 0.5 * (plus - minus), atol=1e-7)

    def test_central_difference_converges_at_second_order(self, sine_state):
        # a displacement variation enters the spray nonlinearly
        x = sine_state.grid.nodes[0]
        y = np.cos(2 * x)
        zero = np.zeros_like(y)
        values = [linearized_spray(sine_state, y, zero, eps=eps)[1] for eps in (0.04, 0.02, 0.01)]
        coarse = np.max(np.abs(values[0] - values[1]))
        fine = np.max(np.abs(values[1] - values[2]))
        assert math.log2(coarse / fine) >= 1.9
        assert np.max(np.abs(linearized_spray(sine_state, y, zero)[1] - values[2])) <= fine


class TestLagrangianBase:
    def test_needs_two_snapshots(self, sine_state):
        trajectory = integrate_geodesic_1d(sine_state, 1e-2, 0.0)
        with pytest.raises(JacobiError):
            LagrangianBase1D(trajectory)

    def test_inner_product_at_the_identity(self, sine_state):
        base = LagrangianBase1D(integrate_geodesic_1d(sine_state, 1e-2, 0.1))
        assert base.inner(0.0, sine_state.velocity, sine_state.velocity) == pytest.approx(2 * math.pi)
        assert base.state_at(5.0).time == pytest.approx(0.1)

    def test_deviation_converges_to_the_jacobi_field(self, sine_state):
        direction = np.cos(sine_state.grid.nodes[0])
        errors = []
        for eps in (1e-2, 1e-3):
            trace = geodesic_deviation(sine_state, direction, eps, 1e-2, 0.2)
            jacobi = integrate_jacobi(trace.base, np.zeros_like(direction), direction)
            errors.append(deviation_error(trace, jacobi))
        assert errors[1] < errors[0] / 3.0
        assert errors[1] < 1e-2

    def test_jacobi_fields_are_linear(self, sine_state):
        base = LagrangianBase1D(integrate_geodesic_1d(sine_state, 1e-2, 0.1))
        x = sine_state.grid.nodes[0]
        first, second = np.cos(x), np.sin(2 * x)
        zero = np.zeros_like(x)
        a, b = 0.6, -1.5
        combined = integrate_jacobi(base, zero, a * first + b * second)
        parts = [integrate_jacobi(base, zero, direction) for direction in (first, second)]
        for y, y1, y2 in zip(combined.ys, parts[0].ys, parts[1].ys):
            np.testing.assert_allclose(y, a * y1 + b * y2, atol=1e-7)

    def test_tangent_field_is_time_times_velocity(self, sine_state):
        # Y(0) = 0, Ẏ(0) = η̇(0) is the variation through reparametrized time
        base = LagrangianBase1D(integrate_geodesic_1d(sine_state, 1e-2, 0.2))
        trajectory = integrate_jacobi(base, np.zeros_like(sine_state.velocity), sine_state.velocity)
        for t, y in zip(trajectory.times, trajectory.ys):
            np.testing.assert_allclose(y, t * base.state_at(t).velocity, atol=1e-6)
