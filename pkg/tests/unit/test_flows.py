"""
Unit tests for the averaged-Euler solver and the initial-data generators.
"""

import math

import numpy as np
import pytest

from flows import (
    GENERATORS,
    FlowState,
    SolverError,
    h1_energy,
    integrate_flow,
    make_initial_velocity,
    pressure,
    pressure_gradient,
    random_field,
    rhs,
    shear_field,
    step_rk4,
    taylor_green_field,
    zero_field,
)
from spectral import Grid, advect, gradient, h1_norm, leray_project, to_spectral


class TestRightHandSide:
    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
    def test_shear_is_steady(self, grid32, alpha):
        assert rhs(shear_field(grid32, 2), alpha).max_coefficient < 1e-12

    @pytest.mark.parametrize("alpha", [0.0, 1.0])
    def test_taylor_green_is_steady(self, grid32, alpha):
        assert rhs(taylor_green_field(grid32), alpha).max_coefficient < 1e-12

    def test_zero_field_stays_zero(self, grid16):
        assert rhs(zero_field(grid16), 1.0).max_coefficient == 0.0

    def test_rhs_is_divergence_free(self, grid32):
        u = random_field(grid32, seed=3)
        assert rhs(u, 1.0).is_divergence_free

    def test_rhs_rejects_compressible_input(self, grid32, field_of):
        with pytest.raises(ValueError):
            rhs(field_of("sin(1,0)[0]", grid32), 1.0)

    @pytest.mark.parametrize("seed", [0, 7])
    def test_alpha_zero_is_projected_euler(self, grid16, seed):
        u = random_field(grid16, seed=seed)
        expected = -1.0 * leray_project(advect(u, u))
        assert (rhs(u, 0.0) - expected).max_coefficient < 1e-12 * max(expected.max_coefficient, 1.0)


class TestPressure:
    def test_taylor_green_pressure_at_alpha_zero(self, grid32):
        x, y = grid32.nodes
        expected = 0.25 * (np.cos(2 * x) + np.cos(2 * y))
        np.testing.assert_allclose(pressure(taylor_green_field(grid32), 0.0), expected, atol=1e-12)

    def test_pressure_gradient_matches_pressure(self, grid32):
        u = random_field(grid32, seed=5)
        p = to_spectral(grid32, pressure(u, 1.0))
        assert (gradient(p) - pressure_gradient(u, 1.0)).max_coefficient < 1e-12


class TestEnergy:
    def test_h1_energy_of_taylor_green(self, grid32):
        state = FlowState(taylor_green_field(grid32), 1.0)
        assert h1_energy(state) == pytest.approx(3 * math.pi ** 2)

    def test_random_field_has_requested_rms_speed(self, grid32):
        u = random_field(grid32, seed=11, amplitude=0.5)
        assert h1_norm(u, 0.0) == pytest.approx(0.5 * math.sqrt(grid32.volume))
        assert u.is_divergence_free

    def test_random_field_is_reproducible(self, grid32):
        a = random_field(grid32, seed=2)
        b = random_field(grid32, seed=2)
        c = random_field(grid32, seed=4)
        assert np.array_equal(a.coefficients, b.coefficients)
        assert not np.array_equal(a.coefficients, c.coefficients)


class TestStepping:
    def test_rk4_step_keeps_steady_data(self, grid16):
        state = FlowState(taylor_green_field(grid16), 1.0)
        stepped = step_rk4(state, 0.01)
        assert stepped.time == pytest.approx(0.01)
        assert (stepped.velocity - state.velocity).max_coefficient < 1e-12

    @pytest.mark.parametrize("dt", [0.0, math.nan])
    def test_invalid_step(self, grid16, dt):
        with pytest.raises(ValueError):
            step_rk4(FlowState(zero_field(grid16), 1.0), dt)

    def test_negative_step_runs_backwards(self, grid16):
        start = FlowState(random_field(grid16, seed=3), 1.0, time=1.0)
        run = integrate_flow(start, -0.05, 0.5, cadence=2)
        assert [round(r.time, 12) for r in run.rows] == [1.0, 0.9, 0.8, 0.7, 0.6, 0.5]
        assert run.final.time == pytest.approx(0.5)
        assert (run.final.velocity - start.velocity).max_coefficient > 1e-3
        back = integrate_flow(run.final, 0.05, 1.0).final
        assert (back.velocity - start.velocity).max_coefficient < 1e-6

    def test_forward_then_backward_returns_to_the_start(self, grid16):
        start = FlowState(random_field(grid16, seed=9), 1.0)
        forward = integrate_flow(start, 0.01, 0.2).final
        back = integrate_flow(forward, -0.01, 0.0).final
        assert back.time == pytest.approx(0.0)
        assert (back.velocity - start.velocity).max_coefficient < 1e-7

    def test_rk4_converges_at_fourth_order(self, grid16):
        start = FlowState(random_field(grid16, seed=4, amplitude=1.0), 0.5)
        reference = integrate_flow(start, 0.005, 0.2).final.velocity
        errors = [
            h1_norm(integrate_flow(start, dt, 0.2).final.velocity - reference, 0.0)
            for dt in (0.04, 0.02)
        ]
        assert math.log2(errors[0] / errors[1]) >= 3.7

    def test_steady_shear_over_a_thousand_steps(self, grid16):
        start = FlowState(shear_field(grid16, 2), 1.0)
        run = integrate_flow(start, 0.01, 10.0, cadence=100)
        assert (run.final.velocity - start.velocity).max_coefficient < 1e-10
        assert run.energy_drift() < 1e-10

    def test_end_time_must_be_a_multiple_of_dt(self, grid16):
        with pytest.raises(ValueError):
            integrate_flow(FlowState(zero_field(grid16), 1.0), 0.3, 1.0)

    def test_zero_length_window_has_one_row(self, grid16):
        run = integrate_flow(FlowState(taylor_green_field(grid16), 0.5), 0.1, 0.0)
        assert len(run.rows) == 1
        assert run.energy_drift() == 0.0

    def test_cadence_keeps_the_last_sample(self, grid16):
        run = integrate_flow(FlowState(zero_field(grid16), 1.0), 0.1, 0.5, cadence=2)
        assert [round(r.time, 12) for r in run.rows] == [0.0, 0.2, 0.4, 0.5]

    def test_observer_sees_every_sample(self, grid16, mocker):
        observer = mocker.Mock()
        integrate_flow(FlowState(zero_field(grid16), 1.0), 0.1, 0.3, cadence=1, observer=observer)
        assert observer.call_count == 4


class TestInitialData:
    @pytest.mark.parametrize("generator", ["zero", "shear", "taylor_green", "random"])
    def test_generators_are_divergence_free(self, grid32, generator):
        u = make_initial_velocity(generator, grid32, seed=1)
        assert u.max_divergence <= 1e-12

    def test_trig_generator_projects(self, grid32):
        u = make_initial_velocity("trig", grid32, spec="sin(1,1)[0]")
        assert u.is_divergence_free

    def test_trig_generator_needs_a_spec(self, grid32):
        with pytest.raises(ValueError):
            make_initial_velocity("trig", grid32)

    def test_unknown_generator(self, grid32):
        with pytest.raises(KeyError):
            make_initial_velocity("vortex", grid32)
        assert "vortex" not in GENERATORS

    def test_shear_needs_two_dimensions(self):
        with pytest.raises(ValueError):
            shear_field(Grid(1, 16))


def test_solver_errors_share_a_base():
    from flows import SolverDivergenceError

    error = SolverDivergenceError(0.5)
    assert isinstance(error, SolverError)
    assert error.time == 0.5
