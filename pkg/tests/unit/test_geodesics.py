"""
Unit tests for Lagrangian states, the 1D spray and the closed-form shear
geodesics on T².
"""

import math

import numpy as np
import pytest

from geodesics import (
    DiffeomorphismBreakdownError,
    DiffeoState,
    FamilyKind,
    GeodesicError,
    GeodesicFamily,
    NonInvertibleMapError,
    SprayForm,
    camassa_holm_residual,
    characteristic_breakdown_time,
    eulerian_velocity,
    geodesic_residual_2d,
    integrate_geodesic_1d,
    invert_monotone_map,
    is_volume_preserving,
    jacobian_determinant,
    lagrangian_energy,
    spray_1d,
)
from spectral import Grid, InvalidFieldError, h1_norm, to_physical


@pytest.fixture
def sine_state(grid1d) -> DiffeoState:
    return DiffeoState.identity(grid1d, np.sin(grid1d.nodes[0]), alpha=1.0)


class TestDiffeoState:
    def test_identity_has_unit_jacobian(self, sine_state):
        np.testing.assert_allclose(sine_state.jacobian(), 1.0)
        assert sine_state.min_jacobian() == pytest.approx(1.0)

    def test_shape_is_checked(self, grid1d):
        with pytest.raises(InvalidFieldError):
            DiffeoState(grid1d, np.zeros(10), np.zeros(10))

    def test_folded_map_is_not_a_diffeomorphism(self, grid1d):
        x = grid1d.nodes[0]
        state = DiffeoState(grid1d, 2.0 * np.sin(x), np.zeros_like(x))
        with pytest.raises(DiffeomorphismBreakdownError):
            state.check_diffeomorphism()
        with pytest.raises(NonInvertibleMapError):
            eulerian_velocity(state)

    def test_monotone_map_is_inverted(self, grid1d):
        d = 0.3 * np.sin(grid1d.nodes[0])
        targets = np.linspace(0.0, 2 * math.pi, 17)
        labels = invert_monotone_map(grid1d, d, targets)
        np.testing.assert_allclose(labels + 0.3 * np.sin(labels), targets, atol=1e-10)

    def test_eulerian_velocity_at_the_identity(self, sine_state, grid1d):
        u = to_physical(eulerian_velocity(sine_state))[0]
        np.testing.assert_allclose(u, np.sin(grid1d.nodes[0]), atol=1e-12)

    @pytest.mark.parametrize("shift", [0.4, -1.1])
    def test_eulerian_velocity_of_a_translation(self, grid1d, shift):
        # η(x) = x + a, so U(y) = η̇(y - a)
        def profile(s):
            return np.sin(s) + 0.5 * np.cos(2 * s)

        x = grid1d.nodes[0]
        state = DiffeoState(grid1d, np.full_like(x, shift), profile(x), alpha=1.0)
        u = to_physical(eulerian_velocity(state))[0]
        np.testing.assert_allclose(u, profile(x - shift), atol=1e-10)


class TestSpray:
    @pytest.mark.parametrize(
        "form, factor",
        [(SprayForm.PUBLISHED, -0.3), (SprayForm.CAMASSA_HOLM, -0.1)],
    )
    def test_spray_of_a_sine_at_alpha_one(self, sine_state, grid1d, form, factor):
        expected = factor * np.sin(2 * grid1d.nodes[0])
        np.testing.assert_allclose(spray_1d(sine_state, form), expected, atol=1e-12)

    def test_spray_at_alpha_zero(self, grid1d):
        x = grid1d.nodes[0]
        state = DiffeoState.identity(grid1d, np.sin(x), alpha=0.0)
        np.testing.assert_allclose(spray_1d(state), -np.sin(2 * x), atol=1e-12)

    def test_spray_needs_one_dimension(self, grid16):
        state = DiffeoState.identity(grid16, np.zeros((2,) + grid16.shape))
        with pytest.raises(GeodesicError):
            spray_1d(state)

    def test_energy_at_the_identity(self, sine_state):
        assert lagrangian_energy(sine_state) == pytest.approx(math.pi)

    def test_breakdown_oracle(self, grid1d):
        x = grid1d.nodes[0]
        assert characteristic_breakdown_time(grid1d, np.sin(x)) == pytest.approx(1.0 / 3.0)
        assert characteristic_breakdown_time(grid1d, np.zeros_like(x)) == math.inf


class TestIntegration:
    def test_short_run_conserves_energy(self, sine_state):
        trajectory = integrate_geodesic_1d(sine_state, 1e-3, 0.05, cadence=10)
        assert trajectory.breakdown_time is None
        assert trajectory.energy_drift() < 1e-6
        assert trajectory.final.time == pytest.approx(0.05)
        assert len(trajectory.rows) == 6

    def test_camassa_holm_residual_tells_the_forms_apart(self, sine_state):
        ch = integrate_geodesic_1d(sine_state, 1e-3, 0.02, form=SprayForm.CAMASSA_HOLM)
        published = integrate_geodesic_1d(sine_state, 1e-3, 0.02, form=SprayForm.PUBLISHED)
        assert camassa_holm_residual(ch) < 1e-4
        assert camassa_holm_residual(published) > 1e-2

    def test_invalid_parameters(self, sine_state):
        with pytest.raises(ValueError):
            integrate_geodesic_1d(sine_state, -1e-3, 0.1)
        with pytest.raises(ValueError):
            integrate_geodesic_1d(sine_state, 0.03, 0.1)
        with pytest.raises(ValueError):
            integrate_geodesic_1d(sine_state, 1e-3, 0.1, cadence=0)

    def test_breakdown_is_reported(self, grid1d):
        state = DiffeoState.identity(grid1d, np.sin(grid1d.nodes[0]), alpha=0.0)
        trajectory = integrate_geodesic_1d(state, 1e-3, 0.5)
        assert trajectory.breakdown_time is not None
        assert trajectory.breakdown_time == pytest.approx(1.0 / 3.0, rel=0.1)
        with pytest.raises(DiffeomorphismBreakdownError):
            integrate_geodesic_1d(state, 1e-3, 0.5, raise_on_breakdown=True)

    def test_solver_errors_are_not_breakdowns(self, sine_state, mocker):
        first = spray_1d(sine_state)
        mocker.patch("geodesics.spray.spray_1d", side_effect=[first, ValueError("solve failed")])
        with pytest.raises(ValueError, match="solve failed"):
            integrate_geodesic_1d(sine_state, 1e-3, 0.01)

    def test_non_finite_stage_is_a_breakdown(self, sine_state, mocker):
        first = spray_1d(sine_state)
        mocker.patch(
            "geodesics.spray.spray_1d", side_effect=[first, np.full_like(first, np.nan)]
        )
        trajectory = integrate_geodesic_1d(sine_state, 1e-3, 0.01)
        assert trajectory.breakdown_time == pytest.approx(1e-3)
        assert len(trajectory.states) == 1


class TestFamilies:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_examples_are_geodesics(self, grid32, k):
        for family in (
            GeodesicFamily.example1(f"sin({k})", 1.0),
            GeodesicFamily.example2(f"sin({k})"),
            GeodesicFamily.example2(f"cos({k})", alpha=0.5),
        ):
            assert geodesic_residual_2d(family, 0.5, grid32) < 1e-10

    def test_control_is_not_a_geodesic(self, grid32):
        from flows import taylor_green_field

        expected = h1_norm(taylor_green_field(grid32), 1.0)
        assert expected == pytest.approx(math.sqrt(6) * math.pi)
        assert geodesic_residual_2d(GeodesicFamily.control(), 0.0, grid32) == pytest.approx(expected, rel=1e-10)

    def test_example2_velocity_is_the_profile(self, grid32, field_of):
        u = GeodesicFamily.example2("sin(2)").eulerian_velocity(0.7, grid32)
        assert (u - field_of("sin(0,2)[0]", grid32)).max_coefficient < 1e-12

    def test_example1_moves_vertically(self, grid32):
        state = GeodesicFamily.example1("sin(1)", 2.0).state_at(0.5, grid32)
        np.testing.assert_allclose(state.displacement[1], 1.0)
        np.testing.assert_allclose(state.jacobian(), 1.0, atol=1e-12)

    @pytest.mark.parametrize("kind", [FamilyKind.EXAMPLE1, FamilyKind.EXAMPLE2])
    def test_families_preserve_volume(self, kind):
        assert jacobian_determinant(kind) == 1
        assert is_volume_preserving(kind)

    def test_control_has_no_lagrangian_form(self, grid32):
        with pytest.raises(GeodesicError):
            GeodesicFamily.control().state_at(0.0, grid32)
        with pytest.raises(GeodesicError):
            jacobian_determinant(FamilyKind.CONTROL)

    def test_profile_is_required(self):
        with pytest.raises(GeodesicError):
            GeodesicFamily(FamilyKind.EXAMPLE1)

    def test_families_live_on_the_torus(self):
        with pytest.raises(GeodesicError):
            GeodesicFamily.example2("sin(1)").state_at(0.0, Grid(1, 16))
