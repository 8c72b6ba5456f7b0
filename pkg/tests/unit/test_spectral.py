"""
Unit tests for the spectral core: grid, transforms, Fourier multipliers and
the trigonometric spec language.
"""

import math

import numpy as np
import pytest

from spectral import (
    ConsistencyError,
    Grid,
    GridMismatchError,
    InvalidFieldError,
    Phase,
    SpectralField,
    TrigFieldSpec,
    TrigSpecError,
    TrigTerm,
    advect,
    derivative,
    divergence,
    gradient,
    h1_inner,
    h1_norm,
    helmholtz_apply,
    helmholtz_inverse,
    inverse_laplacian,
    l2_inner,
    laplacian,
    leray_project,
    periodic_derivative,
    pointwise_product,
    to_physical,
    to_spectral,
)

TOL = 1e-12


def close(a: SpectralField, b: SpectralField, tol: float = TOL) -> bool:
    return (a - b).max_coefficient <= tol


class TestGrid:
    def test_cutoff_follows_two_thirds_rule(self):
        assert Grid(2, 16).cutoff == 5
        assert Grid(2, 32).cutoff == 10
        assert Grid(1, 64).cutoff == 21

    def test_volume_and_spacing(self):
        grid = Grid(2, 32)
        assert grid.volume == pytest.approx(4 * math.pi ** 2)
        assert grid.spacing == pytest.approx(2 * math.pi / 32)

    def test_band_membership(self):
        grid = Grid(2, 16)
        assert grid.in_band((5, -5))
        assert not grid.in_band((6, 0))


class TestTransforms:
    def test_sine_has_two_conjugate_coefficients(self, grid1d):
        field = to_spectral(grid1d, np.sin(grid1d.nodes[0]))
        assert field.coefficient(0, (1,)) == pytest.approx(-0.5j)
        assert field.coefficient(0, (-1,)) == pytest.approx(0.5j)
        others = np.where(np.abs(field.coefficients) > 0.25, 0.0, field.coefficients)
        assert np.max(np.abs(others)) < TOL

    def test_modes_above_cutoff_are_removed(self):
        grid = Grid(1, 16)
        field = to_spectral(grid, np.sin(7 * grid.nodes[0]))
        assert field.max_coefficient < TOL

    def test_physical_samples_come_back(self, grid16):
        x, y = grid16.nodes
        samples = np.stack([np.sin(x) * np.cos(2 * y), np.cos(3 * x)])
        np.testing.assert_allclose(to_physical(to_spectral(grid16, samples)), samples, atol=1e-13)

    def test_non_hermitian_coefficients_are_rejected(self, grid1d):
        coeffs = np.zeros((1,) + grid1d.shape, dtype=complex)
        coeffs[(0,) + grid1d.index_of((1,))] = 1.0
        with pytest.raises(ConsistencyError):
            to_physical(SpectralField(grid1d, coeffs))

    def test_non_finite_samples_are_rejected(self, grid16):
        samples = np.zeros(grid16.shape)
        samples[0, 0] = np.nan
        with pytest.raises(InvalidFieldError):
            to_spectral(grid16, samples)

    def test_fields_are_read_only(self, grid16, field_of):
        field = field_of("sin(1,0)[0]", grid16)
        with pytest.raises(ValueError):
            field.coefficients[0, 1, 0] = 2.0

    def test_grid_mismatch(self, field_of):
        a = field_of("sin(1,0)[0]", Grid(2, 16))
        b = field_of("sin(1,0)[0]", Grid(2, 32))
        with pytest.raises(GridMismatchError):
            a + b


class TestOperators:
    def test_h1_norm_of_a_shear(self, grid32, field_of):
        x = field_of("sin(1,0)[0]", grid32)
        assert h1_inner(x, x, 1.0) == pytest.approx(4 * math.pi ** 2)
        assert l2_inner(x, x) == pytest.approx(2 * math.pi ** 2)

    def test_sine_and_cosine_are_orthogonal(self, grid32, field_of):
        x = field_of("sin(2,1)[0]", grid32)
        y = field_of("cos(2,1)[0]", grid32)
        assert abs(h1_inner(x, y, 1.0)) < 1e-12

    def test_helmholtz_inverse_halves_unit_modes(self, grid32, field_of):
        x = field_of("sin(1,0)[0]", grid32)
        assert close(helmholtz_inverse(x, 1.0), 0.5 * x)
        assert close(helmholtz_inverse(helmholtz_apply(x, 0.7), 0.7), x)

    def test_non_finite_alpha_is_rejected(self, grid16, field_of):
        with pytest.raises(InvalidFieldError):
            helmholtz_apply(field_of("sin(1,0)[0]", grid16), math.inf)

    def test_leray_projection_of_a_diagonal_wave(self, grid32, field_of):
        projected = leray_project(field_of("sin(1,1)[0]", grid32))
        expected = field_of("0.5*sin(1,1)[0] - 0.5*sin(1,1)[1]", grid32)
        assert close(projected, expected)
        assert projected.is_divergence_free

    def test_gradients_project_to_zero(self, grid32):
        scalar = TrigFieldSpec.parse("cos(2,1) + sin(0,3)", dim=2, n_components=1).to_field(grid32)
        assert leray_project(gradient(scalar)).max_coefficient < TOL

    def test_derivative_and_divergence(self, grid32, field_of):
        x = field_of("sin(1,0)[0]", grid32)
        assert close(derivative(x, 0), field_of("cos(1,0)[0]", grid32))
        div = divergence(x)
        assert div.n_components == 1
        assert close(div, TrigFieldSpec.parse("cos(1,0)", dim=2, n_components=1).to_field(grid32))

    def test_inverse_laplacian_on_zero_mean_scalars(self, grid32):
        scalar = TrigFieldSpec.parse("cos(2,1) - 0.5*sin(0,3)", dim=2, n_components=1).to_field(grid32)
        assert close(inverse_laplacian(laplacian(scalar)), scalar)

    def test_advection_along_a_constant_field(self, grid32, field_of):
        constant = field_of("cos(0,0)[0]", grid32)
        w = field_of("sin(1,2)[1]", grid32)
        assert close(advect(constant, w), field_of("cos(1,2)[1]", grid32))

    def test_periodic_derivative_of_raw_samples(self, grid1d):
        x = grid1d.nodes[0]
        np.testing.assert_allclose(periodic_derivative(grid1d, np.sin(3 * x)), 3 * np.cos(3 * x), atol=1e-12)

    def test_h1_norm_grows_with_alpha(self, grid32, field_of):
        x = field_of("sin(2,0)[0]", grid32)
        assert h1_norm(x, 1.0) == pytest.approx(math.sqrt(5) * h1_norm(x, 0.0))

    def test_product_with_one_is_the_transform(self, grid16):
        samples = np.random.default_rng(3).standard_normal((2, *grid16.shape))
        product = pointwise_product(grid16, np.ones(grid16.shape), samples)
        assert close(product, to_spectral(grid16, samples))

    def test_product_of_sine_and_cosine(self, grid32):
        x = grid32.nodes[0]
        product = pointwise_product(grid32, np.sin(x), np.cos(x))
        expected = TrigFieldSpec.parse("0.5*sin(2,0)", dim=2, n_components=1).to_field(grid32)
        assert close(product, expected)

    @pytest.mark.parametrize("k", [3, 4])
    def test_product_above_the_cutoff_keeps_only_the_mean(self, grid16, k):
        # sin²(kx) = 1/2 - cos(2kx)/2 and 2k exceeds the cutoff of 5
        wave = np.sin(k * grid16.nodes[0])
        product = pointwise_product(grid16, wave, wave)
        expected = TrigFieldSpec.parse("0.5*cos(0,0)", dim=2, n_components=1).to_field(grid16)
        assert close(product, expected)

    def test_product_operands_must_live_on_the_grid(self, grid16):
        with pytest.raises(GridMismatchError):
            pointwise_product(grid16, np.ones((8, 8)), np.ones(grid16.shape))


class TestTrigSpec:
    def test_parse_terms(self):
        spec = TrigFieldSpec.parse("sin(1,0)[0] - 0.5*cos(0,2)[1]")
        assert spec.dim == 2
        assert spec.n_components == 2
        assert [t.amplitude for t in spec.terms] == [1.0, -0.5]
        assert str(spec) == "1.0*sin(1,0)[0] - 0.5*cos(0,2)[1]"

    def test_term_string_keeps_its_sign(self):
        term = TrigTerm(1, (0, 2), Phase.COS, -0.5)
        assert str(term) == "-0.5*cos(0,2)[1]"
        assert term.magnitude_str() == "0.5*cos(0,2)[1]"
        assert str(TrigTerm(0, (1, 0), Phase.SIN, 2.0)) == "2.0*sin(1,0)[0]"

    @pytest.mark.parametrize(
        "text",
        ["-0.5*cos(0,2)[1] + sin(1,0)[0]", "sin(1,0)[0] - 2.0*sin(0,1)[1] - 0.25*cos(1,1)[0]"],
    )
    def test_string_parses_back(self, text):
        spec = TrigFieldSpec.parse(text)
        assert TrigFieldSpec.parse(str(spec)) == spec

    def test_component_defaults_to_zero(self):
        spec = TrigFieldSpec.parse("cos(3)", dim=1, n_components=1)
        assert spec.terms[0].component == 0
        assert spec.max_wavenumber == 3

    @pytest.mark.parametrize("text", ["sin(1,0)[0] cos(0,1)[1]", "tan(1,0)", "sin(1,0)[5]"])
    def test_invalid_specs(self, text):
        with pytest.raises(TrigSpecError):
            TrigFieldSpec.parse(text, dim=2, n_components=2)

    def test_terms_above_the_cutoff_are_rejected(self, grid16):
        with pytest.raises(TrigSpecError):
            TrigFieldSpec.parse("sin(6,0)[0]", dim=2, n_components=2).to_field(grid16)

    def test_field_reads_back_as_the_normalized_spec(self, grid32):
        spec = TrigFieldSpec.parse("2.0*cos(1,-2)[1] - sin(-1,0)[0] + 0.25*cos(0,3)[0]")
        assert TrigFieldSpec.from_field(spec.to_field(grid32)) == spec.normalized()

    def test_evaluation_matches_the_transform(self, grid32):
        spec = TrigFieldSpec.parse("sin(1,2)[0] + 0.5*cos(3,-1)[1]")
        np.testing.assert_allclose(to_physical(spec.to_field(grid32)), spec.evaluate(grid32.nodes), atol=1e-13)

    def test_exact_derivative(self, grid32):
        spec = TrigFieldSpec.parse("sin(2,1)[0] + cos(0,3)[1]")
        exact = spec.derivative(1).to_field(grid32)
        assert close(exact, derivative(spec.to_field(grid32), 1))

    def test_embed_lifts_a_profile_to_a_shear(self, grid32, field_of):
        profile = TrigFieldSpec.parse("sin(2)", dim=1, n_components=1)
        lifted = profile.embed(dim=2, axis=1, component=0, n_components=2)
        assert close(lifted.to_field(grid32), field_of("sin(0,2)[0]", grid32))
