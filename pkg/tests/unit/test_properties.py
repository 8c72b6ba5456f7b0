"""
Property-based tests of the spectral and curvature invariants.

Hypothesis draws seeds and length scales; every field is band-limited, so
each property holds to rounding on any grid that resolves it.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvature import AVariant, a_form, r1_operator
from flows import random_field, random_vector_field, rhs
from spectral import (
    Grid,
    derivative,
    gradient_part,
    h1_inner,
    h1_norm,
    helmholtz_apply,
    helmholtz_inverse,
    leray_project,
    to_physical,
    to_spectral,
)

GRID = Grid(2, 16)

seed_strategy = st.integers(min_value=0, max_value=10_000)
alpha_strategy = st.floats(min_value=0.0, max_value=2.0, allow_nan=False, allow_infinity=False)


class TestSpectralProperties:
    @given(seed=seed_strategy)
    @settings(max_examples=100, deadline=None)
    def test_leray_projection_is_idempotent(self, seed):
        v = random_vector_field(GRID, seed=seed, max_wavenumber=4)
        once = leray_project(v)
        twice = leray_project(once)
        assert (once - twice).max_coefficient <= 1e-14 * max(v.max_coefficient, 1.0)
        assert once.is_divergence_free

    @given(seed=seed_strategy)
    @settings(max_examples=100, deadline=None)
    def test_leray_projection_annihilates_gradients(self, seed):
        v = random_vector_field(GRID, seed=seed)
        assert leray_project(gradient_part(v)).max_coefficient <= 1e-14 * max(v.max_coefficient, 1.0)

    @given(seed=seed_strategy, alpha=alpha_strategy)
    @settings(max_examples=50, deadline=None)
    def test_h1_inner_matches_trapezoidal_quadrature(self, seed, alpha):
        # products of band-limited fields stay below the grid's Nyquist mode
        x = random_vector_field(GRID, seed=seed)
        y = random_vector_field(GRID, seed=seed + 1)
        density = np.sum(to_physical(x) * to_physical(y), axis=0)
        for axis in range(GRID.dim):
            density += alpha ** 2 * np.sum(to_physical(derivative(x, axis)) * to_physical(derivative(y, axis)), axis=0)
        quadrature = float(np.sum(density) * GRID.cell_volume)
        scale = h1_norm(x, alpha) * h1_norm(y, alpha)
        assert h1_inner(x, y, alpha) == pytest.approx(quadrature, abs=1e-12 * scale)

    @given(seed=seed_strategy, alpha=alpha_strategy)
    @settings(max_examples=100, deadline=None)
    def test_hodge_split_is_complementary_and_orthogonal(self, seed, alpha):
        v = random_vector_field(GRID, seed=seed)
        p = leray_project(v)
        q = gradient_part(v)
        assert (p + q - v).max_coefficient <= 1e-12 * v.max_coefficient
        assert abs(h1_inner(p, q, alpha)) <= 1e-12 * h1_norm(v, alpha) ** 2
        assert (gradient_part(q) - q).max_coefficient <= 1e-12 * v.max_coefficient

    @given(seed=seed_strategy, alpha=alpha_strategy)
    @settings(max_examples=25, deadline=None)
    def test_h1_inner_is_symmetric_and_positive(self, seed, alpha):
        x = random_vector_field(GRID, seed=seed)
        y = random_vector_field(GRID, seed=seed + 1)
        assert h1_inner(x, y, alpha) == pytest.approx(h1_inner(y, x, alpha), rel=1e-13, abs=1e-13)
        assert h1_inner(x, x, alpha) > 0.0

    @given(seed=seed_strategy, alpha=alpha_strategy)
    @settings(max_examples=25, deadline=None)
    def test_helmholtz_inverse_undoes_apply(self, seed, alpha):
        x = random_vector_field(GRID, seed=seed)
        back = helmholtz_inverse(helmholtz_apply(x, alpha), alpha)
        assert (back - x).max_coefficient <= 1e-13 * x.max_coefficient

    @given(seed=seed_strategy)
    @settings(max_examples=25, deadline=None)
    def test_transform_returns_band_limited_samples(self, seed):
        x = random_vector_field(GRID, seed=seed)
        again = to_spectral(GRID, to_physical(x))
        assert (again - x).max_coefficient <= 1e-14 * max(x.max_coefficient, 1.0)


class TestDynamicsProperties:
    @given(seed=seed_strategy, alpha=alpha_strategy)
    @settings(max_examples=15, deadline=None)
    def test_energy_is_stationary_along_the_flow(self, seed, alpha):
        u = random_field(GRID, seed=seed, max_wavenumber=3)
        rate = h1_inner(u, rhs(u, alpha), alpha)
        assert abs(rate) <= 1e-10 * h1_norm(u, alpha) ** 3

    @given(seed=seed_strategy, alpha=alpha_strategy)
    @settings(max_examples=15, deadline=None)
    def test_a_form_is_symmetric(self, seed, alpha):
        x = random_field(GRID, seed=seed, max_wavenumber=3)
        z = random_field(GRID, seed=seed + 1, max_wavenumber=3)
        difference = a_form(x, z, AVariant.REMARK, alpha) - a_form(z, x, AVariant.REMARK, alpha)
        assert difference.max_coefficient <= 1e-13 * max(x.max_coefficient * z.max_coefficient, 1e-300)

    @given(seed=seed_strategy)
    @settings(max_examples=10, deadline=None)
    def test_curvature_numerator_is_antisymmetric(self, seed):
        x = random_field(GRID, seed=seed, max_wavenumber=2)
        y = random_field(GRID, seed=seed + 1, max_wavenumber=2)
        forward = h1_inner(r1_operator(x, y, y), x, 1.0)
        swapped = h1_inner(r1_operator(y, x, y), x, 1.0)
        scale = h1_norm(x, 1.0) ** 2 * h1_norm(y, 1.0) ** 2
        assert abs(forward + swapped) <= 1e-10 * scale
