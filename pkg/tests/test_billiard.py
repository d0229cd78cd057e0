"""Closed-billiard spectrum and normal-mode fields."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from microdisk import billiard, specfun
from microdisk.billiard import ModeIndex, billiard_eigenvalue, boundary_residual
from microdisk.errors import DomainError, GridError
from microdisk.fieldgrid import GridSpec

from oracles import bessel_zero_by_bisection, count_radial_nodes


class TestEigenvalue:
    def test_reference_wgm(self):
        eig = billiard_eigenvalue(ModeIndex(2, 1), 3.3)
        assert abs(eig.kR - 1.556) < 1e-3

    def test_unit_index_is_bare_zero(self):
        eig = billiard_eigenvalue(ModeIndex(2, 1), 1.0)
        assert abs(eig.kR - 5.13562) < 1e-5

    def test_against_bisection_oracle(self):
        eig = billiard_eigenvalue(ModeIndex(3, 1), 3.3)
        assert abs(eig.kR - bessel_zero_by_bisection(3, 1) / 3.3) < 1e-4

    def test_rejects_sub_unity_index(self):
        with pytest.raises(DomainError):
            billiard_eigenvalue(ModeIndex(2, 1), 0.9)

    @given(n=st.floats(1.0, 10.0, allow_nan=False))
    @settings(max_examples=40, deadline=None)
    def test_scaling_invariant(self, n):
        eig = billiard_eigenvalue(ModeIndex(4, 2), n)
        assert abs(eig.kR * n - specfun.bessel_j_zero(4, 2)) < 1e-9 * eig.kR * n

    def test_monotone_in_m_and_ell(self):
        for ell in (1, 2, 3):
            ks = [billiard_eigenvalue(ModeIndex(m, ell), 3.3).kR for m in range(8)]
            assert all(a < b for a, b in zip(ks, ks[1:]))
        for m in (0, 3, 7):
            ks = [billiard_eigenvalue(ModeIndex(m, ell), 3.3).kR for ell in range(1, 6)]
            assert all(a < b for a, b in zip(ks, ks[1:]))

    def test_dirichlet_residual(self):
        for m, ell in ((0, 1), (2, 1), (5, 3), (10, 5)):
            assert boundary_residual(billiard_eigenvalue(ModeIndex(m, ell), 3.3)) < 1e-10

    def test_mode_index_validation(self):
        with pytest.raises(DomainError):
            ModeIndex(-1, 1)
        with pytest.raises(DomainError):
            ModeIndex(2, 0)
        with pytest.raises(DomainError):
            ModeIndex(61, 1)


class TestNormalModeField:
    def test_zero_outside_boundary(self):
        grid = billiard.normal_mode_field(ModeIndex(2, 1), 3.3, GridSpec(1.5, 128))
        outside = grid.radii() >= 1.0
        assert outside.any()
        assert np.all(grid.values[outside] == 0.0)

    def test_center_zero_for_positive_m(self):
        spec = GridSpec(1.5, 129)  # odd count puts a sample at the origin
        for m in (1, 2, 5):
            grid = billiard.normal_mode_field(ModeIndex(m, 1), 3.3, spec)
            center = grid.values[64, 64]
            assert center == 0.0

    def test_normalization(self):
        grid = billiard.normal_mode_field(ModeIndex(3, 2), 3.3, GridSpec(1.2, 256))
        assert grid.values.min() >= 0.0
        assert 0.9 < grid.values.max() <= 1.0

    def test_radial_node_count(self):
        # ell - 1 interior nodal circles, counted as sign changes of the
        # radial wave on a fine scan of (0, 1)
        for m, ell in ((2, 1), (2, 2), (4, 3)):
            eig = billiard_eigenvalue(ModeIndex(m, ell), 3.3)
            r = np.linspace(1e-4, 0.9999, 4001)
            profile = np.real(specfun.bessel_j(m, eig.n * eig.kR * r))
            assert count_radial_nodes(profile) == ell - 1

    def test_degenerate_grid_rejected(self):
        with pytest.raises(GridError):
            GridSpec(1.5, 1)
        with pytest.raises(GridError):
            GridSpec(0.9, 128)
