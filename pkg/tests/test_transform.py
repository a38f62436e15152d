"""Transform-domain certification: operator, determinant, solution, residuals.

These tests treat the closed-form transformed solution as a claim to be
verified against the governing equations themselves: the ODE system, the
six boundary conditions, and the determinant root structure.
"""

from __future__ import annotations

import numpy as np
import pytest

from gradbouss import Material, PointLoad
from gradbouss.kernels import lambda_cap
from gradbouss.transform import (
    BoundaryReport,
    DeterminantReport,
    TransformSample,
    VerificationReport,
    _det_poly_scaled,
    _displacements_direct,
    _displacements_general,
    _normalized_roots,
    boundary_residuals,
    determinant_roots_check,
    ode_residual,
    operator_matrix,
    solution_coefficients,
    transformed_state,
    verification_sweep,
)

M = Material(mu=1.0, nu=0.3, c=1.0)
M_DIM = Material(mu=2.5, nu=0.2, c=0.09)
LOAD = PointLoad(1.0)


def sample_points(n=20, seed=910, c=1.0):
    """Log-uniform complex (p, q) samples away from the branch points."""
    rng = np.random.default_rng(seed)
    mag = 10.0 ** rng.uniform(-1.5, 0.8, size=(n, 2)) / np.sqrt(c)
    phase = rng.uniform(0.0, 2.0 * np.pi, size=(n, 2))
    pq = mag * np.exp(1j * phase)
    return [(complex(p), complex(q)) for p, q in pq]


class TestOperatorMatrix:
    def test_symmetry(self):
        for p, q in sample_points(8):
            k = operator_matrix(p, q, 0.7 + 0.2j, M.nu, M.c)
            np.testing.assert_allclose(k, k.T, rtol=0, atol=0)

    def test_vanishes_identically_at_gamma(self):
        # the shared Helmholtz factor 1 - c(d^2+p^2+q^2) kills every entry
        # at d = +-gamma
        for p, q in sample_points(8):
            b, g = _normalized_roots(p, q, M.c)
            gamma = g / np.sqrt(M.c)
            for d in (gamma, -gamma):
                k = operator_matrix(p, q, d, M.nu, M.c)
                assert np.max(np.abs(k)) < 1e-12 * max(abs(p), abs(q), abs(d)) ** 4

    def test_singular_at_beta(self):
        # at d = +-beta the matrix is nonzero but rank deficient
        for p, q in sample_points(8):
            b, _ = _normalized_roots(p, q, M.c)
            beta = b / np.sqrt(M.c)
            k = operator_matrix(p, q, beta, M.nu, M.c)
            sv = np.linalg.svd(k, compute_uv=False)
            assert sv[0] > 1e-8          # not the zero matrix
            assert sv[-1] < 1e-10 * sv[0]  # but singular

    def test_scaling_consistency(self):
        # entries are homogeneous degree 2 in (p, q, d) up to the shared
        # factor; spot check against a hand-evaluated entry
        p, q, d = 0.3, 0.2, 0.5
        k = operator_matrix(p, q, d, 0.25, 1.0)
        shared = 1.0 - (d * d + p * p + q * q)
        k33 = ((1.0 - 0.5) * (p * p + q * q) + 2.0 * 0.75 * d * d) * shared
        np.testing.assert_allclose(k[2, 2], k33, rtol=1e-15)


class TestDeterminant:
    def test_leading_coefficient_is_paper_prefactor(self):
        # det = -2(1-nu)(1-2nu)^2 (D^2-b^2)^3 (D^2-g^2)^3 in scaled variables
        for nu in (0.0, 0.2, 0.3, 0.45):
            det = _det_poly_scaled(0.4 + 0.1j, -0.3 + 0.2j, nu)
            lead = det.coef[-1]
            np.testing.assert_allclose(
                lead, -2.0 * (1.0 - nu) * (1.0 - 2.0 * nu) ** 2, rtol=1e-12)
            assert det.degree() == 12

    def test_full_factorization(self):
        # coefficient-level match against the root-reconstructed polynomial
        from numpy.polynomial import Polynomial
        for p, q in sample_points(6):
            b, g = _normalized_roots(p, q, 1.0)
            det = _det_poly_scaled(complex(p), complex(q), M.nu)
            lead = det.coef[-1]
            rebuilt = Polynomial([1.0])
            for root in (b, -b, g, -g):
                factor = Polynomial([-root, 1.0])
                rebuilt = rebuilt * factor * factor * factor
            rebuilt = rebuilt * lead
            scale = np.max(np.abs(det.coef))
            np.testing.assert_allclose(det.coef, rebuilt.coef,
                                       rtol=0, atol=1e-10 * scale)

    def test_roots_check_passes(self):
        for p, q in sample_points(12):
            rep = determinant_roots_check(p, q, M.nu, M.c)
            assert isinstance(rep, DeterminantReport)
            assert rep.passed
            assert rep.multiplicity == 3
            assert rep.root_residual_max < 1e-10
            assert rep.third_deriv_floor > 1e-2
            assert rep.nonroot_value > 1e-4

    def test_real_parameters(self):
        rep = determinant_roots_check(0.8, 0.31, 0.3, 2.0)
        assert rep.passed

    def test_branch_point_rejected(self):
        # p^2 + q^2 = 0 collapses beta to zero
        with pytest.raises(ValueError, match="branch point"):
            determinant_roots_check(1.0, 1.0j, 0.3, 1.0)
        # c(p^2 + q^2) = 1 collapses gamma to zero
        with pytest.raises(ValueError, match="branch point"):
            determinant_roots_check(1.0, 0.0, 0.3, 1.0)


class TestSolutionCoefficients:
    def test_sample_fields(self):
        s = solution_coefficients(0.5, 0.2, M, LOAD)
        assert isinstance(s, TransformSample)
        assert s.p == 0.5 + 0j and s.q == 0.2 + 0j

    def test_branch_selection(self):
        for p, q in sample_points(20):
            s = solution_coefficients(p, q, M, LOAD)
            assert s.beta.real >= 0.0
            assert s.gamma.real >= 0.0

    def test_root_identity(self):
        # gamma^2 - beta^2 = 1/c exactly defines the two exponents
        for c in (0.09, 1.0, 16.0):
            mat = Material(mu=1.0, nu=0.3, c=c)
            for p, q in sample_points(6, c=c):
                s = solution_coefficients(p, q, mat, LOAD)
                np.testing.assert_allclose(s.gamma**2 - s.beta**2, 1.0 / c,
                                           rtol=1e-12)

    def test_linearity_in_load(self):
        s1 = solution_coefficients(0.4 + 0.1j, 0.3, M, PointLoad(1.0))
        s9 = solution_coefficients(0.4 + 0.1j, 0.3, M, PointLoad(9.0))
        for name in ("a1", "a2", "a3", "b1", "b2", "b3"):
            np.testing.assert_allclose(getattr(s9, name),
                                       9.0 * getattr(s1, name), rtol=1e-14)

    def test_big_n_equals_lambda_on_the_inversion_contour(self):
        # at p = -i xi, q = 0 the scaled denominator reduces to Lambda(rho')
        for rho_p in np.logspace(-2, 3, 30):
            s = solution_coefficients(complex(0.0, -rho_p), 0.0, M, LOAD)
            np.testing.assert_allclose(s.big_n.real, lambda_cap(rho_p, M.nu),
                                       rtol=1e-12)
            assert abs(s.big_n.imag) < 1e-12 * abs(s.big_n.real)


class TestTransformedState:
    def test_route_agreement(self):
        # direct printed forms vs general-coefficient assembly; the floor is
        # roundoff of the larger intermediate terms, so compare in max norm
        for p, q in sample_points(20):
            state = transformed_state(p, q, 0.37, M, LOAD)
            ref = np.max(np.abs(state.u_star))
            for a, b in zip(state.u_star, state.u_star_general):
                assert abs(a - b) <= 1e-9 * ref

    def test_route_agreement_dimensional(self):
        for p, q in sample_points(10, c=M_DIM.c):
            state = transformed_state(p, q, 0.1, M_DIM, PointLoad(3.5))
            ref = np.max(np.abs(state.u_star))
            for a, b in zip(state.u_star, state.u_star_general):
                assert abs(a - b) <= 1e-9 * ref

    def test_decay_with_depth(self):
        # decay holds on the physical inversion contour p = -i xi, where the
        # exponents are real positive (for real symbol samples the depth
        # dependence oscillates instead)
        p, q = -0.6j, -0.45j
        s = solution_coefficients(p, q, M, LOAD)
        np.testing.assert_allclose(s.beta, 0.75, rtol=1e-14)
        shallow = transformed_state(p, q, 0.0, M, LOAD)
        deep = transformed_state(p, q, 40.0, M, LOAD)
        assert np.max(np.abs(deep.u_star)) < 1e-8 * np.max(np.abs(shallow.u_star))

    def test_double_stress_in_plane_identities(self):
        # m_13k = c p tau_3k and m_23k = c q tau_3k hold exactly
        p, q = 0.8 + 0.2j, -0.5 + 0.1j
        state = transformed_state(p, q, 0.25, M_DIM, LOAD)
        for k, key in (("1", "31"), ("2", "32"), ("3", "33")):
            np.testing.assert_allclose(state.m_star["13" + k],
                                       M_DIM.c * p * state.tau_star[key], rtol=0)
            np.testing.assert_allclose(state.m_star["23" + k],
                                       M_DIM.c * q * state.tau_star[key], rtol=0)

    def test_double_stress_depth_derivative(self):
        # m_3kl = c dtau_kl/dx3, checked against a central difference
        p, q = 0.6, 0.3
        x3, h = 0.8, 1e-6
        state = transformed_state(p, q, x3, M, LOAD)
        up = transformed_state(p, q, x3 + h, M, LOAD)
        dn = transformed_state(p, q, x3 - h, M, LOAD)
        for kl in ("11", "22", "33", "12", "31", "32"):
            fd = (up.tau_star[kl] - dn.tau_star[kl]) / (2.0 * h)
            np.testing.assert_allclose(state.m_star["3" + kl], M.c * fd,
                                       rtol=1e-8, atol=1e-12)

    def test_stress_symmetry_of_shear_keys(self):
        state = transformed_state(0.7, 0.4, 0.0, M, LOAD)
        # the constitutive law stores one entry per symmetric pair
        assert set(state.tau_star) == {"11", "22", "33", "12", "31", "32"}

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            transformed_state(0.5, 0.2, -0.1, M, LOAD)

    def test_general_route_needs_nonzero_p(self):
        with pytest.raises(ValueError, match="p != 0"):
            _displacements_general(0.0, 0.5, M, LOAD)


class TestBoundaryResiduals:
    def test_residuals_tiny(self):
        for p, q in sample_points(20):
            rep = boundary_residuals(p, q, M, LOAD)
            assert isinstance(rep, BoundaryReport)
            assert rep.max_relative < 1e-10

    def test_residuals_tiny_dimensional(self):
        for p, q in sample_points(10, c=M_DIM.c):
            rep = boundary_residuals(p, q, M_DIM, PointLoad(7.0))
            assert rep.max_relative < 1e-10

    def test_six_conditions_reported(self):
        rep = boundary_residuals(0.5, 0.2, M, LOAD)
        assert rep.residuals.shape == (6,)
        assert rep.scales.shape == (6,)
        assert np.all(rep.scales > 0.0)

    def test_perturbation_probe(self):
        # a 1e-6 coefficient corruption must light up the residuals; this is
        # the check that the residuals cannot pass vacuously
        for p, q in sample_points(6):
            clean = boundary_residuals(p, q, M, LOAD).max_relative
            dirty = boundary_residuals(p, q, M, LOAD, perturb_rel=1e-6).max_relative
            assert dirty >= 1e-7
            assert dirty > 100.0 * clean


class TestOdeResidual:
    def test_residuals_tiny(self):
        rng = np.random.default_rng(4242)
        for p, q in sample_points(15):
            x3 = float(rng.uniform(0.0, 3.0))
            rep = ode_residual(p, q, x3, M)
            assert rep.max_relative < 1e-10

    def test_surface_and_depth(self):
        for x3 in (0.0, 0.5, 5.0):
            rep = ode_residual(0.7 + 0.1j, 0.2 - 0.4j, x3, M_DIM)
            assert rep.max_relative < 1e-10

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            ode_residual(0.5, 0.2, -1.0, M)


class TestVerificationSweep:
    def test_full_sweep_passes(self, material, unit_load):
        rep = verification_sweep(material, unit_load, n_samples=100, seed=12345)
        assert isinstance(rep, VerificationReport)
        assert rep.passed
        assert rep.max_boundary_rel < 1e-10
        assert rep.max_ode_rel < 1e-10
        assert rep.det_root_residual_max < 1e-10
        assert rep.det_third_deriv_floor > 1e-4
        assert rep.contour_identity_dev < 1e-12

    def test_deterministic(self, material, unit_load):
        a = verification_sweep(material, unit_load, n_samples=25, seed=7)
        b = verification_sweep(material, unit_load, n_samples=25, seed=7)
        assert a == b

    def test_seed_changes_samples(self, material, unit_load):
        a = verification_sweep(material, unit_load, n_samples=25, seed=1)
        b = verification_sweep(material, unit_load, n_samples=25, seed=2)
        assert a.worst_boundary_sample != b.worst_boundary_sample

    def test_collect_samples(self, material, unit_load):
        rep = verification_sweep(material, unit_load, n_samples=10, seed=3,
                                 collect_samples=True)
        assert len(rep.samples) == 10
        for p, q, bc_rel, ode_rel in rep.samples:
            assert bc_rel < 1e-10 and ode_rel < 1e-10

    def test_perturbation_fails_the_sweep(self, material, unit_load):
        rep = verification_sweep(material, unit_load, n_samples=10, seed=3,
                                 perturb_rel=1e-6)
        assert not rep.passed
        assert rep.max_boundary_rel >= 1e-7

    def test_dimensional_material(self):
        rep = verification_sweep(M_DIM, PointLoad(2.0), n_samples=30, seed=99)
        assert rep.passed
