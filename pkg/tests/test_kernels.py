"""Spectral kernels: frozen values, route agreement, sign, and asymptotics.

Frozen literals come from a 40-digit mpmath evaluation of the textbook
expressions; the rationalized production forms must reproduce them and stay
well conditioned far beyond where the textbook forms disintegrate.
"""

from __future__ import annotations

import numpy as np
import pytest

from gradbouss import Material, PointLoad
from gradbouss.kernels import (
    _kernel_G_direct,
    _kernel_H_direct,
    _lambda_cap_direct,
    gamma_prime,
    kernel_G,
    kernel_H,
    lambda_cap,
    spectral_amplitudes_F,
    spectral_point,
)

NU_GRID = (0.0, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49)


class TestFrozenValues:
    """40-digit mpmath references at nu = 0.3 (and two nu extremes)."""

    def test_lambda(self):
        np.testing.assert_allclose(lambda_cap(0.5, 0.3), -1.2887287570313157199, rtol=1e-14)
        np.testing.assert_allclose(lambda_cap(1.0, 0.3), -2.7862915010152396096, rtol=1e-14)
        np.testing.assert_allclose(lambda_cap(4.0, 0.3), -31.344317311941287177, rtol=1e-14)

    def test_kernel_g(self):
        np.testing.assert_allclose(kernel_G(0.5, 0.3), 0.42054311917316480064, rtol=1e-14)
        np.testing.assert_allclose(kernel_G(1.0, 0.3), 0.1949350060141640117, rtol=1e-14)
        np.testing.assert_allclose(kernel_G(4.0, 0.3), 0.0068707065904575710869, rtol=1e-14)

    def test_kernel_h(self):
        np.testing.assert_allclose(kernel_H(0.5, 0.3), 0.15099360692725123386, rtol=1e-14)
        np.testing.assert_allclose(kernel_H(1.0, 0.3), 0.082073127078424327571, rtol=1e-14)
        np.testing.assert_allclose(kernel_H(4.0, 0.3), 0.003378470876084063491, rtol=1e-14)

    def test_nu_extremes(self):
        np.testing.assert_allclose(lambda_cap(1.0, 0.0), -3.6862915010152396096, rtol=1e-14)
        np.testing.assert_allclose(kernel_G(1.0, 0.0), 0.22872465464964164546, rtol=1e-14)
        np.testing.assert_allclose(kernel_H(1.0, 0.0), 0.10272645457801301421, rtol=1e-14)
        np.testing.assert_allclose(lambda_cap(1.0, 0.45), -2.3362915010152396096, rtol=1e-14)
        np.testing.assert_allclose(kernel_G(1.0, 0.45), 0.16827769579985101286, rtol=1e-14)
        np.testing.assert_allclose(kernel_H(1.0, 0.45), 0.065779315797525976492, rtol=1e-14)


class TestGammaPrime:
    def test_values(self):
        np.testing.assert_allclose(gamma_prime(0.0), 1.0, rtol=0)
        np.testing.assert_allclose(gamma_prime(1.0), np.sqrt(2.0), rtol=1e-15)

    def test_hyperbolic_identity_moderate_argument(self):
        # (gamma' - rho')(gamma' + rho') = 1 while the subtraction still
        # carries significant bits
        for rho in (0.5, 10.0, 1e3):
            g = gamma_prime(rho)
            np.testing.assert_allclose((g - rho) * (g + rho), 1.0, rtol=1e-9)

    def test_naive_difference_collapses_at_large_argument(self):
        # beyond rho' ~ 1e8 the direct difference underflows to zero ulps;
        # this is the cancellation the rationalized kernel forms eliminate
        g = gamma_prime(1e8)
        assert (g - 1e8) * (g + 1e8) != 1.0
        assert 1.0 / (g + 1e8) > 0.0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            gamma_prime(-0.5)


class TestRouteAgreement:
    """Rationalized and textbook forms agree where both are conditioned."""

    RHO_BAND = np.logspace(-3, 1, 60)  # textbook form healthy up to ~1e2

    def test_lambda_agreement(self):
        for nu in NU_GRID:
            a = lambda_cap(self.RHO_BAND, nu)
            b = _lambda_cap_direct(self.RHO_BAND, nu)
            np.testing.assert_allclose(a, b, rtol=1e-11)

    def test_kernel_agreement(self):
        for nu in NU_GRID:
            np.testing.assert_allclose(kernel_G(self.RHO_BAND, nu),
                                       _kernel_G_direct(self.RHO_BAND, nu), rtol=1e-11)
            np.testing.assert_allclose(kernel_H(self.RHO_BAND, nu),
                                       _kernel_H_direct(self.RHO_BAND, nu), rtol=1e-11)

    def test_textbook_lambda_degrades(self):
        # the rationalized form exists because this transcription loses all
        # precision in the quadrature tail; document the failure mode
        rho = 1e6
        direct = _lambda_cap_direct(rho, 0.3)
        stable = lambda_cap(rho, 0.3)
        assert abs(direct - stable) / abs(stable) > 1e-6


class TestSignAndConditioning:
    def test_lambda_strictly_negative_dense_grid(self):
        rho = np.concatenate(([0.0], np.logspace(-6, 8, 400)))
        for nu in NU_GRID:
            lam = lambda_cap(rho, nu)
            assert np.all(np.isfinite(lam))
            assert np.all(lam < 0.0)

    def test_lambda_at_origin(self):
        # Lambda(0) = -(1 - nu)
        for nu in NU_GRID:
            np.testing.assert_allclose(lambda_cap(0.0, nu), -(1.0 - nu), rtol=1e-15)

    def test_kernels_vanish_at_origin(self):
        for nu in NU_GRID:
            assert kernel_G(0.0, nu) == 0.0
            assert kernel_H(0.0, nu) == 0.0

    def test_kernels_finite_at_extreme_argument(self):
        for nu in NU_GRID:
            assert np.isfinite(kernel_G(1e8, nu))
            assert np.isfinite(kernel_H(1e8, nu))


class TestAsymptotics:
    def test_small_rho_slopes(self):
        # G ~ rho'(3-2nu)/(1-nu), H ~ rho' as rho' -> 0
        for nu in (0.0, 0.3, 0.45):
            rho = 1e-8
            np.testing.assert_allclose(kernel_G(rho, nu) / rho,
                                       (3.0 - 2.0 * nu) / (1.0 - nu), rtol=1e-6)
            np.testing.assert_allclose(kernel_H(rho, nu) / rho, 1.0, rtol=1e-6)

    def test_large_rho_cubic_decay(self):
        # rho'^3 G -> (3/2-2nu)/(5/2-2nu), rho'^3 H -> (3/4-nu)/(5/2-2nu)
        for nu in (0.0, 0.3, 0.45):
            c_g = (1.5 - 2.0 * nu) / (2.5 - 2.0 * nu)
            c_h = (0.75 - nu) / (2.5 - 2.0 * nu)
            for rho in (1e4, 1e6):
                np.testing.assert_allclose(rho**3 * kernel_G(rho, nu), c_g, rtol=1e-3)
                np.testing.assert_allclose(rho**3 * kernel_H(rho, nu), c_h, rtol=1e-3)


class TestSpectralPoint:
    def test_bundle(self):
        pt = spectral_point(1.0, 0.3)
        np.testing.assert_allclose(pt.gamma_p, np.sqrt(2.0), rtol=1e-15)
        np.testing.assert_allclose(pt.lambda_cap, lambda_cap(1.0, 0.3), rtol=0)
        assert pt.rho_p == 1.0


class TestAmplitudesF:
    """The raw transform amplitudes against the normalized kernels.

    With rho' = rho sqrt(c) the identities are
        (2 mu / P) rho F1(rho) = -(1-2nu)/(1+rho'^2) + (1-nu) rho' G(rho')
        (mu / P) rho F2(rho)  = (1-nu) [1/(1+rho'^2) - rho' H(rho')]
    """

    M = Material(mu=2.0, nu=0.3, c=0.25)
    LOAD = PointLoad(3.0)

    def test_f1_identity(self):
        mu, nu, c = self.M.mu, self.M.nu, self.M.c
        P = self.LOAD.magnitude
        for rho in np.logspace(-2, 2, 40):
            rp = rho * np.sqrt(c)
            f1, _ = spectral_amplitudes_F(rho, self.M, self.LOAD)
            lhs = 2.0 * mu / P * rho * f1
            rhs = -(1.0 - 2.0 * nu) / (1.0 + rp * rp) + (1.0 - nu) * rp * kernel_G(rp, nu)
            np.testing.assert_allclose(lhs, rhs, rtol=1e-9, atol=1e-12)

    def test_f2_identity(self):
        mu, nu, c = self.M.mu, self.M.nu, self.M.c
        P = self.LOAD.magnitude
        for rho in np.logspace(-2, 2, 40):
            rp = rho * np.sqrt(c)
            _, f2 = spectral_amplitudes_F(rho, self.M, self.LOAD)
            lhs = mu / P * rho * f2
            rhs = (1.0 - nu) * (1.0 / (1.0 + rp * rp) - rp * kernel_H(rp, nu))
            np.testing.assert_allclose(lhs, rhs, rtol=1e-9, atol=1e-12)

    def test_classical_pole(self):
        # F2 ~ P(1-nu)/(mu rho) as rho -> 0: the classical point-load pole
        rho = 1e-9
        _, f2 = spectral_amplitudes_F(rho, self.M, self.LOAD)
        expected = self.LOAD.magnitude * (1.0 - self.M.nu) / (self.M.mu * rho)
        np.testing.assert_allclose(f2, expected, rtol=1e-6)

    def test_linearity_in_load(self):
        f1a, f2a = spectral_amplitudes_F(1.3, self.M, PointLoad(1.0))
        f1b, f2b = spectral_amplitudes_F(1.3, self.M, PointLoad(-7.0))
        np.testing.assert_allclose([f1b, f2b], [-7.0 * f1a, -7.0 * f2a], rtol=1e-14)

    def test_nonpositive_rho_rejected(self):
        with pytest.raises(ValueError):
            spectral_amplitudes_F(0.0, self.M, self.LOAD)
        with pytest.raises(ValueError):
            spectral_amplitudes_F(-1.0, self.M, self.LOAD)


class TestPoleGuard:
    def test_error_message_names_parameters(self):
        # force the guard by feeding a non-finite intermediate: impossible
        # through the public API with admissible nu, so call with nu past
        # the admissible ceiling where Lambda(0) = -(1-nu) crosses zero
        with pytest.raises(ArithmeticError, match="Lambda"):
            kernel_G(np.array([0.0, 1.0]), 1.0)
