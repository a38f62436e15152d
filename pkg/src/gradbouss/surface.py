"""Normalized and dimensional surface displacements of the point-load solution.

The normalized radial and vertical surface displacements are

    ur_hat(r') = (1 - 2 nu) [K1(r') - 1/r'] + (1 - nu) * int_0^inf G J1 rho' drho'
    u3_hat(r') = (pi (1-nu)/2) [I0(r') - L0(r')] - (1 - nu) * int_0^inf H J0 rho' drho'

with the closed-form parts delegated to specfun and the kernel integrals to
the oscillatory quadrature engine.  Unlike the classical half-space solution,
both displacements stay bounded at the load point: ur_hat(0) = 0 exactly and
u3_hat(0) is finite and follows the fit 1.286 - 1.166*nu closely.

Physical displacements are u_r = P * ur_hat / (4 pi mu sqrt(c)) and
u_3 = P * u3_hat / (2 pi mu sqrt(c)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import specfun
from .kernels import kernel_G, kernel_H
from .model import Material, PointLoad
from .quadrature import QuadratureResult, QuadratureSpec, integrate_bessel

__all__ = [
    "SurfaceProfile",
    "SurfaceComponents",
    "u3_hat",
    "ur_hat",
    "u3_hat_result",
    "ur_hat_result",
    "classical_u3_hat",
    "classical_ur_hat",
    "classical_surface",
    "decompose",
    "max_settlement",
    "settlement_curve",
    "settlement_fit",
    "radial_peak",
    "surface_profile",
    "SETTLEMENT_FIT_NU_GRID",
]

# Poisson-ratio grid used for the settlement fit and the sweep command.
SETTLEMENT_FIT_NU_GRID = np.round(np.arange(0.0, 0.46, 0.05), 2)


@dataclass(frozen=True)
class SurfaceProfile:
    """Normalized displacement profile on an ordered radius grid.

    Classical counterparts are NaN at r' = 0 where they diverge; the
    quadrature diagnostics carry one entry per grid point.
    """

    nu: float
    r_prime: np.ndarray
    u3_hat: np.ndarray
    ur_hat: np.ndarray
    u3_classical_hat: np.ndarray
    ur_classical_hat: np.ndarray
    u3_quad: tuple
    ur_quad: tuple

    @property
    def all_converged(self) -> bool:
        return all(res.converged for res in self.u3_quad + self.ur_quad)


@dataclass(frozen=True)
class SurfaceComponents:
    """Six-term split of the normalized displacements at one radius.

    The radial triple sums to ur_hat and the vertical triple to u3_hat;
    the classical and first gradient term of each triple have closed forms.
    """

    r_prime: float
    i_class: float
    i_grad1: float
    i_grad2: float
    ii_class: float
    ii_grad1: float
    ii_grad2: float

    @property
    def ur_total(self) -> float:
        return self.i_class + self.i_grad1 + self.i_grad2

    @property
    def u3_total(self) -> float:
        return self.ii_class + self.ii_grad1 + self.ii_grad2


def _check_nu(nu: float) -> float:
    # reuse the material validation with dummy admissible mu, c
    from .model import validate_material
    validate_material(1.0, nu, 1.0)
    return float(nu)


def u3_hat_result(r_p: float, nu: float, spec: QuadratureSpec | None = None):
    """Normalized vertical displacement with its quadrature diagnostic."""
    nu = _check_nu(nu)
    r_p = float(r_p)
    if r_p < 0.0:
        raise ValueError("r_p must be nonnegative")
    if spec is None:
        spec = QuadratureSpec()
    closed = 0.5 * math.pi * (1.0 - nu) * specfun.i0_minus_l0(r_p)
    quad = integrate_bessel(lambda x: kernel_H(x, nu) * x, 0, r_p, spec)
    return closed - (1.0 - nu) * quad.value, quad


def ur_hat_result(r_p: float, nu: float, spec: QuadratureSpec | None = None):
    """Normalized radial displacement with its quadrature diagnostic."""
    nu = _check_nu(nu)
    r_p = float(r_p)
    if r_p < 0.0:
        raise ValueError("r_p must be nonnegative")
    if spec is None:
        spec = QuadratureSpec()
    if r_p == 0.0:
        # K1(r') - 1/r' -> 0 and the J1 integral vanishes identically
        return 0.0, QuadratureResult(value=0.0, err_est=0.0, intervals_used=0, converged=True)
    closed = (1.0 - 2.0 * nu) * specfun.k1_minus_recip(r_p)
    quad = integrate_bessel(lambda x: kernel_G(x, nu) * x, 1, r_p, spec)
    return closed + (1.0 - nu) * quad.value, quad


def u3_hat(r_p: float, nu: float, spec: QuadratureSpec | None = None) -> float:
    return u3_hat_result(r_p, nu, spec)[0]


def ur_hat(r_p: float, nu: float, spec: QuadratureSpec | None = None) -> float:
    return ur_hat_result(r_p, nu, spec)[0]


def classical_u3_hat(r_p, nu: float):
    """Classical normalized vertical displacement (1 - nu)/r', singular at 0."""
    arr = np.asarray(r_p, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("classical solution is singular at r' = 0; require r' > 0")
    out = (1.0 - nu) / arr
    return float(out) if out.ndim == 0 else out


def classical_ur_hat(r_p, nu: float):
    """Classical normalized radial displacement -(1 - 2 nu)/r', singular at 0."""
    arr = np.asarray(r_p, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("classical solution is singular at r' = 0; require r' > 0")
    out = -(1.0 - 2.0 * nu) / arr
    return float(out) if out.ndim == 0 else out


def classical_surface(r: float, material: Material, load: PointLoad):
    """Classical half-space surface displacements (u_r, u_theta, u_3) at radius r."""
    r = float(r)
    if r <= 0.0:
        raise ValueError("classical solution is singular at r = 0; require r > 0")
    P, mu, nu = load.magnitude, material.mu, material.nu
    u_r = -P * (1.0 - 2.0 * nu) / (4.0 * math.pi * mu * r)
    u_3 = P * (1.0 - nu) / (2.0 * math.pi * mu * r)
    return u_r, 0.0, u_3


def decompose(r_p: float, nu: float, spec: QuadratureSpec | None = None) -> SurfaceComponents:
    """Split both displacements into classical + two gradient corrections."""
    nu = _check_nu(nu)
    r_p = float(r_p)
    if r_p <= 0.0:
        raise ValueError("decomposition is defined for r' > 0 (classical parts diverge at 0)")
    if spec is None:
        spec = QuadratureSpec()
    k1 = float(specfun.bessel_k1(r_p))
    i0l0 = float(specfun.i0_minus_l0(r_p))
    g_quad = integrate_bessel(lambda x: kernel_G(x, nu) * x, 1, r_p, spec)
    h_quad = integrate_bessel(lambda x: kernel_H(x, nu) * x, 0, r_p, spec)
    return SurfaceComponents(
        r_prime=r_p,
        i_class=-(1.0 - 2.0 * nu) / r_p,
        i_grad1=(1.0 - 2.0 * nu) * k1,
        i_grad2=(1.0 - nu) * g_quad.value,
        ii_class=(1.0 - nu) / r_p,
        ii_grad1=-(1.0 - nu) / r_p + 0.5 * math.pi * (1.0 - nu) * i0l0,
        ii_grad2=-(1.0 - nu) * h_quad.value,
    )


def max_settlement(nu: float, spec: QuadratureSpec | None = None) -> float:
    """Normalized settlement directly under the load, u3_hat(0, nu)."""
    return u3_hat(0.0, nu, spec)


def settlement_curve(nu_values, spec: QuadratureSpec | None = None) -> np.ndarray:
    """u3_hat(0, nu) for each nu in nu_values."""
    return np.array([max_settlement(float(nu), spec) for nu in nu_values])


def settlement_fit(spec: QuadratureSpec | None = None):
    """Least-squares line through u3_hat(0, nu) over the standard nu grid.

    Returns (intercept, slope); expected near (1.286, -1.166).
    """
    nus = SETTLEMENT_FIT_NU_GRID
    values = settlement_curve(nus, spec)
    slope, intercept = np.polyfit(nus, values, 1)
    return float(intercept), float(slope)


def radial_peak(nu: float, spec: QuadratureSpec | None = None):
    """Locate the extremum of ur_hat on r' in (0, 10].

    Returns (r_peak, value).  A coarse scan brackets the largest |ur_hat|
    and a bounded scalar minimization refines it.
    """
    nu = _check_nu(nu)
    grid = np.linspace(0.1, 10.0, 50)
    values = np.array([ur_hat(float(r), nu, spec) for r in grid])
    idx = int(np.argmax(np.abs(values)))
    lo = grid[max(idx - 1, 0)]
    hi = grid[min(idx + 1, len(grid) - 1)]
    result = minimize_scalar(lambda r: -abs(ur_hat(float(r), nu, spec)),
                             bounds=(lo, hi), method="bounded",
                             options={"xatol": 1e-5})
    r_peak = float(result.x)
    return r_peak, ur_hat(r_peak, nu, spec)


def surface_profile(nu: float, spec: QuadratureSpec | None = None,
                    r_max: float = 20.0, n_points: int = 200) -> SurfaceProfile:
    """Evaluate both displacements on r' = 0 plus a log grid up to r_max."""
    nu = _check_nu(nu)
    if r_max <= 1e-3:
        raise ValueError("r_max must exceed 1e-3")
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    grid = np.concatenate([[0.0], np.logspace(-3.0, math.log10(r_max), n_points)])
    u3_vals = np.empty(len(grid))
    ur_vals = np.empty(len(grid))
    u3_quad = []
    ur_quad = []
    for i, r in enumerate(grid):
        v3, q3 = u3_hat_result(float(r), nu, spec)
        vr, qr = ur_hat_result(float(r), nu, spec)
        u3_vals[i] = v3
        ur_vals[i] = vr
        u3_quad.append(q3)
        ur_quad.append(qr)
    with np.errstate(divide="ignore"):
        u3_class = np.where(grid > 0.0, (1.0 - nu) / np.where(grid > 0, grid, 1.0), np.nan)
        ur_class = np.where(grid > 0.0, -(1.0 - 2.0 * nu) / np.where(grid > 0, grid, 1.0), np.nan)
    return SurfaceProfile(nu=nu, r_prime=grid, u3_hat=u3_vals, ur_hat=ur_vals,
                          u3_classical_hat=u3_class, ur_classical_hat=ur_class,
                          u3_quad=tuple(u3_quad), ur_quad=tuple(ur_quad))
