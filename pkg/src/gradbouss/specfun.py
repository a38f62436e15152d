"""Real-argument special functions used by the closed-form displacement terms.

Plain evaluations (Bessel J0/J1, modified Bessel I0/K1, modified Struve L0,
positive Bessel zeros) are delegated to scipy, which meets the accuracy
targets of this package with orders of magnitude to spare.  Two combinations
need dedicated treatment because the naive difference cancels:

* ``i0_minus_l0``: I0(x) and L0(x) both grow like exp(x)/x**0.5 while their
  difference decays like 2/(pi*x), so the subtraction loses all precision
  beyond moderate x.  The difference has the integral representation
  (2/pi) * int_0^{pi/2} exp(-x*sin(s)) ds, which we evaluate with fixed
  Gauss-Legendre panels clustered in the boundary layer near s = 0.

* ``k1_minus_recip``: K1(x) - 1/x is O(x*log(x)) near the origin while each
  part diverges; a truncated ascending series handles small x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special as _sp

__all__ = [
    "SpecFunResult",
    "bessel_j",
    "bessel_i0",
    "bessel_k1",
    "struve_l0",
    "bessel_zero",
    "i0_minus_l0",
    "k1_minus_recip",
    "evaluate",
]

_EULER_GAMMA = 0.5772156649015329

# 40-node Gauss-Legendre rule, reused across panels of the i0_minus_l0
# integral; exact for polynomial degree 79, far beyond what the smooth
# exponential integrand needs per panel.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(40)


@dataclass(frozen=True)
class SpecFunResult:
    """A function value together with a conservative error estimate.

    ``est_abs_err`` bounds the absolute error for values of order one and
    degrades proportionally for large values (it is a mixed absolute and
    relative bound, est <= factor * max(1, |value|)).
    """

    value: float
    est_abs_err: float


def _check_nonneg(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite")
    if x < 0.0:
        raise ValueError(f"{name} must be nonnegative")
    return x


def bessel_j(order: int, x):
    """Bessel function of the first kind, order 0 or 1."""
    if order == 0:
        return _sp.j0(x)
    if order == 1:
        return _sp.j1(x)
    raise ValueError("order must be 0 or 1")


def bessel_i0(x):
    """Modified Bessel function I0(x), x >= 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("x must be nonnegative")
    return _sp.i0(x)


def bessel_k1(x):
    """Modified Bessel function K1(x), x > 0 (pole at the origin)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("K1 requires x > 0")
    return _sp.k1(x)


def struve_l0(x):
    """Modified Struve function L0(x), x >= 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("x must be nonnegative")
    return _sp.modstruve(0, x)


def bessel_zero(order: int, k: int) -> float:
    """k-th positive zero of J0 or J1 (k >= 1)."""
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    if k < 1:
        raise ValueError("k must be a positive integer")
    return float(_sp.jn_zeros(order, k)[-1])


def _i0_minus_l0_scalar(x: float) -> float:
    # Panels of width 1/x doubling away from s = 0 resolve the exp(-x*sin s)
    # boundary layer; a single panel suffices for x <= 1.
    if x == 0.0:
        return 1.0
    if x <= 1.0:
        edges = [0.0, 0.5 * math.pi]
    else:
        edges = [0.0]
        h = 1.0 / x
        while edges[-1] + h < 0.5 * math.pi:
            edges.append(edges[-1] + h)
            h *= 2.0
        edges.append(0.5 * math.pi)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        s = 0.5 * (b - a) * _GL_NODES + 0.5 * (a + b)
        total += 0.5 * (b - a) * float(np.sum(_GL_WEIGHTS * np.exp(-x * np.sin(s))))
    return (2.0 / math.pi) * total


def i0_minus_l0(x):
    """I0(x) - L0(x) without cancellation, valid for all x >= 0.

    The difference decays like 2/(pi*x) for large x while both parts grow
    exponentially, so it is computed from its own integral representation.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("x must be nonnegative")
    if arr.ndim == 0:
        return _i0_minus_l0_scalar(float(arr))
    return np.array([_i0_minus_l0_scalar(float(v)) for v in arr.ravel()]).reshape(arr.shape)


def _k1_minus_recip_series(x: float) -> float:
    # K1(x) - 1/x = log(x/2)*I1(x) - (x/4) * sum_k [psi(k+1)+psi(k+2)] t^k / (k! (k+1)!)
    # with t = x^2/4; psi(k+1) = -euler_gamma + H_k.  Truncation at k = 12
    # leaves terms below 1e-30 for x < 0.5.
    t = 0.25 * x * x
    i1 = 0.0
    psum = 0.0
    term = 1.0
    harmonic = 0.0
    for k in range(13):
        psi_a = -_EULER_GAMMA + harmonic
        psi_b = -_EULER_GAMMA + harmonic + 1.0 / (k + 1.0)
        psum += (psi_a + psi_b) * term
        i1 += term
        harmonic += 1.0 / (k + 1.0)
        term *= t / ((k + 1.0) * (k + 2.0))
    i1 *= 0.5 * x
    return math.log(0.5 * x) * i1 - 0.25 * x * psum


def k1_minus_recip(x):
    """K1(x) - 1/x without cancellation at small x.

    Below x = 0.5 the ascending series is used; above it the direct
    difference is safe (the two parts differ by O(1) there).
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("requires x > 0")

    def scalar(v: float) -> float:
        if v < 0.5:
            return _k1_minus_recip_series(v)
        return float(_sp.k1(v)) - 1.0 / v

    if arr.ndim == 0:
        return scalar(float(arr))
    return np.array([scalar(float(v)) for v in arr.ravel()]).reshape(arr.shape)


# Conservative per-function error factors (validated against 50-digit
# references in the test suite): est = factor * max(1, |value|).
_ERR_FACTORS = {
    "j0": 5e-15,
    "j1": 5e-15,
    "i0": 1e-14,
    "k1": 1e-14,
    "l0": 1e-12,
    "i0_minus_l0": 1e-13,
    "k1_minus_recip": 1e-13,
}

_EVALUATORS = {
    "j0": lambda x: float(_sp.j0(x)),
    "j1": lambda x: float(_sp.j1(x)),
    "i0": lambda x: float(bessel_i0(x)),
    "k1": lambda x: float(bessel_k1(x)),
    "l0": lambda x: float(struve_l0(x)),
    "i0_minus_l0": lambda x: float(i0_minus_l0(x)),
    "k1_minus_recip": lambda x: float(k1_minus_recip(x)),
}


def evaluate(name: str, x: float) -> SpecFunResult:
    """Evaluate a named special function with an attached error estimate."""
    try:
        fn = _EVALUATORS[name]
    except KeyError:
        raise ValueError(f"unknown special function {name!r}") from None
    value = fn(x)
    est = _ERR_FACTORS[name] * max(1.0, abs(value))
    return SpecFunResult(value=value, est_abs_err=est)
