"""Settlement under distributed axisymmetric surface loads.

The point-load solution acts as a Green's function: the settlement under a
pressure distribution p(r0) supported on a disc of radius a0 is the double
integral of p times the vertical point-load response over the loaded area.
Only the vertical settlement is convolved (the primary engineering
quantity).

The Green's function is sampled through an interpolation table of u3_hat
(cubic spline over log-spaced nodes plus the exact origin value, classical
1/r' continuation beyond the table) because the convolution evaluates it
tens of thousands of times; the table reproduces direct evaluation to
better than 1e-5 relative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .model import Material, PointLoad, vertical_scale
from .quadrature import QuadratureSpec, integrate_adaptive
from .surface import u3_hat

__all__ = [
    "AxisymmetricLoad",
    "SettlementTable",
    "settlement_profile",
]


@dataclass(frozen=True)
class AxisymmetricLoad:
    """Axisymmetric pressure p(r0) supported on r0 <= radius.

    pressure is a vectorized callable of the physical radius; use
    AxisymmetricLoad.uniform for constant pressure over the disc.
    """

    radius: float
    pressure: Callable

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError("load radius must be positive")

    @staticmethod
    def uniform(radius: float, pressure_value: float) -> "AxisymmetricLoad":
        value = float(pressure_value)
        return AxisymmetricLoad(radius=float(radius),
                                pressure=lambda r0: np.full_like(np.asarray(r0, float), value))

    def resultant(self, spec: QuadratureSpec | None = None) -> float:
        """Total force 2 pi int_0^a0 p(r0) r0 dr0."""
        res = integrate_adaptive(lambda r0: self.pressure(r0) * r0, 0.0, self.radius, spec)
        return 2.0 * math.pi * res.value


class SettlementTable:
    """Cubic-spline table of u3_hat(r') with classical continuation.

    Nodes are r' = 0 plus n_nodes log-spaced points up to r_max_prime;
    beyond the table the classical (1 - nu)/r' value is returned (the
    gradient correction there is below the table's own error).
    """

    def __init__(self, nu: float, spec: QuadratureSpec | None = None,
                 r_max_prime: float = 120.0, n_nodes: int = 400):
        if n_nodes < 50:
            raise ValueError("n_nodes too small for the accuracy target")
        self.nu = float(nu)
        self.r_max_prime = float(r_max_prime)
        nodes = np.concatenate([[0.0], np.logspace(-3.0, math.log10(self.r_max_prime), n_nodes)])
        values = np.array([u3_hat(float(r), self.nu, spec) for r in nodes])
        self._spline = CubicSpline(nodes, values)

    def u3_hat_at(self, r_p):
        """Vectorized u3_hat lookup (spline inside, classical tail outside)."""
        arr = np.asarray(r_p, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        out = np.empty_like(arr)
        inside = arr <= self.r_max_prime
        out[inside] = self._spline(arr[inside])
        out[~inside] = (1.0 - self.nu) / arr[~inside]
        return float(out[0]) if scalar else out


def settlement_profile(load: AxisymmetricLoad, material: Material, eval_radii,
                       spec: QuadratureSpec | None = None,
                       table: SettlementTable | None = None) -> np.ndarray:
    """Vertical surface settlement u3 at each physical radius in eval_radii.

    Superposition integral (normalized in-plane distances):

        u3(r) = int_0^a0 p(r0) r0 [ int_0^2pi g3(dist) dphi ] dr0,

    with g3 the dimensional vertical Green's function and dist the distance
    from the evaluation point to the running load point.  The angular
    integral is symmetric about phi = pi, so it is computed as twice the
    [0, pi] adaptive integral; the radial integral is adaptive as well.
    """
    if spec is None:
        spec = QuadratureSpec()
    if table is None:
        table = SettlementTable(material.nu, spec)
    if table.nu != material.nu:
        raise ValueError("table was built for a different Poisson ratio")
    scalar_input = np.asarray(eval_radii).ndim == 0
    radii = np.atleast_1d(np.asarray(eval_radii, dtype=float))
    if np.any(radii < 0.0):
        raise ValueError("evaluation radii must be nonnegative")
    ell = material.length
    # per unit point force, normalized by the table lookup
    green_scale = vertical_scale(material, PointLoad(1.0))
    # the angular integral is smooth but needs moderate tolerance only:
    # overall accuracy is limited by the table (~1e-5 relative)
    inner_spec = QuadratureSpec(rel_tol=max(spec.rel_tol, 1e-8),
                                abs_tol=max(spec.abs_tol, 1e-12),
                                max_zero_intervals=spec.max_zero_intervals)

    out = np.empty(len(radii))
    for i, r in enumerate(radii):

        def angular(r0_scalar: float) -> float:
            def f(phi):
                dist = np.sqrt(r * r + r0_scalar * r0_scalar
                               - 2.0 * r * r0_scalar * np.cos(phi))
                return table.u3_hat_at(dist / ell)
            res = integrate_adaptive(f, 0.0, math.pi, inner_spec)
            return 2.0 * res.value

        def radial_integrand(r0):
            r0 = np.atleast_1d(np.asarray(r0, dtype=float))
            ang = np.array([angular(float(v)) for v in r0])
            return load.pressure(r0) * r0 * ang

        res = integrate_adaptive(radial_integrand, 0.0, load.radius, inner_spec)
        out[i] = green_scale * res.value
    return float(out[0]) if scalar_input else out
