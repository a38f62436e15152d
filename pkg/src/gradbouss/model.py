"""Material parameters, admissibility checks, and unit conversions.

The half space is described by three constants: the shear modulus mu, the
Poisson ratio nu, and the gradient coefficient c which carries dimensions
of length squared.  The square root of c is the internal length of the
material and sets the scale over which the response departs from the
classical elastic solution.  Everything downstream of this module works in
dimensionless variables; physical units enter and leave only through the
helpers defined here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# The first Lame constant 2*mu*nu/(1 - 2*nu) diverges at nu = 0.5, so
# values this close to the incompressible limit are rejected outright.
_NU_CEILING = 0.5 - 1e-6


def validate_material(mu: float, nu: float, c: float) -> None:
    """Raise ValueError unless (mu, nu, c) is an admissible parameter set."""
    if not (math.isfinite(mu) and math.isfinite(nu) and math.isfinite(c)):
        raise ValueError("material constants must be finite")
    if mu <= 0.0:
        raise ValueError("shear modulus mu must be positive")
    if c <= 0.0:
        raise ValueError("gradient coefficient c must be positive")
    if nu <= -1.0:
        raise ValueError("nu must exceed -1 for a positive definite energy")
    if nu >= _NU_CEILING:
        raise ValueError("nu at incompressible limit: require nu < 0.5 - 1e-6")


@dataclass(frozen=True)
class Material:
    """Isotropic gradient elastic material.

    Attributes
    ----------
    mu : shear modulus, force / length**2.
    nu : Poisson ratio, dimensionless, in (-1, 0.5).
    c : gradient coefficient, length**2.
    """

    mu: float
    nu: float
    c: float

    def __post_init__(self) -> None:
        validate_material(self.mu, self.nu, self.c)

    @property
    def length(self) -> float:
        """Internal material length sqrt(c)."""
        return math.sqrt(self.c)

    @property
    def lame_lambda(self) -> float:
        """First Lame constant 2*mu*nu/(1 - 2*nu)."""
        return 2.0 * self.mu * self.nu / (1.0 - 2.0 * self.nu)


@dataclass(frozen=True)
class PointLoad:
    """Concentrated normal force pressing into the half space at the origin.

    Positive magnitude pushes into the body; the surface settles downward
    under it.
    """

    magnitude: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.magnitude):
            raise ValueError("load magnitude must be finite")


def validate(material: Material) -> None:
    """Re-check an existing Material instance (no-op if admissible)."""
    validate_material(material.mu, material.nu, material.c)


def normalize_radius(r, c: float):
    """Convert physical radius r to the dimensionless radius r / sqrt(c)."""
    if c <= 0.0:
        raise ValueError("c must be positive")
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("radius must be nonnegative")
    out = arr / math.sqrt(c)
    return float(out) if out.ndim == 0 else out


def radial_scale(material: Material, load: PointLoad) -> float:
    """Physical radial displacement per unit of normalized u_r."""
    return load.magnitude / (4.0 * math.pi * material.mu * material.length)


def vertical_scale(material: Material, load: PointLoad) -> float:
    """Physical vertical displacement per unit of normalized u_3."""
    return load.magnitude / (2.0 * math.pi * material.mu * material.length)


def dimensionalize(ur_hat, u3_hat, material: Material, load: PointLoad):
    """Convert normalized surface displacements to physical ones.

    Returns (u_r, u_3) where u_r = P * ur_hat / (4 pi mu sqrt(c)) and
    u_3 = P * u3_hat / (2 pi mu sqrt(c)).
    """
    ur = np.asarray(ur_hat, dtype=float) * radial_scale(material, load)
    u3 = np.asarray(u3_hat, dtype=float) * vertical_scale(material, load)
    if ur.ndim == 0:
        return float(ur), float(u3)
    return ur, u3
