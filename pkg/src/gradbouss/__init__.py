"""Exact surface Green's function of the axisymmetric normal point load on a
gradient-elastic half space, with transform-domain certification, oscillatory
quadrature, and distributed-load superposition."""

from .kernels import (SpectralPoint, gamma_prime, kernel_G, kernel_H, lambda_cap,
                      spectral_amplitudes_F, spectral_point)
from .model import (Material, PointLoad, dimensionalize, normalize_radius,
                    radial_scale, validate, validate_material, vertical_scale)
from .quadrature import (QuadratureError, QuadratureResult, QuadratureSpec,
                         integrate_adaptive, integrate_bessel)
from .specfun import (SpecFunResult, bessel_i0, bessel_j, bessel_k1, bessel_zero,
                      evaluate, i0_minus_l0, k1_minus_recip, struve_l0)
from .superpose import AxisymmetricLoad, SettlementTable, settlement_profile
from .surface import (SurfaceComponents, SurfaceProfile, classical_surface,
                      classical_u3_hat, classical_ur_hat, decompose, max_settlement,
                      radial_peak, settlement_curve, settlement_fit, surface_profile,
                      u3_hat, u3_hat_result, ur_hat, ur_hat_result)
from .transform import (BoundaryReport, DeterminantReport, OdeReport,
                        TransformSample, TransformedState, VerificationReport,
                        boundary_residuals, determinant_roots_check, ode_residual,
                        operator_matrix, solution_coefficients, transformed_state,
                        verification_sweep)

__version__ = "0.1.0"
