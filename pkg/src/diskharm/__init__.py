"""Poisson extensions on the unit disk and their derivative norms.

Build a harmonic extension f = P[F] from boundary data F, differentiate
it, measure Hardy / Bergman / circle norms, classify quasiregular and
elliptic behaviour, and mechanically verify the derivative-norm
inequalities at desk scale.
"""

__version__ = "0.1.0"

from . import errors
from .boundary import (BoundarySpec, FourierCoefficients,
                       boundary_derivative, discrete_fourier_coefficients,
                       fourier, fourier_coefficients, linear_combination,
                       list_presets, lp_circle_norm, materialize, preset,
                       sampled)
from .calculus import (DerivativePack, LocalGeometry, directional_derivative,
                       local_geometry, polar, wirtinger)
from .config import RunConfig
from .constants import ConstantReport, c_of_p, c_upper_bound, constant_table
from .ellipticity import EllipticityReport, classify, min_kprime, qr_constant
from .extension import (DiskField, HolomorphicPair, extend, extend_oracle,
                        poisson_kernel)
from .norms import (NormReport, ScalarDiskFunction, bergman_norm,
                    circle_mean, dyadic_radii, hardy_norm, scalar_field)
from .verify import (SuiteReport, VerificationReport, check_lemma_fr,
                     check_lemma_ft, check_thm1_bergman, check_thm2_finite,
                     check_thm2_infinite, inequality_verdict,
                     run_counterexample, run_suite)

__all__ = [
    "BoundarySpec", "FourierCoefficients", "boundary_derivative",
    "discrete_fourier_coefficients", "fourier", "fourier_coefficients",
    "linear_combination", "list_presets", "lp_circle_norm", "materialize",
    "preset", "sampled",
    "DerivativePack", "LocalGeometry", "directional_derivative",
    "local_geometry", "polar", "wirtinger",
    "RunConfig",
    "ConstantReport", "c_of_p", "c_upper_bound", "constant_table",
    "EllipticityReport", "classify", "min_kprime", "qr_constant",
    "DiskField", "HolomorphicPair", "extend", "extend_oracle",
    "poisson_kernel",
    "NormReport", "ScalarDiskFunction", "bergman_norm", "circle_mean",
    "dyadic_radii", "hardy_norm", "scalar_field",
    "SuiteReport", "VerificationReport", "check_lemma_fr", "check_lemma_ft",
    "check_thm1_bergman", "check_thm2_finite", "check_thm2_infinite",
    "inequality_verdict", "run_counterexample", "run_suite",
    "errors",
]
