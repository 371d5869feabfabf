"""Pure Fisher-Hartwig Toeplitz determinants, computed three independent ways.

D_n(phi) = det(phi_{i-j}) for phi(z) = (1 - z)^alpha (1 - 1/z)^beta can be
obtained numerically from the matrix (``lu_det``), from the Barnes-G closed
form (``closed_form_det``), or through exact rational linear algebra on the
matrices M and D_n(alpha, beta) (``exact_core``).  ``verify`` checks that all
of these agree.
"""
from .determinants import (
    DetReport,
    closed_form_det,
    evaluate,
    lu_det,
    product_form_det,
    reports_agree,
)
from .errors import ConfigError, DenominatorZero, FHDetError, PoleError
from .fh_symbol import Params, ToeplitzSpec, coefficient_sequence, fourier_coefficient, toeplitz_matrix
from .specfun import SignedLog, log_barnes_g_ratio, log_gamma_signed
from .verify import SuiteConfig, VerifyOutcome, run_suite

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DenominatorZero",
    "DetReport",
    "FHDetError",
    "Params",
    "PoleError",
    "SignedLog",
    "SuiteConfig",
    "ToeplitzSpec",
    "VerifyOutcome",
    "closed_form_det",
    "coefficient_sequence",
    "evaluate",
    "fourier_coefficient",
    "log_barnes_g_ratio",
    "log_gamma_signed",
    "lu_det",
    "product_form_det",
    "reports_agree",
    "run_suite",
    "toeplitz_matrix",
]
