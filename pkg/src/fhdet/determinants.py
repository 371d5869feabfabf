"""Determinant engines for D_n(phi) and the report type used to cross-compare them.

Float methods:

``lu``           partial-pivoted elimination on the Toeplitz matrix, O(n^3)
``closed_form``  the Barnes-G expression, as four log-gamma streams, O(n)
``product_m``    phi_0^n times the product formula for det M, O(n)

Exact-layer methods (parameters must be rationals):

``bareiss_m``    phi_0^n times det M computed by Bareiss elimination
``proof2``       Gamma(a+b+1)^n D_n(a, b) / prod Gamma(a+1+m) Gamma(b+1+m), with
                 D_n(a, b) unwound by its one-step recursion
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from . import exact_core
from .errors import PoleError
from .fh_symbol import Params, coefficient_sequence, fourier_coefficient_signed, toeplitz_matrix
from .specfun import POLE_TOL, SignedLog, is_pole, log_barnes_g_ratio, log_gamma_signed

__all__ = [
    "FLOAT_METHODS",
    "EXACT_METHODS",
    "METHODS",
    "DetReport",
    "lu_det",
    "closed_form_det",
    "product_form_det",
    "bareiss_m_det",
    "proof2_det",
    "evaluate",
    "near_degenerate",
    "logmag_tolerance",
    "reports_agree",
]

FLOAT_METHODS = ("lu", "closed_form", "product_m")
EXACT_METHODS = ("bareiss_m", "proof2")
METHODS = FLOAT_METHODS + EXACT_METHODS

ExactParams = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class DetReport:
    value: SignedLog
    method: str
    n: int
    params: Union[Params, ExactParams]

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")


def lu_det(matrix) -> SignedLog:
    """Determinant by Gaussian elimination with partial pivoting.

    The log of each pivot is recorded as it is produced, so neither the
    running product nor the result can overflow.  Exactly singular input
    gives sign 0.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    sign = 1
    logs = []
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv = a[p, k]
        if piv == 0.0:
            return SignedLog.zero()
        if p != k:
            a[[k, p]] = a[[p, k]]
            sign = -sign
        if piv < 0:
            sign = -sign
        logs.append(math.log(abs(piv)))
        if k < n - 1:
            lower = a[k + 1:, k] / piv
            a[k + 1:, k + 1:] -= np.outer(lower, a[k, k + 1:])
    return SignedLog(sign, math.fsum(logs))


def _stream(x: float, n: int, label: str) -> SignedLog:
    try:
        return log_barnes_g_ratio(x, n)
    except PoleError as exc:
        raise PoleError(
            f"Gamma({label}+j) has a pole at j={exc.offset} ({label}+{exc.offset}=0)",
            argument=exc.argument,
            offset=exc.offset,
        ) from exc


def closed_form_det(p: Params, n: int) -> SignedLog:
    """G(n+1) G(a+b+n+1)/G(a+b+1) * G(a+1)/G(a+n+1) * G(b+1)/G(b+n+1).

    Each Barnes-G ratio is a product of n gammas, so the whole thing is
    ``sum_j [lgG(1+j) + lgG(a+b+1+j) - lgG(a+1+j) - lgG(b+1+j)]``.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    a, b = p.alpha, p.beta
    top = _stream(1.0, n, "1") * _stream(a + b + 1.0, n, "alpha+beta+1")
    bottom = _stream(a + 1.0, n, "alpha+1") * _stream(b + 1.0, n, "beta+1")
    return top / bottom


def _phi0(p: Params) -> SignedLog:
    return fourier_coefficient_signed(p, 0)


def product_form_det(p: Params, n: int) -> SignedLog:
    """phi_0^n * prod_{k<n} k^{n-k} (a+b+k)^{n-k} / ((a+k)^{n-k} (b+k)^{n-k})."""
    if n < 1:
        raise ValueError("order must be at least 1")
    a, b = p.alpha, p.beta
    for k in range(1, n):
        for name, v in (("alpha", a), ("beta", b)):
            if abs(v + k) <= POLE_TOL:
                raise PoleError(f"product form: {name}+{k}=0", argument=v + k, offset=k)
    if _pole_in_phi0(p):
        raise PoleError("product form: Gamma(alpha+beta+1) has a pole")
    phi0 = _phi0(p)
    sign = phi0.sign ** n if n % 2 else abs(phi0.sign)
    logs = [n * phi0.logmag, n * phi0.tail]
    for k in range(1, n):
        e = n - k
        t = (a + b + k) / ((a + k) * (b + k))
        if t == 0.0:
            return SignedLog.zero()
        if t < 0 and e % 2:
            sign = -sign
        logs.append(e * (math.log(k) + math.log(abs(a + b + k))
                         - math.log(abs(a + k)) - math.log(abs(b + k))))
    if sign == 0:
        return SignedLog.zero()
    return SignedLog(sign, math.fsum(logs))


def _pole_in_phi0(p: Params) -> bool:
    return is_pole(p.alpha + p.beta + 1.0)


def _exact_pair(alpha, beta) -> ExactParams:
    return exact_core.as_rational(alpha), exact_core.as_rational(beta)


def _float_params(alpha: Fraction, beta: Fraction) -> Params:
    return Params(float(alpha), float(beta))


def bareiss_m_det(alpha, beta, n: int) -> SignedLog:
    """phi_0^n * det M with det M exact; alpha, beta must be rationals."""
    alpha, beta = _exact_pair(alpha, beta)
    det_m = exact_core.bareiss_det(exact_core.build_m_matrix(alpha, beta, n))
    return _phi0(_float_params(alpha, beta)) ** n * SignedLog.from_rational(det_m)


def proof2_det(alpha, beta, n: int) -> SignedLog:
    """Gamma(a+b+1)^n D_n(a, b) / (G(a+n+1)/G(a+1) * G(b+n+1)/G(b+1))."""
    alpha, beta = _exact_pair(alpha, beta)
    p = _float_params(alpha, beta)
    if _pole_in_phi0(p):
        raise PoleError("proof2: Gamma(alpha+beta+1) has a pole")
    d = exact_core.d_recursion(alpha, beta, n)
    lead = log_gamma_signed(p.alpha + p.beta + 1.0) ** n
    return lead * SignedLog.from_rational(d) / (
        _stream(p.alpha + 1.0, n, "alpha+1") * _stream(p.beta + 1.0, n, "beta+1")
    )


def evaluate(method: str, alpha, beta, n: int) -> DetReport:
    """Run one method.  Float methods accept anything float() accepts."""
    if method == "lu":
        p = Params(float(alpha), float(beta))
        value = lu_det(toeplitz_matrix(coefficient_sequence(p, n)))
        return DetReport(value, method, n, p)
    if method == "closed_form":
        p = Params(float(alpha), float(beta))
        return DetReport(closed_form_det(p, n), method, n, p)
    if method == "product_m":
        p = Params(float(alpha), float(beta))
        return DetReport(product_form_det(p, n), method, n, p)
    if method == "bareiss_m":
        pair = _exact_pair(alpha, beta)
        return DetReport(bareiss_m_det(*pair, n), method, n, pair)
    if method == "proof2":
        pair = _exact_pair(alpha, beta)
        return DetReport(proof2_det(*pair, n), method, n, pair)
    raise ValueError(f"unknown method {method!r}")


def near_degenerate(alpha: float, beta: float, n: int, width: float = 1e-3) -> bool:
    """True when some alpha+beta+k, 1 <= k < n, sits within ``width`` of zero."""
    s = float(alpha) + float(beta)
    return any(abs(s + k) < width for k in range(1, n))


def logmag_tolerance(n: int) -> float:
    """Allowed absolute logmag gap between LU and the O(n) formulas at order n."""
    return 1e-9 if n <= 32 else 1e-6


def _as_floats(params) -> tuple[float, float]:
    if isinstance(params, Params):
        return params.alpha, params.beta
    return float(params[0]), float(params[1])


def reports_agree(a: DetReport, b: DetReport, tol: float | None = None,
                  relative: bool = False) -> bool:
    """Compare two reports for the same (params, n).

    Away from the zeros of the rational structure: identical signs and a
    logmag gap of at most ``tol`` (absolute), or ``tol * max(1, |logmag|)``
    when ``relative``.  The default ``tol`` is :func:`logmag_tolerance`.
    Near those zeros the log scale is meaningless, so the real values are
    compared with an absolute tolerance of 1e-8 times the larger magnitude.
    """
    if a.n != b.n:
        raise ValueError("reports are for different orders")
    n = a.n
    alpha, beta = _as_floats(a.params)
    if near_degenerate(alpha, beta, n):
        va, vb = a.value.to_real(), b.value.to_real()
        return abs(va - vb) <= 1e-8 * max(abs(va), abs(vb))
    if tol is None:
        tol = logmag_tolerance(n)
    if a.value.sign != b.value.sign:
        return False
    if a.value.sign == 0:
        return True
    diff = abs(a.value.logmag - b.value.logmag)
    if relative:
        tol = tol * max(1.0, abs(a.value.logmag), abs(b.value.logmag))
    return diff <= tol
