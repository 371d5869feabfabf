"""Fourier coefficients of (1 - z)^alpha (1 - 1/z)^beta and the Toeplitz matrix they fill."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .specfun import POLE_TOL, SignedLog, is_pole, log_gamma_shifted, log_gamma_signed

__all__ = [
    "Params",
    "ToeplitzSpec",
    "fourier_coefficient",
    "fourier_coefficient_signed",
    "coefficient_sequence",
    "toeplitz_matrix",
    "strip_alternating_sign",
]


@dataclass(frozen=True)
class Params:
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    def swapped(self) -> "Params":
        return Params(self.beta, self.alpha)


@dataclass(frozen=True, eq=False)
class ToeplitzSpec:
    """Order ``n`` and ``coeffs[m] = phi_{m-(n-1)}`` for m = 0 .. 2n-2."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        if self.n < 1:
            raise ValueError("order must be at least 1")
        if coeffs.shape != (2 * self.n - 1,):
            raise ValueError(
                f"expected {2 * self.n - 1} coefficients for n={self.n}, got shape {coeffs.shape}"
            )
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    def phi(self, k: int) -> float:
        return float(self.coeffs[k + self.n - 1])


def _leading_gamma(p: Params) -> SignedLog:
    try:
        return log_gamma_signed(p.alpha + p.beta + 1.0)
    except PoleError as exc:
        raise PoleError(
            f"Gamma(alpha+beta+1) has a pole: alpha+beta+1 = {p.alpha + p.beta + 1.0!r}",
            argument=exc.argument,
        ) from exc


def fourier_coefficient_signed(p: Params, k: int) -> SignedLog:
    """phi_k as a SignedLog; exactly zero where a reciprocal gamma vanishes."""
    num = _leading_gamma(p)
    if is_pole(p.alpha + (1 - k)) or is_pole(p.beta + (1 + k)):
        return SignedLog.zero()
    value = num / (log_gamma_shifted(p.alpha, 1 - k) * log_gamma_shifted(p.beta, 1 + k))
    return -value if k % 2 else value


def fourier_coefficient(p: Params, k: int) -> float:
    """(-1)^k Gamma(a+b+1) / (Gamma(a+1-k) Gamma(b+1+k))."""
    return fourier_coefficient_signed(p, k).to_real()


def coefficient_sequence(p: Params, n: int) -> ToeplitzSpec:
    """All of phi_{-(n-1)} .. phi_{n-1} by the two-term ratio recurrence.

    Upward ``phi_{k+1} = phi_k (k - a) / (b + k + 1)``, downward
    ``phi_{k-1} = phi_k (b + k) / (k - 1 - a)``, both started from phi_0.
    A step whose denominator is below the pole tolerance, or that starts from
    an exact zero, is evaluated directly instead.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    a, b = p.alpha, p.beta
    phi = {0: fourier_coefficient(p, 0)}
    for k in range(0, n - 1):
        den = b + k + 1.0
        if abs(den) < POLE_TOL or phi[k] == 0.0:
            phi[k + 1] = fourier_coefficient(p, k + 1)
        else:
            phi[k + 1] = phi[k] * (k - a) / den
    for k in range(0, -(n - 1), -1):
        den = k - 1.0 - a
        if abs(den) < POLE_TOL or phi[k] == 0.0:
            phi[k - 1] = fourier_coefficient(p, k - 1)
        else:
            phi[k - 1] = phi[k] * (b + k) / den
    coeffs = np.array([phi[m - (n - 1)] for m in range(2 * n - 1)], dtype=float)
    return ToeplitzSpec(n, coeffs)


def toeplitz_matrix(spec: ToeplitzSpec) -> np.ndarray:
    """Dense matrix with entry (i, j) = phi_{i-j}."""
    idx = np.arange(spec.n)
    return spec.coeffs[np.subtract.outer(idx, idx) + spec.n - 1]


def strip_alternating_sign(spec: ToeplitzSpec) -> ToeplitzSpec:
    """Multiply phi_k by (-1)^k; the determinant is unchanged."""
    k = np.arange(2 * spec.n - 1) - (spec.n - 1)
    return ToeplitzSpec(spec.n, spec.coeffs * np.where(k % 2, -1.0, 1.0))
