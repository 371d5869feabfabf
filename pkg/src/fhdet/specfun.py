"""Overflow-safe scalars and the gamma-function pieces the closed form needs.

Everything here works on ``SignedLog`` values: a sign in {-1, 0, +1} and the
natural log of the magnitude.  Barnes G never appears on its own, only the
integer-offset ratio ``G(x+n)/G(x) = prod_{j<n} Gamma(x+j)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import PoleError

__all__ = [
    "POLE_TOL",
    "SignedLog",
    "is_pole",
    "log_gamma_signed",
    "log_gamma_shifted",
    "log_barnes_g_ratio",
]

POLE_TOL = 1e-12

# ln 2 split so that k * _LN2_HI is exact for |k| < 2**20.
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as ``sign * exp(logmag)``.

    ``tail`` holds low-order bits of the log magnitude so that conversions
    from and back to floats are accurate to a couple of ulps even when
    ``|logmag|`` is in the hundreds.  Most values carry ``tail == 0``.
    """

    sign: int
    logmag: float = 0.0
    tail: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0:
            object.__setattr__(self, "logmag", 0.0)
            object.__setattr__(self, "tail", 0.0)
        elif math.isnan(self.logmag):
            raise ValueError("logmag is NaN")
        else:
            hi, lo = _two_sum(float(self.logmag), float(self.tail))
            object.__setattr__(self, "logmag", hi)
            object.__setattr__(self, "tail", lo)

    # -- constructors -------------------------------------------------
    @classmethod
    def one(cls) -> "SignedLog":
        return cls(1, 0.0)

    @classmethod
    def zero(cls) -> "SignedLog":
        return cls(0)

    @classmethod
    def from_real(cls, x: float) -> "SignedLog":
        x = float(x)
        if x == 0.0:
            return cls(0)
        if not math.isfinite(x):
            raise ValueError(f"cannot take the log of {x!r}")
        sign = 1 if x > 0 else -1
        m, e = math.frexp(abs(x))
        exact_part = e * _LN2_HI
        hi, lo = _two_sum(exact_part, e * _LN2_LO + math.log(m))
        return cls(sign, hi, lo)

    @classmethod
    def from_rational(cls, q) -> "SignedLog":
        """Exact-input conversion; the log of big integers never overflows."""
        q = Fraction(q)
        if q == 0:
            return cls(0)
        sign = 1 if q > 0 else -1
        return cls(sign, _log_int(abs(q.numerator)) - _log_int(q.denominator))

    @classmethod
    def product(cls, factors: Iterable["SignedLog"]) -> "SignedLog":
        """Product of many factors with a correctly rounded log sum."""
        sign = 1
        parts = []
        for f in factors:
            if f.sign == 0:
                return cls(0)
            sign *= f.sign
            parts.append(f.logmag)
            parts.append(f.tail)
        if not parts:
            return cls.one()
        hi = math.fsum(parts)
        # residual of the rounded sum, so nothing is lost in the tail
        lo = math.fsum(parts + [-hi])
        return cls(sign, hi, lo)

    # -- conversions --------------------------------------------------
    def to_real(self) -> float:
        if self.sign == 0:
            return 0.0
        k = round(self.logmag / math.log(2.0))
        r = (self.logmag - k * _LN2_HI) - k * _LN2_LO + self.tail
        try:
            return self.sign * math.ldexp(math.exp(r), k)
        except OverflowError:
            return self.sign * math.inf

    def __float__(self) -> float:
        return self.to_real()

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    # -- arithmetic ---------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, SignedLog):
            other = SignedLog.from_real(other)
        if self.sign == 0 or other.sign == 0:
            return SignedLog(0)
        hi, err = _two_sum(self.logmag, other.logmag)
        return SignedLog(self.sign * other.sign, hi, err + self.tail + other.tail)

    __rmul__ = __mul__

    def inverse(self) -> "SignedLog":
        if self.sign == 0:
            raise ZeroDivisionError("inverse of a zero SignedLog")
        return SignedLog(self.sign, -self.logmag, -self.tail)

    def __truediv__(self, other):
        if not isinstance(other, SignedLog):
            other = SignedLog.from_real(other)
        return self * other.inverse()

    def __pow__(self, k: int) -> "SignedLog":
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return SignedLog.one()
        if self.sign == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of a zero SignedLog")
            return SignedLog(0)
        sign = self.sign if k % 2 else 1
        return SignedLog(sign, k * self.logmag, k * self.tail)

    def __neg__(self) -> "SignedLog":
        return SignedLog(-self.sign, self.logmag, self.tail)

    def __repr__(self) -> str:
        return f"SignedLog(sign={self.sign}, logmag={self.logmag!r})"


def _log_int(m: int) -> float:
    if m < 2**1000:
        return math.log(m)
    shift = m.bit_length() - 64
    return math.log(m >> shift) + shift * math.log(2.0)


def is_pole(x: float, tol: float = POLE_TOL) -> bool:
    """True when ``x`` is within ``tol`` of a non-positive integer."""
    return x < 0.5 and abs(x - round(x)) <= tol


def _sinpi(x: float) -> float:
    # fmod by 2 is exact, and so are the folds below
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def log_gamma_signed(x: float) -> SignedLog:
    """Sign and log-magnitude of Gamma(x) for real ``x``.

    Negative arguments go through the reflection
    ``Gamma(x) Gamma(1-x) = pi / sin(pi x)``, which makes the sign
    alternate from one unit cell to the next.

    >>> log_gamma_signed(5.0).to_real()
    24.000000000000004
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"log_gamma_signed needs a finite argument, got {x!r}")
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at {x!r}", argument=x)
    if x > 0:
        return SignedLog(1, math.lgamma(x))
    s = _sinpi(x)
    sign = 1 if s > 0 else -1
    logmag = math.log(math.pi) - math.log(abs(s)) - math.lgamma(1.0 - x)
    return SignedLog(sign, logmag)


def log_gamma_shifted(x: float, m: int) -> SignedLog:
    """Gamma(x + m) for integer ``m`` without rounding away the fractional part of x.

    Forming ``x + m`` in floats costs up to ulp(m)/2 of absolute accuracy,
    which near a pole becomes a large relative error.  For negative
    ``x + m`` the reflection uses ``sin(pi (x+m)) = (-1)^m sin(pi x)``
    instead, and the remaining gamma argument ``1 - x - m`` is far from
    every pole.
    """
    x = float(x)
    y = x + m
    if is_pole(y):
        raise PoleError(f"Gamma has a pole at {x!r}{m:+d}", argument=y, offset=m)
    if y > 0:
        return log_gamma_signed(y)
    s = _sinpi(x)
    if m % 2:
        s = -s
    sign = 1 if s > 0 else -1
    logmag = math.log(math.pi) - math.log(abs(s)) - math.lgamma(1.0 - y)
    return SignedLog(sign, logmag)


def log_barnes_g_ratio(x: float, n: int) -> SignedLog:
    """``G(x+n) / G(x)`` as a SignedLog, i.e. ``prod_{j=0}^{n-1} Gamma(x+j)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = float(x)
    # terms with x+j < 1/2 (poles, reflection) are handled one by one; the rest are
    # plain lgamma values summed in bulk
    first_positive = min(n, max(0, math.floor(0.5 - x) + 1))
    sign = 1
    parts = []
    for j in range(first_positive):
        try:
            g = log_gamma_signed(x + j)
        except PoleError as exc:
            raise PoleError(
                f"G({x!r}+{n})/G({x!r}) hits a Gamma pole at offset j={j}",
                argument=x + j,
                offset=j,
            ) from exc
        sign *= g.sign
        parts.append(g.logmag)
    parts.extend(map(math.lgamma, [x + j for j in range(first_positive, n)]))
    if not parts:
        return SignedLog.one()
    hi = math.fsum(parts)
    return SignedLog(sign, hi, math.fsum(parts + [-hi]))
