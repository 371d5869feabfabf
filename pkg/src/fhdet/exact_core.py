"""Exact rational linear algebra behind both determinant derivations.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Two matrices matter:

* ``M(alpha, beta)`` with entries ``Gamma(a+1)Gamma(b+1) / (Gamma(a+1-i+j)Gamma(b+1+i-j))``,
  rewritten here as ratios of falling and rising factorials so no gamma
  function is ever evaluated;
* ``D_n(alpha, beta)``, the polynomial matrix left after pulling one
  reciprocal gamma factor out of every row and column.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DenominatorZero

__all__ = [
    "RationalMatrix",
    "as_rational",
    "falling_factorial",
    "rising_factorial",
    "m_entry",
    "build_m_matrix",
    "build_d_matrix",
    "bareiss_det",
    "rational_rank",
    "m_product_formula",
    "d_closed_form",
    "d_recursion",
    "row_column_factor",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings.  Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing to convert {x!r} to an exact rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable square matrix of Fractions, indexed from 0."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise ValueError("matrix order must be at least 1")
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        return cls(tuple(tuple(as_rational(v) for v in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


def falling_factorial(x, m: int) -> Fraction:
    """x (x-1) ... (x-m+1); 1 when m == 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    x = as_rational(x)
    out = Fraction(1)
    for t in range(m):
        out *= x - t
    return out


def rising_factorial(x, m: int) -> Fraction:
    """x (x+1) ... (x+m-1); 1 when m == 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    x = as_rational(x)
    out = Fraction(1)
    for t in range(m):
        out *= x + t
    return out


def _check_rising_nonzero(x: Fraction, m: int, name: str) -> None:
    # rising_factorial(name + 1, m) vanishes iff name = -s for some s in 1..m
    for s in range(1, m + 1):
        if x + s == 0:
            raise DenominatorZero(
                f"{name}+{s}=0 makes an entry denominator vanish",
                hyperplane=f"{name}+{s}=0",
            )


def m_entry(alpha, beta, i: int, j: int) -> Fraction:
    """Entry (i, j) of M(alpha, beta); 0-based, depends only on i - j."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    d = i - j
    if d >= 0:
        _check_rising_nonzero(beta, d, "beta")
        return falling_factorial(alpha, d) / rising_factorial(beta + 1, d)
    d = -d
    _check_rising_nonzero(alpha, d, "alpha")
    return falling_factorial(beta, d) / rising_factorial(alpha + 1, d)


def build_m_matrix(alpha, beta, n: int) -> RationalMatrix:
    if n < 1:
        raise ValueError("order must be at least 1")
    alpha, beta = as_rational(alpha), as_rational(beta)
    # one value per diagonal, built incrementally: M depends only on i - j
    diag = {0: Fraction(1)}
    for name, x, y, sgn in (("beta", alpha, beta, 1), ("alpha", beta, alpha, -1)):
        num = den = Fraction(1)
        for d in range(1, n):
            num *= x - (d - 1)
            den *= y + d
            if den == 0:
                raise DenominatorZero(
                    f"{name}+{d}=0 makes an entry denominator vanish",
                    hyperplane=f"{name}+{d}=0",
                )
            diag[sgn * d] = num / den
    return RationalMatrix(tuple(tuple(diag[i - j] for j in range(n)) for i in range(n)))


def build_d_matrix(alpha, beta, n: int) -> RationalMatrix:
    """D_n(alpha, beta) evaluated at a rational point.

    With 1-based (i, j) the entry is
    ``prod_{l=1}^{n-j} (alpha - i + j + l) * prod_{k=1}^{n-i} (beta + i - j + k)``;
    storage index (r, c) maps to i = r + 1, j = c + 1.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    alpha, beta = as_rational(alpha), as_rational(beta)
    p, q = alpha.numerator, alpha.denominator
    r, s = beta.numerator, beta.denominator

    def numer(top: int, scale: int, start: int, count: int) -> int:
        # prod_{t=1}^{count} (top/scale + start + t) * scale**count
        out = 1
        for t in range(1, count + 1):
            out *= top + scale * (start + t)
        return out

    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            value = numer(p, q, j - i, n - j) * numer(r, s, i - j, n - i)
            row.append(Fraction(value, q ** (n - j) * s ** (n - i)))
        rows.append(tuple(row))
    return RationalMatrix(tuple(rows))


def _integer_rows(m: RationalMatrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns the rows and the product of scales."""
    rows = []
    scale = 1
    for r in m.rows:
        lcm = math.lcm(*(v.denominator for v in r))
        rows.append([v.numerator * (lcm // v.denominator) for v in r])
        scale *= lcm
    return rows, scale


def bareiss_det(m: RationalMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Row denominators are cleared first and divided back out at the end, so
    every intermediate quantity is an integer and each Bareiss division is
    exact.
    """
    a, scale = _integer_rows(m)
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        piv = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (piv * row_i[j] - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = piv
    return Fraction(sign * a[n - 1][n - 1], scale)


def rational_rank(m: RationalMatrix) -> int:
    """Exact rank via fraction-free elimination with column skipping."""
    a, _ = _integer_rows(m)
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        piv = a[rank][col]
        for i in range(rank + 1, nrows):
            lead = a[i][col]
            for j in range(col + 1, ncols):
                a[i][j] = (piv * a[i][j] - lead * a[rank][j]) // prev
            a[i][col] = 0
        prev = piv
        rank += 1
        if rank == nrows:
            break
    return rank


def m_product_formula(alpha, beta, n: int) -> Fraction:
    """prod_{k=1}^{n-1} k^{n-k} (a+b+k)^{n-k} / ((a+k)^{n-k} (b+k)^{n-k})."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    out = Fraction(1)
    for k in range(1, n):
        for name, v in (("alpha", alpha), ("beta", beta)):
            if v + k == 0:
                raise DenominatorZero(
                    f"{name}+{k}=0 is a pole of the product formula (k={k})",
                    hyperplane=f"{name}+{k}=0",
                )
        e = n - k
        out *= (k * (alpha + beta + k) / ((alpha + k) * (beta + k))) ** e
    return out


def d_closed_form(alpha, beta, n: int) -> Fraction:
    """prod_{k=1}^{n-1} (n-k)! (a+b+k)^{n-k}."""
    s = as_rational(alpha) + as_rational(beta)
    out = Fraction(1)
    for k in range(1, n):
        out *= math.factorial(n - k) * (s + k) ** (n - k)
    return out


def d_recursion(alpha, beta, n: int) -> Fraction:
    """Unwind D_n(a, b) = (n-1)! (a+b+1)^(n-1) D_{n-1}(a+1, b) down to D_1 = 1."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    out = Fraction(1)
    while n > 1:
        out *= math.factorial(n - 1) * (alpha + beta + 1) ** (n - 1)
        alpha += 1
        n -= 1
    return out


def row_column_factor(alpha, beta, n: int) -> Fraction:
    """prod_{m=0}^{n-1} (a+1)_m (b+1)_m, the factor separating det M from D_n(a, b)."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    out = Fraction(1)
    for m in range(n):
        out *= rising_factorial(alpha + 1, m) * rising_factorial(beta + 1, m)
    return out
