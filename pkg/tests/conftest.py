"""Shared oracles.  None of these touch the code paths they are used to check."""
from fractions import Fraction
from math import comb

import mpmath
import pytest

# B_2 .. B_20
_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
              Fraction(43867, 798), Fraction(-174611, 330)]


def stirling_log_gamma(x, shift_to=40, dps=40):
    """(sign, log|Gamma(x)|) by upward shifting and the Stirling series.

    log|Gamma(x)| = log Gamma(x+N) - sum_{j<N} log|x+j|, with x+N >= shift_to.
    The sign is the product of the signs of x, x+1, ..., x+N-1.
    """
    with mpmath.workdps(dps):
        z = mpmath.mpf(x)
        sign = 1
        acc = mpmath.mpf(0)
        while z < shift_to:
            if z == 0:
                raise ValueError("pole")
            if z < 0:
                sign = -sign
            acc += mpmath.log(abs(z))
            z += 1
        series = (z - mpmath.mpf(1) / 2) * mpmath.log(z) - z + mpmath.log(2 * mpmath.pi) / 2
        for k, b in enumerate(_BERNOULLI, start=1):
            series += mpmath.mpf(b.numerator) / b.denominator / (2 * k * (2 * k - 1) * z ** (2 * k - 1))
        return sign, float(series - acc)


def cofactor_det(rows):
    """Laplace expansion along the first row, exact for Fractions."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total += -term if j % 2 else term
    return total


def binomial_series_coefficients(a, b, kmax):
    """phi_k of (1 - z)^a (1 - 1/z)^b for non-negative integers a, b, by convolution."""
    za = {m: (-1) ** m * comb(a, m) for m in range(a + 1)}
    zb = {-m: (-1) ** m * comb(b, m) for m in range(b + 1)}
    out = {}
    for k in range(-kmax, kmax + 1):
        out[k] = sum(c * zb.get(k - m, 0) for m, c in za.items())
    return out


# -- acceptance summary ------------------------------------------------------

_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        detail = dict(report.user_properties).get("detail", "")
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _acceptance:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}" + (f"  ({detail})" if detail else ""))
