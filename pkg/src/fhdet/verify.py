"""Proof steps as executable checks, and a seeded suite that runs them all.

Exact checks compare Fractions with ``==``; float checks use the tolerance
stated next to each one.  A check that lands on an excluded hyperplane
raises, and the suite draws a fresh sample (at most ``max_attempts`` times,
each retry counted in ``resamples``).
"""
from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import exact_core as ec
from .determinants import (
    DetReport,
    closed_form_det,
    evaluate,
    lu_det,
    product_form_det,
    reports_agree,
)
from .errors import ConfigError, DenominatorZero, PoleError
from .fh_symbol import (
    Params,
    coefficient_sequence,
    fourier_coefficient,
    strip_alternating_sign,
    toeplitz_matrix,
)
from .specfun import SignedLog, is_pole, log_gamma_signed

__all__ = [
    "VerifyOutcome",
    "SuiteConfig",
    "sample_rational",
    "sample_rational_between",
    "sample_real_params",
    "check_row_op_identity",
    "check_rank_drop",
    "check_proof2_recursion",
    "check_m_product",
    "check_d_closed_form",
    "check_symmetry_exact",
    "check_cross_layer",
    "run_suite",
    "all_passed",
]

EXACT_CROSS_LAYER_NMAX = 16
DENSE_SWEEP_BETAS = (Fraction(1, 3), Fraction(2, 5), Fraction(5, 2))
DENSE_SWEEP_N = 6


@dataclass
class VerifyOutcome:
    check_name: str
    samples: int = 0
    failures: int = 0
    first_failure: Optional[dict] = None
    resamples: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, **detail) -> bool:
        self.samples += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = {k: str(v) for k, v in detail.items()}
        return ok

    def absorb(self, other: "VerifyOutcome") -> None:
        self.samples += other.samples
        self.failures += other.failures
        self.resamples += other.resamples
        if self.first_failure is None and other.first_failure is not None:
            self.first_failure = other.first_failure

    def to_dict(self) -> dict:
        return asdict(self)


# -- sampling ------------------------------------------------------------

def sample_rational(rng: random.Random, max_den: int = 16, max_num: int = 64) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def sample_rational_between(rng: random.Random, lo: float, hi: float,
                            max_den: int = 16) -> Fraction:
    """A rational strictly inside (lo, hi) with denominator <= max_den."""
    while True:
        den = rng.randint(1, max_den)
        first = math.floor(lo * den) + 1
        last = math.ceil(hi * den) - 1
        if first <= last:
            return Fraction(rng.randint(first, last), den)


def _clear_of(values: Iterable[float], width: float) -> bool:
    return all(abs(v) >= width for v in values)


def sample_real_params(rng: random.Random, n: int, lo: float = -0.9, hi: float = 3.0,
                       width: float = 1e-3) -> Params:
    """Uniform (alpha, beta) in (lo, hi)^2 kept ``width`` away from
    alpha+k = 0, beta+k = 0 and alpha+beta+k = 0 for 1 <= k <= n-1, and from
    the poles of Gamma(alpha+beta+1)."""
    while True:
        a, b = rng.uniform(lo, hi), rng.uniform(lo, hi)
        ks = range(1, max(n, 2))
        if (_clear_of((a + k for k in ks), width)
                and _clear_of((b + k for k in ks), width)
                and _clear_of((a + b + k for k in ks), width)):
            return Params(a, b)


# -- single-point checks -------------------------------------------------

def check_row_op_identity(alpha, beta, n: int) -> VerifyOutcome:
    """M_ij(a, b) + M_{i-1,j}(a, b) == (a+b+1)/(a+1) M_ij(a+1, b), all j, i >= 1."""
    alpha, beta = ec.as_rational(alpha), ec.as_rational(beta)
    out = VerifyOutcome("row_op_identity")
    if n < 2:
        return out
    if alpha == -1:
        raise DenominatorZero("alpha+1=0 in the row-operation factor", hyperplane="alpha+1=0")
    m0 = ec.build_m_matrix(alpha, beta, n)
    m1 = ec.build_m_matrix(alpha + 1, beta, n)
    factor = (alpha + beta + 1) / (alpha + 1)
    bad = None
    for i in range(1, n):
        for j in range(n):
            lhs = m0[i, j] + m0[i - 1, j]
            rhs = factor * m1[i, j]
            if lhs != rhs and bad is None:
                bad = (i, j, lhs, rhs)
    if bad is None:
        out.record(True)
    else:
        i, j, lhs, rhs = bad
        out.record(False, alpha=alpha, beta=beta, n=n, entry=(i, j), expected=rhs, actual=lhs)
    return out


def check_rank_drop(beta, k: int, n: int) -> VerifyOutcome:
    """rank M(-b-k, b) <= k, and hence det M(-b-k, b) == 0 exactly."""
    beta = ec.as_rational(beta)
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    alpha = -beta - k
    m = ec.build_m_matrix(alpha, beta, n)
    rank = ec.rational_rank(m)
    det = ec.bareiss_det(m)
    out = VerifyOutcome("rank_drop")
    out.record(rank <= k and det == 0, beta=beta, k=k, n=n,
               expected=f"rank<={k}, det=0", actual=f"rank={rank}, det={det}")
    return out


def check_proof2_recursion(alpha, beta, n: int) -> VerifyOutcome:
    """det D_n(a, b) == (n-1)! (a+b+1)^(n-1) det D_{n-1}(a+1, b)."""
    if n < 2:
        raise ValueError("the recursion needs n >= 2")
    alpha, beta = ec.as_rational(alpha), ec.as_rational(beta)
    lhs = ec.bareiss_det(ec.build_d_matrix(alpha, beta, n))
    rhs = (math.factorial(n - 1) * (alpha + beta + 1) ** (n - 1)
           * ec.bareiss_det(ec.build_d_matrix(alpha + 1, beta, n - 1)))
    out = VerifyOutcome("proof2_recursion")
    out.record(lhs == rhs, alpha=alpha, beta=beta, n=n, expected=rhs, actual=lhs)
    return out


def check_m_product(alpha, beta, n: int) -> VerifyOutcome:
    alpha, beta = ec.as_rational(alpha), ec.as_rational(beta)
    expected = ec.m_product_formula(alpha, beta, n)
    actual = ec.bareiss_det(ec.build_m_matrix(alpha, beta, n))
    out = VerifyOutcome("m_product")
    out.record(actual == expected, alpha=alpha, beta=beta, n=n, expected=expected, actual=actual)
    return out


def check_d_closed_form(alpha, beta, n: int) -> VerifyOutcome:
    alpha, beta = ec.as_rational(alpha), ec.as_rational(beta)
    expected = ec.d_closed_form(alpha, beta, n)
    actual = ec.bareiss_det(ec.build_d_matrix(alpha, beta, n))
    out = VerifyOutcome("d_closed_form")
    out.record(actual == expected, alpha=alpha, beta=beta, n=n, expected=expected, actual=actual)
    return out


def check_symmetry_exact(alpha, beta, n: int) -> VerifyOutcome:
    """M(a, b)^T == M(b, a), so det M is symmetric under a <-> b."""
    alpha, beta = ec.as_rational(alpha), ec.as_rational(beta)
    m = ec.build_m_matrix(alpha, beta, n)
    swapped = ec.build_m_matrix(beta, alpha, n)
    out = VerifyOutcome("symmetry_exact")
    ok = m.transpose() == swapped and ec.bareiss_det(m) == ec.bareiss_det(swapped)
    out.record(ok, alpha=alpha, beta=beta, n=n, expected="M(a,b)^T == M(b,a)",
               actual="mismatch")
    return out


def check_cross_layer(alpha, beta, n: int) -> VerifyOutcome:
    """LU, product form and closed form agree in floats; for n <= 16 the exact
    det M also equals D_n(a, b) / prod (a+1)_m (b+1)_m, and the exact-layer
    reports agree with the closed form."""
    out = VerifyOutcome("cross_layer")
    reports = [evaluate(m, alpha, beta, n) for m in ("closed_form", "lu", "product_m")]
    exact = isinstance(alpha, (Fraction, int)) and isinstance(beta, (Fraction, int))
    if exact and n <= EXACT_CROSS_LAYER_NMAX:
        reports += [evaluate(m, alpha, beta, n) for m in ("bareiss_m", "proof2")]
    base = reports[0]
    bad = next((r for r in reports[1:] if not reports_agree(base, r)), None)
    detail = dict(alpha=alpha, beta=beta, n=n)
    if bad is not None:
        out.record(False, **detail, method=bad.method, expected=base.value, actual=bad.value)
        return out
    if exact and n <= EXACT_CROSS_LAYER_NMAX:
        det_m = ec.bareiss_det(ec.build_m_matrix(alpha, beta, n))
        bridged = (ec.bareiss_det(ec.build_d_matrix(alpha, beta, n))
                   / ec.row_column_factor(alpha, beta, n))
        out.record(det_m == bridged, **detail, method="bridge", expected=bridged, actual=det_m)
    else:
        out.record(True)
    return out


# -- float-layer checks used by the suite -------------------------------

def _rel_close(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def m_entry_float(alpha: float, beta: float, i: int, j: int) -> float:
    """Entry of M straight from the gamma-ratio definition, in floats."""
    den_a = alpha + 1.0 - i + j
    den_b = beta + 1.0 + i - j
    if is_pole(den_a) or is_pole(den_b):
        return 0.0
    num = log_gamma_signed(alpha + 1.0) * log_gamma_signed(beta + 1.0)
    return (num / (log_gamma_signed(den_a) * log_gamma_signed(den_b))).to_real()


def check_entry_equivalence(alpha, beta, n: int, rtol: float = 1e-10) -> VerifyOutcome:
    alpha, beta = ec.as_rational(alpha), ec.as_rational(beta)
    for name, v in (("alpha", alpha), ("beta", beta)):
        if v.denominator == 1 and v < 0:
            raise PoleError(f"Gamma({name}+1) has a pole")
    m = ec.build_m_matrix(alpha, beta, n)
    out = VerifyOutcome("entry_equivalence")
    fa, fb = float(alpha), float(beta)
    for i in range(n):
        for j in range(n):
            exact = m[i, j]
            approx = m_entry_float(fa, fb, i, j)
            ok = approx == 0.0 if exact == 0 else _rel_close(float(exact), approx, rtol)
            if not ok:
                out.record(False, alpha=alpha, beta=beta, entry=(i, j), expected=exact,
                           actual=approx)
                return out
    out.record(True)
    return out


def check_recurrence(p: Params, kmax: int, rtol: float = 1e-12) -> VerifyOutcome:
    out = VerifyOutcome("coefficient_recurrence")
    spec = coefficient_sequence(p, kmax + 1)
    for k in range(-kmax, kmax + 1):
        direct = fourier_coefficient(p, k)
        rec = spec.phi(k)
        ok = rec == direct or _rel_close(rec, direct, rtol)
        if not ok:
            out.record(False, alpha=p.alpha, beta=p.beta, k=k, expected=direct, actual=rec)
            return out
    out.record(True)
    return out


def check_sign_irrelevance(p: Params, n: int, rtol: float = 1e-10) -> VerifyOutcome:
    spec = coefficient_sequence(p, n)
    plain = lu_det(toeplitz_matrix(spec))
    stripped = lu_det(toeplitz_matrix(strip_alternating_sign(spec)))
    ok = plain.sign == stripped.sign and (
        plain.sign == 0 or abs(plain.logmag - stripped.logmag) <= rtol)
    out = VerifyOutcome("sign_irrelevance")
    out.record(ok, alpha=p.alpha, beta=p.beta, n=n, expected=plain, actual=stripped)
    return out


def check_closed_vs_product(p: Params, n: int, rtol: float = 1e-10) -> VerifyOutcome:
    a = DetReport(closed_form_det(p, n), "closed_form", n, p)
    b = DetReport(product_form_det(p, n), "product_m", n, p)
    out = VerifyOutcome("closed_vs_product")
    out.record(reports_agree(a, b, tol=rtol, relative=True), alpha=p.alpha, beta=p.beta,
               n=n, expected=a.value, actual=b.value)
    return out


def check_symmetry_float(p: Params, n: int, tol: float = 1e-13) -> VerifyOutcome:
    a = closed_form_det(p, n)
    b = closed_form_det(p.swapped(), n)
    out = VerifyOutcome("symmetry_float")
    out.record(a.sign == b.sign and abs(a.logmag - b.logmag) <= tol,
               alpha=p.alpha, beta=p.beta, n=n, expected=a, actual=b)
    return out


# -- the suite -----------------------------------------------------------

@dataclass(frozen=True)
class SuiteConfig:
    n_exact: tuple[int, ...] = tuple(range(1, 11))
    n_float: tuple[int, ...] = tuple(range(1, 65))
    samples: int = 25
    dense_sweep: bool = True
    max_attempts: int = 100

    @classmethod
    def from_limits(cls, nmax_exact: int = 10, nmax_float: int = 64,
                    samples: int = 25) -> "SuiteConfig":
        return cls(tuple(range(1, nmax_exact + 1)), tuple(range(1, nmax_float + 1)), samples)

    def validate(self) -> None:
        if not self.n_exact or not self.n_float:
            raise ConfigError("n ranges must be non-empty")
        if min(self.n_exact + self.n_float) < 1:
            raise ConfigError("orders must be >= 1")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.max_attempts < 1:
            raise ConfigError("max_attempts must be >= 1")


_RESAMPLE = (DenominatorZero, PoleError)


def _attempt(outcome: VerifyOutcome, draw: Callable[[], VerifyOutcome],
             max_attempts: int, label: str) -> None:
    for attempt in range(max_attempts):
        try:
            result = draw()
        except _RESAMPLE:
            outcome.resamples += 1
            continue
        outcome.absorb(result)
        return
    outcome.record(False, reason=f"no valid sample in {max_attempts} attempts", where=label)


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _exact_checks(seed: int, cfg: SuiteConfig) -> list[VerifyOutcome]:
    results = []
    per_n = [
        ("m_product", check_m_product, 1),
        ("d_closed_form", check_d_closed_form, 1),
        ("proof2_recursion", check_proof2_recursion, 2),
        ("row_op_identity", check_row_op_identity, 1),
        ("symmetry_exact", check_symmetry_exact, 1),
        ("entry_equivalence", check_entry_equivalence, 1),
    ]
    for name, check, nmin in per_n:
        rng = _rng(seed, name)
        outcome = VerifyOutcome(name)
        for n in cfg.n_exact:
            if n < nmin or (name in ("row_op_identity", "entry_equivalence") and n > 8):
                continue
            for _ in range(cfg.samples):
                _attempt(outcome,
                         lambda: check(sample_rational(rng), sample_rational(rng), n),
                         cfg.max_attempts, f"n={n}")
        results.append(outcome)

    rng = _rng(seed, "rank_drop")
    outcome = VerifyOutcome("rank_drop")
    for n in cfg.n_exact:
        for k in range(1, n):
            for _ in range(cfg.samples):
                _attempt(outcome, lambda: check_rank_drop(sample_rational(rng), k, n),
                         cfg.max_attempts, f"n={n}, k={k}")
    results.append(outcome)

    if cfg.dense_sweep and max(cfg.n_exact) >= DENSE_SWEEP_N:
        results.append(dense_product_sweep())
    return results


def dense_product_sweep(n: int = DENSE_SWEEP_N, betas=DENSE_SWEEP_BETAS,
                        tmin: int = -200, tmax: int = 200, den: int = 17) -> VerifyOutcome:
    """det M == product formula at alpha = t/17 for every t, at a few fixed betas.

    Far more alpha values than the degree bound n(n-1), which pins the
    rational function down completely.  Points on alpha+k = 0 are skipped
    and counted as resamples.
    """
    outcome = VerifyOutcome("m_product_dense")
    for beta in betas:
        for t in range(tmin, tmax + 1):
            try:
                outcome.absorb(check_m_product(Fraction(t, den), beta, n))
            except DenominatorZero:
                outcome.resamples += 1
    return outcome


def _float_checks(seed: int, cfg: SuiteConfig) -> list[VerifyOutcome]:
    results = []

    rng = _rng(seed, "cross_layer")
    outcome = VerifyOutcome("cross_layer")
    for n in cfg.n_float:
        for _ in range(cfg.samples):
            _attempt(outcome,
                     lambda: check_cross_layer(sample_rational_between(rng, -0.9, 3.0),
                                               sample_rational_between(rng, -0.9, 3.0), n),
                     cfg.max_attempts, f"n={n}")
    results.append(outcome)

    per_n = [
        ("closed_vs_product", check_closed_vs_product),
        ("symmetry_float", check_symmetry_float),
        ("sign_irrelevance", check_sign_irrelevance),
    ]
    for name, check in per_n:
        rng = _rng(seed, name)
        outcome = VerifyOutcome(name)
        for n in cfg.n_float:
            for _ in range(cfg.samples):
                _attempt(outcome, lambda: check(sample_real_params(rng, n), n),
                         cfg.max_attempts, f"n={n}")
        results.append(outcome)

    rng = _rng(seed, "coefficient_recurrence")
    outcome = VerifyOutcome("coefficient_recurrence")
    kmax = max(cfg.n_float)
    for _ in range(cfg.samples * 8):
        _attempt(outcome, lambda: check_recurrence(sample_real_params(rng, 1), kmax),
                 cfg.max_attempts, f"kmax={kmax}")
    results.append(outcome)
    return results


def run_suite(seed: int = 42, config: SuiteConfig | None = None) -> list[VerifyOutcome]:
    """Run every check.  The result is a pure function of (seed, config)."""
    cfg = config or SuiteConfig()
    cfg.validate()
    return _exact_checks(seed, cfg) + _float_checks(seed, cfg)


def all_passed(outcomes: Iterable[VerifyOutcome]) -> bool:
    return all(o.passed for o in outcomes)
