"""Command-line front end: ``fhdet eval | coeffs | sweep | verify``.

Exit codes: 0 success, 1 usage error, 2 evaluation domain error (pole or
vanishing denominator), 3 verification failure.

Parameters written as ``p/q`` or plain integers are exact; anything with a
decimal point or exponent is a float and only reaches the float methods.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .determinants import EXACT_METHODS, FLOAT_METHODS, DetReport, evaluate
from .errors import DenominatorZero, FHDetError, PoleError
from .fh_symbol import Params, fourier_coefficient
from .verify import SuiteConfig, all_passed, run_suite

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3

METHOD_FLAGS = {
    "lu": "lu",
    "closed": "closed_form",
    "product": "product_m",
    "exact-m": "bareiss_m",
    "proof2": "proof2",
}
CSV_HEADER = ("n", "alpha", "beta", "method", "sign", "logmag", "value", "elapsed_us")
COEFF_CSV_HEADER = ("k", "alpha", "beta", "coefficient")
VERIFY_CSV_HEADER = ("check_name", "samples", "failures", "resamples", "first_failure")
REPRESENTABLE_LOGMAG = 700.0
SEED_ENV = "FHDET_SEED"
SWEEP_CHUNK = 256


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- parameters ----------------------------------------------------------

@dataclass(frozen=True)
class ParamValue:
    """A parameter as typed, with its exact value when it has one."""

    text: str
    real: float
    exact: Optional[Fraction]


def parse_param(text: str) -> ParamValue:
    s = text.strip()
    try:
        if "/" in s:
            q = Fraction(s)
            return ParamValue(text, float(q), q)
        if s.lstrip("+-").isdigit():
            return ParamValue(text, float(int(s)), Fraction(int(s)))
        x = float(s)
    except (ValueError, ZeroDivisionError, OverflowError):
        raise UsageError(f"cannot parse parameter {text!r}") from None
    if not math.isfinite(x):
        raise UsageError(f"parameter must be finite, got {text!r}")
    return ParamValue(text, x, None)


def parse_range(text: str) -> list[str]:
    """``a:b:step`` (inclusive) as the list of point strings.

    Decimal inputs are stepped in decimal arithmetic, ``p/q`` inputs in
    rationals, so no grid point picks up binary rounding noise.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must look like a:b:step, got {text!r}")
    try:
        if any("/" in p for p in parts):
            a, b, step = (Fraction(p) for p in parts)
        else:
            a, b, step = (Decimal(p) for p in parts)
    except (ValueError, ZeroDivisionError, InvalidOperation):
        raise UsageError(f"cannot parse range {text!r}") from None
    if step <= 0 or a > b:
        raise UsageError(f"range {text!r} needs step > 0 and a <= b")
    points = []
    x = a
    while x <= b:
        points.append(str(x))
        x += step
    return points


def resolve_methods(flag: str, alpha: ParamValue, beta: ParamValue) -> list[str]:
    exact_ok = alpha.exact is not None and beta.exact is not None
    if flag == "all":
        return list(FLOAT_METHODS) + (list(EXACT_METHODS) if exact_ok else [])
    method = METHOD_FLAGS[flag]
    if method in EXACT_METHODS and not exact_ok:
        raise UsageError(
            f"--method {flag} needs exact parameters (integers or p/q), "
            f"got alpha={alpha.text!r}, beta={beta.text!r}"
        )
    return [method]


# -- records -------------------------------------------------------------

def _num(x: float) -> str:
    return format(x, ".17g")


@dataclass(frozen=True)
class OutputRecord:
    n: int
    alpha: str
    beta: str
    method: str
    sign: object  # -1, 0, 1, or "error"
    logmag: Optional[float]
    value_if_representable: Optional[str]
    elapsed_microseconds: Optional[int]

    @classmethod
    def from_report(cls, report: DetReport, alpha: str, beta: str,
                    elapsed_us: Optional[int]) -> "OutputRecord":
        v = report.value
        value = None
        if abs(v.logmag) <= REPRESENTABLE_LOGMAG:
            value = _num(v.to_real())
        return cls(report.n, alpha, beta, report.method, v.sign, v.logmag, value, elapsed_us)

    @classmethod
    def error(cls, n: int, alpha: str, beta: str, method: str,
              elapsed_us: Optional[int]) -> "OutputRecord":
        return cls(n, alpha, beta, method, "error", None, None, elapsed_us)

    def to_json(self) -> str:
        fields = [
            ("n", str(self.n)),
            ("alpha", json.dumps(self.alpha)),
            ("beta", json.dumps(self.beta)),
            ("method", json.dumps(self.method)),
            ("sign", json.dumps(self.sign)),
            ("logmag", "null" if self.logmag is None else _num(self.logmag)),
            ("value_if_representable", json.dumps(self.value_if_representable)),
            ("elapsed_microseconds", json.dumps(self.elapsed_microseconds)),
        ]
        return "{" + ", ".join(f'"{k}": {v}' for k, v in fields) + "}"

    def to_csv_row(self) -> list[str]:
        return [
            str(self.n), self.alpha, self.beta, self.method, str(self.sign),
            "" if self.logmag is None else _num(self.logmag),
            self.value_if_representable or "",
            "" if self.elapsed_microseconds is None else str(self.elapsed_microseconds),
        ]


def _csv_line(row: Sequence[str]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(row)
    return buf.getvalue()


def write_records(records: Sequence[OutputRecord], fmt: str, out) -> None:
    if fmt == "csv":
        out.write(_csv_line(CSV_HEADER))
        for r in records:
            out.write(_csv_line(r.to_csv_row()))
    else:
        out.write("[" + ",\n ".join(r.to_json() for r in records) + "]\n")


def _domain_message(exc: FHDetError) -> str:
    hyperplane = getattr(exc, "hyperplane", None)
    return f"{exc} [hyperplane: {hyperplane}]" if hyperplane else str(exc)


def _timed(method: str, alpha: ParamValue, beta: ParamValue, n: int):
    x = (lambda p: p.exact) if method in EXACT_METHODS else (lambda p: p.real)
    t0 = time.perf_counter_ns()
    report = evaluate(method, x(alpha), x(beta), n)
    return report, (time.perf_counter_ns() - t0) // 1000


# -- subcommands ---------------------------------------------------------

def cmd_eval(args) -> int:
    alpha, beta = parse_param(args.alpha), parse_param(args.beta)
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    records = []
    for method in resolve_methods(args.method, alpha, beta):
        try:
            report, elapsed = _timed(method, alpha, beta, args.n)
        except (PoleError, DenominatorZero) as exc:
            print(f"fhdet eval: domain error in {method}: {_domain_message(exc)}",
                  file=sys.stderr)
            return EXIT_DOMAIN
        records.append(OutputRecord.from_report(report, alpha.text, beta.text, elapsed))
    write_records(records, args.format, sys.stdout)
    return EXIT_OK


def cmd_coeffs(args) -> int:
    alpha, beta = parse_param(args.alpha), parse_param(args.beta)
    if args.kmin > args.kmax:
        raise UsageError("--kmin must not exceed --kmax")
    p = Params(alpha.real, beta.real)
    rows = []
    try:
        for k in range(args.kmin, args.kmax + 1):
            rows.append((k, fourier_coefficient(p, k)))
    except PoleError as exc:
        print(f"fhdet coeffs: domain error: {_domain_message(exc)}", file=sys.stderr)
        return EXIT_DOMAIN
    out = sys.stdout
    if args.format == "csv":
        out.write(_csv_line(COEFF_CSV_HEADER))
        for k, c in rows:
            out.write(_csv_line([str(k), alpha.text, beta.text, _num(c)]))
    else:
        items = [
            "{" + f'"k": {k}, "alpha": {json.dumps(alpha.text)}, '
            f'"beta": {json.dumps(beta.text)}, "coefficient": {_num(c)}' + "}"
            for k, c in rows
        ]
        out.write("[" + ",\n ".join(items) + "]\n")
    return EXIT_OK


def _sweep_point(task) -> OutputRecord:
    alpha_text, beta_text, n, method, timing = task
    alpha, beta = parse_param(alpha_text), parse_param(beta_text)
    t0 = time.perf_counter_ns()
    try:
        report, elapsed = _timed(method, alpha, beta, n)
    except (PoleError, DenominatorZero):
        elapsed = (time.perf_counter_ns() - t0) // 1000
        return OutputRecord.error(n, alpha_text, beta_text, method,
                                  elapsed if timing else None)
    return OutputRecord.from_report(report, alpha_text, beta_text,
                                    elapsed if timing else None)


def _chunks(it: Iterable, size: int) -> Iterator[list]:
    chunk = []
    for item in it:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def sweep_tasks(alphas, betas, ns, method_flag, timing) -> Iterator[tuple]:
    """Grid points in their fixed output order: alpha, then beta, then n, then method."""
    for a in alphas:
        pa = parse_param(a)
        for b in betas:
            pb = parse_param(b)
            methods = resolve_methods(method_flag, pa, pb)
            for n in ns:
                for m in methods:
                    yield (a, b, n, m, timing)


def _parse_n_list(text: str) -> list[int]:
    try:
        ns = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--n-list must be comma-separated integers, got {text!r}") from None
    if not ns or min(ns) < 1:
        raise UsageError("--n-list needs at least one order, all >= 1")
    return ns


def cmd_sweep(args) -> int:
    if (args.alpha is None) == (args.alpha_range is None):
        raise UsageError("give exactly one of --alpha / --alpha-range")
    if (args.beta is None) == (args.beta_range is None):
        raise UsageError("give exactly one of --beta / --beta-range")
    alphas = parse_range(args.alpha_range) if args.alpha_range else [args.alpha]
    betas = parse_range(args.beta_range) if args.beta_range else [args.beta]
    ns = _parse_n_list(args.n_list)
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    # method/parameter compatibility is checked before anything is written
    for a in alphas:
        for b in betas:
            resolve_methods(args.method, parse_param(a), parse_param(b))
    tasks = sweep_tasks(alphas, betas, ns, args.method, args.timing)

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    errors = 0
    try:
        if args.format == "csv":
            out.write(_csv_line(CSV_HEADER))
        pool = ProcessPoolExecutor(max_workers=args.jobs) if args.jobs > 1 else None
        try:
            for chunk in _chunks(tasks, SWEEP_CHUNK * args.jobs):
                results = pool.map(_sweep_point, chunk, chunksize=16) if pool else map(_sweep_point, chunk)
                for rec in results:
                    errors += rec.sign == "error"
                    out.write(_csv_line(rec.to_csv_row()) if args.format == "csv"
                              else rec.to_json() + "\n")
        finally:
            if pool:
                pool.shutdown()
    finally:
        if out is not sys.stdout:
            out.close()
    if errors:
        print(f"fhdet sweep: {errors} grid point(s) hit a pole or excluded hyperplane",
              file=sys.stderr)
    return EXIT_OK


def _resolve_seed(cli_seed: int) -> int:
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return cli_seed
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.nmax_exact < 1 or args.nmax_float < 1 or args.samples < 1:
        raise UsageError("--nmax-exact, --nmax-float and --samples must be >= 1")
    cfg = SuiteConfig.from_limits(args.nmax_exact, args.nmax_float, args.samples)
    outcomes = run_suite(seed, cfg)
    out = sys.stdout
    if args.format == "csv":
        out.write(_csv_line(VERIFY_CSV_HEADER))
        for o in outcomes:
            ff = "" if o.first_failure is None else json.dumps(o.first_failure, sort_keys=True)
            out.write(_csv_line([o.check_name, str(o.samples), str(o.failures),
                                 str(o.resamples), ff]))
    else:
        json.dump([o.to_dict() for o in outcomes], out, indent=1, sort_keys=True)
        out.write("\n")
    if all_passed(outcomes):
        return EXIT_OK
    for o in outcomes:
        if not o.passed:
            print(f"fhdet verify: {o.check_name} failed {o.failures}/{o.samples}; "
                  f"first failure: {o.first_failure}", file=sys.stderr)
    return EXIT_VERIFY


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fhdet", description=(
        "Pure Fisher-Hartwig Toeplitz determinants: numeric, closed-form and exact."))
    sub = parser.add_subparsers(dest="command", required=True)
    method_choices = list(METHOD_FLAGS) + ["all"]

    p = sub.add_parser("eval", help="evaluate D_n for one (alpha, beta, n)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=method_choices, default="all")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coeffs", help="Fourier coefficients phi_k for kmin <= k <= kmax")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--kmin", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("sweep", help="evaluate over an (alpha, beta, n) grid")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--alpha-range", metavar="A:B:STEP")
    p.add_argument("--beta-range", metavar="A:B:STEP")
    p.add_argument("--n-list", required=True, metavar="N1,N2,...")
    p.add_argument("--method", choices=method_choices, default="closed")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true",
                   help="fill elapsed_microseconds (makes output run-dependent)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help=f"run the verification suite ({SEED_ENV} overrides --seed)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--nmax-exact", type=int, default=10)
    p.add_argument("--nmax-float", type=int, default=64)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify)
    return parser


_VALUE_FLAGS = ("--alpha", "--beta", "--alpha-range", "--beta-range")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse would read "-1/2" or "-2:2:1" as an option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
            else:
                out += [tok, nxt]
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fhdet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
