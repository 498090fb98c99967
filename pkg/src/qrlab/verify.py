"""Per-prime congruence runners, harmonic sums, tables and batch scans over ranges of primes."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import analytic, classfield, cyclotomic, kernels, quartic
from .errors import IdentityViolationError, QrlabError, UnsupportedResidueClassError
from .modcore import (
    _require_odd_prime_modulus,
    count_fourth_power_residues_half,
    factorial_mod,
    jacobi,
    legendre_table,
    odd_primes,
    prime_context,
)


class UsageError(QrlabError):
    """Bad check name, range or option; maps to exit code 2."""


@dataclass(frozen=True)
class Thm1Report:
    p: int
    Mp: int
    r: int
    predicted: int
    passed: bool


@dataclass(frozen=True)
class Thm2Report:
    p: int
    Mp: int
    C_p: int
    jacobi_symbol_b_over_a: int
    floor_p_8: int
    sigma: int
    beta_p: int
    passed: bool


@dataclass(frozen=True)
class HarmonicRecord:
    p: int
    n: int
    value: int


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    computed: str
    expected: str
    micros: int = 0

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "computed": self.computed,
            "expected": self.expected,
            "micros": self.micros,
        }


@dataclass
class VerificationReport:
    prime: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"prime": self.prime, "checks": [c.as_dict() for c in self.checks]}


# ---------------------------------------------------------------------------
# products of residues: the p = 5 (mod 8) and p = 1 (mod 8) congruences
# ---------------------------------------------------------------------------


def brute_Mp(p: int) -> int:
    """Product of the quadratic residues in (0, p/2), mod p."""
    _require_odd_prime_modulus(p)
    return int(kernels.half_residue_stats(p)[4])


def verify_thm1(p: int) -> Thm1Report:
    if p % 8 != 5:
        raise UnsupportedResidueClassError(f"p={p} is not 5 mod 8")
    m = brute_Mp(p)
    r = count_fourth_power_residues_half(p)
    predicted = (-1) ** (1 + r)
    return Thm1Report(p=p, Mp=m, r=r, predicted=predicted, passed=m == predicted % p)


def verify_thm2(p: int, cross_check: bool = False) -> Thm2Report:
    """Solve the p = 1 mod 8 congruence for the sign (-1)^beta_p.

    sigma = C_p (-1)^(1 + floor(p/8)) (|b|/|a|) ((p-1)/2)! / M_p must be +-1.
    With ``cross_check`` the residue-level square-root ratio defining beta_p
    is also required to square to 1.
    """
    if p % 8 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 8")
    m = brute_Mp(p)
    dec = quartic.decompose(p)
    c = quartic.c_sign(p)
    sym = jacobi(dec.b_abs, abs(dec.a))
    fl = p // 8
    f2 = factorial_mod((p - 1) // 2, p)
    s = c * (-1) ** (1 + fl) * sym * f2 * pow(m, -1, p) % p
    if s == 1:
        sigma = 1
    elif s == p - 1:
        sigma = -1
    else:
        raise IdentityViolationError(f"sigma = {s} mod {p} is not +-1")
    if cross_check:
        quartic.beta_ratio_candidates(p)
    return Thm2Report(
        p=p,
        Mp=m,
        C_p=c,
        jacobi_symbol_b_over_a=sym,
        floor_p_8=fl,
        sigma=sigma,
        beta_p=(1 - sigma) // 2,
        passed=True,
    )


# ---------------------------------------------------------------------------
# harmonic sums
# ---------------------------------------------------------------------------


def _half_residues(p: int) -> np.ndarray:
    chi = legendre_table(p)
    x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    return x[chi[1 : (p - 1) // 2 + 1] == 1]


def harmonic_sum(p: int, n: int) -> HarmonicRecord:
    """Sum of x^-n over quadratic residues x in (0, p/2), mod p."""
    _require_odd_prime_modulus(p)
    if n < 1:
        raise ValueError("order n must be positive")
    v = kernels.inverse_power_sum(_half_residues(p), n, p, p - 1)
    return HarmonicRecord(p=p, n=n, value=int(v))


def half_harmonic(p: int) -> int:
    """H_{(p-1)/2} mod p."""
    xs = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    return int(kernels.inverse_power_sum(xs, 1, p, p - 1))


def wolstenholme_residue(p: int) -> int:
    """H_{p-1} mod p^2, via inverses mod p^2."""
    xs = np.arange(1, p, dtype=np.int64)
    return int(kernels.inverse_power_sum(xs, 1, p * p, p * (p - 1)))


def corpus_checks(p: int) -> list[CheckResult]:
    """Wolstenholme and the two easy harmonic congruences, for p > 3."""
    if p <= 3:
        raise UsageError("corpus checks need p > 3")
    return [_check_wolstenholme(p, None), _check_harmonic_id(p, None)]


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

TABLE_NAMES = ("mp", "h1", "h2", "invariants")


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def invariants_row(p: int) -> dict:
    row = {
        "prime": p,
        "p_mod_8": p % 8,
        "Mp": brute_Mp(p),
        "A": None,
        "B": None,
        "h_real": None,
        "u": None,
        "v": None,
        "L_minus1": None,
        "h_imag": None,
        "a": None,
        "b_abs": None,
        "C_p": None,
    }
    sums = classfield.residue_sums(p)
    row["A"], row["B"] = sums.A, sums.B
    if p % 4 == 1:
        unit = classfield.fundamental_unit(p)
        row.update(h_real=unit.h, u=unit.u, v=unit.v, L_minus1=_frac(classfield.l_minus_one(p).Lminus1))
    else:
        row["h_imag"] = classfield.class_number_imag(p)
    if p % 8 == 1:
        dec = quartic.decompose(p)
        row.update(a=dec.a, b_abs=dec.b_abs, C_p=quartic.c_sign(p))
    return row


def generate_table(name: str, max_p: int) -> list[dict]:
    if name not in TABLE_NAMES:
        raise UsageError(f"unknown table {name!r}; choose from {', '.join(TABLE_NAMES)}")
    if max_p < 3:
        raise UsageError("max_p must be at least 3")
    primes = odd_primes(3, max_p)
    if name == "mp":
        return [{"prime": p, "mp": brute_Mp(p)} for p in primes if p % 4 == 3]
    if name == "h1":
        return [{"prime": p, "h1": harmonic_sum(p, 1).value} for p in primes if p % 4 == 1]
    if name == "h2":
        return [{"prime": p, "h2": harmonic_sum(p, 2).value} for p in primes if p % 4 == 3]
    return [invariants_row(p) for p in primes]


def format_table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in rows)
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: "" if v is None else v for k, v in r.items()})
    return buf.getvalue()


# ---------------------------------------------------------------------------
# named checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanConfig:
    checks: tuple[str, ...]
    min_p: int = 3
    max_p: int = 100
    jobs: int = 1
    precision: int = analytic.DEFAULT_PREC
    fmt: str = "json"
    out: str | None = None
    all_r: bool = False
    timing: bool = False


def _pair(name, lhs, rhs):
    return CheckResult(name, lhs == rhs, str(lhs), str(rhs))


def _numeric(name, residual, p, bits):
    bound = mpmath.sqrt(p) * mpmath.mpf(2) ** (-bits)
    return CheckResult(name, bool(residual < bound), mpmath.nstr(residual, 6), f"< 2^-{bits}*sqrt({p})")


def _check_thm1(p, cfg):
    rep = verify_thm1(p)
    return CheckResult("thm1", rep.passed, f"M_p={rep.Mp} r={rep.r}", f"(-1)^(1+r)={rep.predicted % p}")


def _check_thm2(p, cfg):
    rep = verify_thm2(p)
    return CheckResult(
        "thm2",
        rep.passed,
        f"sigma={rep.sigma} beta_p={rep.beta_p} C_p={rep.C_p} M_p={rep.Mp}",
        "sigma in {1,-1}",
    )


def _check_apbp(p, cfg):
    s = classfield.residue_sums(p)
    diff = classfield.expected_residue_difference(p)
    ok = s.A + s.B == (p * p - 1) // 8 and s.A - s.B == diff
    return CheckResult("apbp", ok, f"A+B={s.A + s.B} A-B={s.A - s.B}", f"A+B={(p * p - 1) // 8} A-B={diff}")


def _check_ap_closed(p, cfg):
    return _pair("ap-closed", classfield.a_p_closed_form(p), classfield.residue_sums(p).A)


def _check_unit_cong(p, cfg):
    return _pair("unit-cong", *classfield.unit_congruence_check(p))


def _check_jacobi_cong(p, cfg):
    ctx = prime_context(p)
    j = quartic.jacobi_sum(ctx)
    dec = quartic.decompose(p)
    lhs, rhs = quartic.jacobi_congruence_check(ctx)
    shape_ok = j.re == dec.a and abs(j.im) == 4 * dec.b_abs and j.norm() == p
    return CheckResult(
        "jacobi-cong",
        shape_ok and lhs == rhs,
        f"J={j} J_mod_p={lhs}",
        f"a={dec.a} |b|={dec.b_abs} J_mod_p={rhs}",
    )


def _check_c_sign(p, cfg):
    x = quartic.c_sign_value(p)
    return CheckResult("c-sign", x in (1, p - 1), str(x), f"1 or {p - 1}")


def _check_two_fourth(p, cfg):
    b_even, two_fourth = quartic.two_is_fourth_power(p)
    return CheckResult("two-fourth", b_even == two_fourth, f"2|b={b_even}", f"(2/p)_4=1 is {two_fourth}")


def _check_stickelberger(p, cfg):
    ctx = prime_context(p)
    rs = range(p - 1) if cfg.all_r else cyclotomic.default_r_values(p)
    units = set()
    for r in rs:
        rep = cyclotomic.stickelberger_check(ctx, r)
        units.add(rep.unit_value * factorial_mod(r, p) % p)
    label = f"r=0..{p - 2}" if cfg.all_r else "r=" + ",".join(map(str, rs))
    return CheckResult("stickelberger", units == {p - 1}, f"{label} e_r*r!={sorted(units)}", f"[{p - 1}]")


def _check_tau(p, cfg):
    return _numeric("tau", analytic.quadratic_gauss_sum_check(p, cfg.precision), p, cfg.precision // 2)


def _check_gauss4(p, cfg):
    res = analytic.quartic_gauss_sum_check(prime_context(p), cfg.precision)
    return _numeric("gauss4", res, p, cfg.precision // 2)


def _check_lemma21(p, cfg):
    bits = cfg.precision // 2
    bound = mpmath.sqrt(p) * mpmath.mpf(2) ** (-bits)
    r1 = analytic.lemma21_check(p, cfg.precision)
    r2 = analytic.w_norm_check(p, cfg.precision)
    return CheckResult(
        "lemma21",
        bool(r1 < bound and r2 < bound),
        f"W={mpmath.nstr(r1, 6)} |W|^2={mpmath.nstr(r2, 6)}",
        f"< 2^-{bits}*sqrt({p})",
    )


def _check_sun_prod(p, cfg):
    return _numeric("sun-prod", analytic.sun_product_check(p, cfg.precision), p, cfg.precision // 2)


def _check_petrov_sun(p, cfg):
    prec = analytic.petrov_sun_precision(p, cfg.precision)
    res = analytic.petrov_sun_check(p, prec)
    return CheckResult("petrov-sun", bool(res < mpmath.mpf(2) ** -40), mpmath.nstr(res, 6), "< 2^-40")


def _check_wolstenholme(p, cfg):
    return _pair("wolstenholme", wolstenholme_residue(p), 0)


def _check_harmonic_id(p, cfg):
    if p % 4 == 3:
        lhs = harmonic_sum(p, 1).value
        rhs = half_harmonic(p) * pow(2, -1, p) % p
        return _pair("harmonic-id", lhs, rhs)
    return _pair("harmonic-id", harmonic_sum(p, 2).value, 0)


# name -> (applies to p, runner)
CHECKS = {
    "thm1": (lambda p: p % 8 == 5, _check_thm1),
    "thm2": (lambda p: p % 8 == 1, _check_thm2),
    "apbp": (lambda p: p > 3, _check_apbp),
    "ap-closed": (lambda p: p > 3, _check_ap_closed),
    "unit-cong": (lambda p: p % 4 == 1, _check_unit_cong),
    "jacobi-cong": (lambda p: p % 8 == 1, _check_jacobi_cong),
    "c-sign": (lambda p: p % 8 == 1, _check_c_sign),
    "two-fourth": (lambda p: p % 8 == 1, _check_two_fourth),
    "stickelberger": (lambda p: p % 8 == 1, _check_stickelberger),
    "tau": (lambda p: True, _check_tau),
    "gauss4": (lambda p: p % 8 == 1, _check_gauss4),
    "lemma21": (lambda p: p % 4 == 1, _check_lemma21),
    "sun-prod": (lambda p: p > 3, _check_sun_prod),
    "petrov-sun": (lambda p: p % 4 == 1 and p <= analytic.PETROV_SUN_MAX_P, _check_petrov_sun),
    "wolstenholme": (lambda p: p > 3, _check_wolstenholme),
    "harmonic-id": (lambda p: p > 3, _check_harmonic_id),
}


def parse_checks(spec: str | list[str]) -> tuple[str, ...]:
    names = spec.split(",") if isinstance(spec, str) else list(spec)
    names = [n.strip() for n in names if n.strip()]
    if not names:
        raise UsageError("no checks given")
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    return tuple(dict.fromkeys(names))


def run_check(name: str, p: int, cfg: ScanConfig) -> CheckResult:
    runner = CHECKS[name][1]
    t0 = time.perf_counter_ns()
    try:
        res = runner(p, cfg)
    except (IdentityViolationError, QrlabError) as err:
        res = CheckResult(name, False, f"error: {err}", "")
    micros = (time.perf_counter_ns() - t0) // 1000 if cfg.timing else 0
    return CheckResult(res.name, res.passed, res.computed, res.expected, micros)


def verify_prime(p: int, cfg: ScanConfig) -> VerificationReport:
    rep = VerificationReport(prime=p)
    for name in cfg.checks:
        if CHECKS[name][0](p):
            rep.checks.append(run_check(name, p, cfg))
    return rep


def _verify_chunk(args):
    primes, cfg = args
    return [verify_prime(p, cfg) for p in primes]


def run_scan(cfg: ScanConfig) -> tuple[list[VerificationReport], int]:
    """Run every configured check over the primes in range.

    Returns the reports sorted by prime and the exit code (0 all pass, 1 a failure).
    """
    parse_checks(list(cfg.checks))
    if cfg.min_p > cfg.max_p:
        raise UsageError(f"empty range [{cfg.min_p}, {cfg.max_p}]")
    if cfg.jobs < 1:
        raise UsageError("jobs must be >= 1")
    primes = [p for p in odd_primes(cfg.min_p, cfg.max_p) if any(CHECKS[n][0](p) for n in cfg.checks)]
    if cfg.jobs == 1 or len(primes) < 2:
        reports = [verify_prime(p, cfg) for p in primes]
    else:
        # round-robin chunks balance the O(p) cost across workers
        chunks = [(primes[i :: cfg.jobs * 4], cfg) for i in range(cfg.jobs * 4)]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = [r for chunk in pool.map(_verify_chunk, chunks) for r in chunk]
    reports.sort(key=lambda r: r.prime)
    code = 0 if all(r.passed for r in reports) else 1
    return reports, code


def format_reports(reports: list[VerificationReport], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.as_dict()) + "\n" for r in reports)
    if fmt != "csv":
        raise UsageError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["prime", "check", "pass", "computed", "expected", "micros"])
    for r in reports:
        for c in r.checks:
            w.writerow([r.prime, c.name, "true" if c.passed else "false", c.computed, c.expected, c.micros])
    return buf.getvalue()


def inspect_prime(p: int, precision: int = analytic.DEFAULT_PREC) -> dict:
    """Full per-prime record: symbols, class data, quartic data and every applicable check."""
    ctx = prime_context(p)
    rec = {
        "prime": p,
        "p_mod_8": p % 8,
        "primitive_root": ctx.g,
        "i_image": ctx.i_image,
        "legendre_2": int(legendre_table(p)[2 % p]),
        "Mp": brute_Mp(p),
    }
    if p > 3:
        rec.update(invariants_row(p))
    if p % 4 == 1:
        rec["fourth_power_residues_half"] = count_fourth_power_residues_half(p)
        rec["B2chi"] = _frac(classfield.l_minus_one(p).B2chi)
    if p % 8 == 1:
        j = quartic.jacobi_sum(ctx)
        rep = verify_thm2(p)
        rec.update(jacobi_sum=str(j), sigma=rep.sigma, beta_p=rep.beta_p)
    if p > 3:
        rec["harmonic_R_1"] = harmonic_sum(p, 1).value
        rec["harmonic_R_2"] = harmonic_sum(p, 2).value
    cfg = ScanConfig(checks=tuple(CHECKS), min_p=p, max_p=p, precision=precision)
    rec["checks"] = [c.as_dict() for c in verify_prime(p, cfg).checks]
    return rec
