"""Gauss sums as elements of Z[zeta_p] reduced coefficientwise mod p, and their
expansion in powers of pi = zeta_p - 1.

A character value zeta_{p-1}^k is reduced through zeta_{p-1} -> g, so a
Gauss sum G(omega^-m) = sum_t omega^-m(t) zeta_p^t becomes the vector
c_t = t^-m mod p.  Writing zeta_p^j = (1 + pi)^j gives the pi-adic
coefficients e_k = sum_j c_j binom(j, k) mod p.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import IdentityViolationError, InvalidArgumentError, UnsupportedResidueClassError
from .modcore import PrimeContext, factorial_mod
from .quartic import jacobi_sum


@dataclass(frozen=True)
class CycIntModP:
    p: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.shape != (self.p,):
            raise InvalidArgumentError(f"expected {self.p} coefficients, got {self.coeffs.shape}")

    def __add__(self, other: CycIntModP) -> CycIntModP:
        return CycIntModP(self.p, (self.coeffs + other.coeffs) % self.p)

    @classmethod
    def zeta_power(cls, p: int, j: int) -> CycIntModP:
        c = np.zeros(p, dtype=np.int64)
        c[j % p] = 1
        return cls(p, c)


@dataclass(frozen=True)
class PiAdicExpansion:
    p: int
    kmax: int
    e: np.ndarray

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all vanish up to kmax."""
        nz = np.flatnonzero(self.e)
        return int(nz[0]) if nz.size else None


@dataclass(frozen=True)
class StickelbergerReport:
    p: int
    r: int
    valuation_ok: bool
    unit_value: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.valuation_ok and self.unit_value == self.expected


def gauss_sum_coeffs(ctx: PrimeContext, m: int) -> CycIntModP:
    p = ctx.p
    if not 0 <= m < p - 1:
        raise InvalidArgumentError(f"character index m={m} outside [0, {p - 1})")
    # t^-m = t^(p-1-m); t = 0 contributes nothing
    c = kernels.inverse_powers(p, p - 1 - m)
    return CycIntModP(p, np.asarray(c, dtype=np.int64))


def pi_expansion(x: CycIntModP, kmax: int) -> PiAdicExpansion:
    if not 0 <= kmax < x.p:
        raise InvalidArgumentError(f"kmax={kmax} outside [0, {x.p})")
    e = kernels.pi_expansion(np.ascontiguousarray(x.coeffs, dtype=np.int64), kmax, x.p)
    return PiAdicExpansion(x.p, kmax, np.asarray(e, dtype=np.int64))


def stickelberger_check(ctx: PrimeContext, r: int) -> StickelbergerReport:
    """G(omega^-r) / pi^r = -1/r! mod the prime above p."""
    p = ctx.p
    if p % 8 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 8")
    if not 0 <= r <= p - 2:
        raise InvalidArgumentError(f"r={r} outside [0, {p - 2}]")
    exp = pi_expansion(gauss_sum_coeffs(ctx, r), r)
    valuation_ok = not np.any(exp.e[:r])
    expected = -pow(factorial_mod(r, p), -1, p) % p
    report = StickelbergerReport(p, r, bool(valuation_ok), int(exp.e[r]), expected)
    if not report.passed:
        raise IdentityViolationError(
            f"Stickelberger fails at p={p}, r={r}: e_{r}={report.unit_value}, expected {expected}, "
            f"lower terms vanish: {valuation_ok}"
        )
    return report


def default_r_values(p: int) -> list[int]:
    return sorted({0, 1, 2, (p - 1) // 4, (p - 1) // 2})


def gauss_jacobi_consistency(ctx: PrimeContext) -> tuple[int, int]:
    """Leading pi-adic units of G(chi)^2 and G(chi^2) J(chi, chi) for the quartic chi.

    chi = omega^-r with r = (p-1)/4; both sides have valuation 2r, so
    comparing e_r(G(chi))^2 with e_2r(G(chi^2)) * (J mod p) tests
    G(chi)^2 = G(chi^2) J(chi, chi) modulo the prime above p.
    """
    p = ctx.p
    if p % 8 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 8")
    r = (p - 1) // 4
    g1 = pi_expansion(gauss_sum_coeffs(ctx, r), r).e[r]
    g2 = pi_expansion(gauss_sum_coeffs(ctx, 2 * r), 2 * r).e[2 * r]
    j = jacobi_sum(ctx).reduce(p, ctx.i_image)
    return int(g1) * int(g1) % p, int(g2) * j % p
