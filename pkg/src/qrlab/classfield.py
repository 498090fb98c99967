"""Real and imaginary quadratic invariants attached to an odd prime p.

Fundamental unit and class number of Q(sqrt p), class number of Q(sqrt -p),
the generalized Bernoulli number B_{2,chi} with L(-1, chi) = -B_{2,chi}/2,
and the sums A_p, B_p of residues / nonresidues in (0, p/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import mpmath

from . import kernels
from .errors import (
    IdentityViolationError,
    InvalidArgumentError,
    PrecisionError,
    UnsupportedResidueClassError,
)
from .modcore import QuadExtElem, _require_odd_prime_modulus, factorial_mod, legendre

DEFAULT_CLASS_PREC = 64
_MAX_CLASS_PREC = 4096
_INTEGRALITY_TOL = 1e-6


@dataclass(frozen=True)
class RealQuadData:
    """eps_p = (u + v sqrt p)/2 > 1, class number h, regulator log eps_p."""

    p: int
    u: int
    v: int
    h: int
    regulator: mpmath.mpf

    @property
    def norm_sign(self) -> int:
        return (self.u * self.u - self.p * self.v * self.v) // 4


@dataclass(frozen=True)
class ImagQuadData:
    p: int
    h: int


@dataclass(frozen=True)
class LValueData:
    p: int
    B2chi: Fraction
    Lminus1: Fraction


@dataclass(frozen=True)
class ResidueSums:
    p: int
    A: int
    B: int


def _require_p1mod4(p: int) -> None:
    _require_odd_prime_modulus(p)
    if p % 4 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 4")


def pell_unit(p: int) -> tuple[int, int]:
    """Minimal positive (u, v) with u^2 - p v^2 = +-4, p = 1 mod 4.

    Walks the continued fraction of (1 + sqrt p)/2; the first convergent
    h/k with (2h - k)^2 - p k^2 = +-4 gives (u, v) = (2h - k, k).
    """
    _require_p1mod4(p)
    s = isqrt(p)
    P, Q = 1, 2
    h1, h2 = 1, 0
    k1, k2 = 0, 1
    while True:
        a = (P + s) // Q
        h1, h2 = a * h1 + h2, h1
        k1, k2 = a * k1 + k2, k1
        u, v = 2 * h1 - k1, k1
        if u > 0 and u * u - p * v * v in (4, -4):
            return u, v
        P = a * Q - P
        Q = (p - P * P) // Q


def _regulator(u: int, v: int, p: int, ctx) -> mpmath.mpf:
    return ctx.log((u + v * ctx.sqrt(p)) / 2)


def _class_number_real_at(p: int, u: int, v: int, prec: int) -> tuple[int, mpmath.mpf]:
    ctx = mpmath.MPContext()
    ctx.prec = prec
    chi = kernels.legendre_table(p)
    # chi is even, so fold a and p - a together
    res = ctx.mpf(1)
    non = ctx.mpf(1)
    for a in range(1, (p - 1) // 2 + 1):
        term = 2 * ctx.sinpi(ctx.mpf(a) / p)
        if chi[a] == 1:
            res *= term
        else:
            non *= term
    reg = _regulator(u, v, p, ctx)
    approx = ctx.log(non / res) / reg
    h = int(ctx.nint(approx))
    if abs(approx - h) > _INTEGRALITY_TOL:
        raise PrecisionError(f"h({p}) estimate {approx} not within {_INTEGRALITY_TOL} of an integer")
    return h, reg


def class_number_real(p: int, prec: int = DEFAULT_CLASS_PREC) -> int:
    """h(p) from the analytic class number formula, doubling precision on failure."""
    h = fundamental_unit(p, prec).h
    if h < 1:
        raise IdentityViolationError(f"class number h({p}) = {h} < 1")
    return h


@lru_cache(maxsize=4096)
def fundamental_unit(p: int, prec: int = DEFAULT_CLASS_PREC) -> RealQuadData:
    u, v = pell_unit(p)
    while True:
        try:
            h, reg = _class_number_real_at(p, u, v, prec)
            break
        except PrecisionError:
            if prec >= _MAX_CLASS_PREC:
                raise
            prec *= 2
    return RealQuadData(p=p, u=u, v=v, h=h, regulator=reg)


def class_number_imag(p: int) -> int:
    """h(-p) for p = 3 mod 4 by counting residues in (0, p/2).

    p = 3 is special-cased to 1.
    """
    _require_odd_prime_modulus(p)
    if p % 4 != 3:
        raise UnsupportedResidueClassError(f"p={p} is not 3 mod 4")
    if p == 3:
        return 1
    r, n, _, _, _ = kernels.half_residue_stats(p)
    den = 2 - legendre(2, p)
    h, rem = divmod(int(r) - int(n), den)
    if rem or h < 1:
        raise IdentityViolationError(f"(R - N)/(2 - (2/p)) = ({r} - {n})/{den} is not a positive integer")
    return h


def imag_quad_data(p: int) -> ImagQuadData:
    return ImagQuadData(p=p, h=class_number_imag(p))


@lru_cache(maxsize=4096)
def l_minus_one(p: int) -> LValueData:
    _require_p1mod4(p)
    b2 = Fraction(int(kernels.chi_square_sum(p)), p)
    return LValueData(p=p, B2chi=b2, Lminus1=-b2 / 2)


def residue_sums(p: int) -> ResidueSums:
    _require_odd_prime_modulus(p)
    _, _, a, b, _ = kernels.half_residue_stats(p)
    return ResidueSums(p=p, A=int(a), B=int(b))


def a_p_closed_form(p: int) -> int:
    """Closed form for A_p by the class of p mod 8."""
    _require_odd_prime_modulus(p)
    if p <= 3:
        raise InvalidArgumentError("closed form for A_p needs p > 3")
    r8 = p % 8
    base = Fraction(p * p - 1)
    if r8 == 7:
        val = base / 16
    elif r8 == 3:
        val = (base + 8 * p * class_number_imag(p)) / 16
    elif r8 == 1:
        val = (base + 12 * l_minus_one(p).Lminus1) / 16
    else:
        val = (base + 20 * l_minus_one(p).Lminus1) / 16
    if val.denominator != 1:
        raise IdentityViolationError(f"closed form for A_{p} is not an integer: {val}")
    return int(val)


def expected_residue_difference(p: int) -> Fraction:
    """A_p - B_p as predicted from h(-p) or L(-1, chi)."""
    _require_odd_prime_modulus(p)
    if p <= 3:
        raise InvalidArgumentError("needs p > 3")
    r8 = p % 8
    if r8 == 7:
        return Fraction(0)
    if r8 == 3:
        return Fraction(p * class_number_imag(p))
    chi2 = legendre(2, p)
    return 2 * (1 - Fraction(chi2, 4)) * l_minus_one(p).Lminus1


def unit_power_mod_p(p: int) -> QuadExtElem:
    """eps_p^h(p) reduced mod p, as a + b*s with s^2 = p = 0."""
    data = fundamental_unit(p)
    half = pow(2, -1, p)
    eps = QuadExtElem(data.u * half % p, data.v * half % p, 0, p)
    return eps ** data.h


def unit_congruence_check(p: int) -> tuple[int, int]:
    """(a_p mod p, -((p-1)/2)! mod p) where eps_p^h(p) = a_p + b_p sqrt p."""
    _require_p1mod4(p)
    a_p = unit_power_mod_p(p).x
    return a_p, (-factorial_mod((p - 1) // 2, p)) % p
