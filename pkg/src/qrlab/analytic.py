"""Arbitrary-precision complex evaluation of Gauss sums and cyclotomic products.

Every function takes its working precision in bits and builds a private
mpmath context, so nothing here touches global precision state.  Checks
return the absolute residual |computed - closed form| as an mpf.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from . import kernels
from .classfield import a_p_closed_form, class_number_imag, fundamental_unit
from .errors import IdentityViolationError, InvalidArgumentError, UnsupportedResidueClassError
from .modcore import PrimeContext, _require_odd_prime_modulus, jacobi, legendre
from .quartic import c_sign, decompose, jacobi_sum, quartic_character

DEFAULT_PREC = 256
PETROV_SUN_MAX_P = 200
_RENORM_EVERY = 64
_PS_GUARD_BITS = 1


@dataclass(frozen=True)
class BigComplex:
    value: mpmath.mpc
    prec: int

    def __post_init__(self):
        if self.prec < 64:
            raise InvalidArgumentError(f"precision {self.prec} < 64 bits")

    def __abs__(self):
        return abs(self.value)

    @property
    def arg(self):
        return mpmath.arg(self.value)


@dataclass(frozen=True)
class ClosedFormWp:
    branch: int
    sign: int
    zeta_exponent: int
    unit_exponent_halves: int  # eps_p^(this / 2)
    i_factor: bool


def _context(prec: int):
    if prec < 64:
        raise InvalidArgumentError(f"precision {prec} < 64 bits")
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


def zeta_powers(ctx, p: int) -> list:
    """[zeta_p^0, ..., zeta_p^(p-1)] by repeated multiplication, renormalised to |z| = 1."""
    z = ctx.expjpi(ctx.mpf(2) / p)
    out = [ctx.mpc(1)]
    w = ctx.mpc(1)
    for k in range(1, p):
        w = w * z
        if k % _RENORM_EVERY == 0:
            w = w / abs(w)
        out.append(w)
    return out


def _sqrt_p(ctx, p):
    return ctx.sqrt(ctx.mpf(p))


def quadratic_gauss_sum(p: int, prec: int = DEFAULT_PREC) -> BigComplex:
    _require_odd_prime_modulus(p)
    ctx = _context(prec)
    zs = zeta_powers(ctx, p)
    chi = kernels.legendre_table(p)
    return BigComplex(ctx.fsum(zs[k] * int(chi[k]) for k in range(1, p)), prec)


def quadratic_gauss_sum_check(p: int, prec: int = DEFAULT_PREC):
    ctx = _context(prec)
    tau = quadratic_gauss_sum(p, prec).value
    root = _sqrt_p(ctx, p)
    expected = ctx.mpc(root, 0) if p % 4 == 1 else ctx.mpc(0, root)
    return abs(tau - expected)


def quartic_gauss_sum(ctx_p: PrimeContext, prec: int = DEFAULT_PREC) -> BigComplex:
    """G(chi) = sum_t chi(t) zeta_p^t with chi(g^k) = (-i)^k."""
    p = ctx_p.p
    ctx = _context(prec)
    zs = zeta_powers(ctx, p)
    ex = quartic_character(ctx_p).exponents
    # bucket by character value, then combine
    buckets = [ctx.mpc(0)] * 4
    for t in range(1, p):
        k = int(ex[t])
        buckets[k] = buckets[k] + zs[t]
    b0, b1, b2, b3 = buckets
    return BigComplex(b0 - b2 + ctx.mpc(0, -1) * (b1 - b3), prec)


def quartic_gauss_closed_form(ctx_p: PrimeContext, prec: int = DEFAULT_PREC) -> BigComplex:
    """C_p (|b|/|a|) (-1)^b p^(1/4) J^(1/2) with Re J^(1/2) > 0."""
    p = ctx_p.p
    if p % 8 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 8")
    ctx = _context(prec)
    j = jacobi_sum(ctx_p)
    dec = decompose(p)
    b_signed = j.im // 4
    sym = jacobi(dec.b_abs, abs(dec.a))
    sign = c_sign(p) * sym * (-1 if b_signed % 2 else 1)
    root_j = ctx.sqrt(ctx.mpc(j.re, j.im))
    if root_j.real == 0:
        raise IdentityViolationError(f"Re J^(1/2) = 0 at p={p}")
    if root_j.real < 0:
        root_j = -root_j
    return BigComplex(sign * ctx.root(ctx.mpf(p), 4) * root_j, prec)


def quartic_gauss_sum_check(ctx_p: PrimeContext, prec: int = DEFAULT_PREC):
    g = quartic_gauss_sum(ctx_p, prec).value
    return abs(g - quartic_gauss_closed_form(ctx_p, prec).value)


def w_product(p: int, prec: int = DEFAULT_PREC) -> BigComplex:
    """Product of (1 - zeta_p^(2x)) over quadratic residues x in (0, p/2)."""
    _require_odd_prime_modulus(p)
    if p % 4 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 4")
    ctx = _context(prec)
    zs = zeta_powers(ctx, p)
    chi = kernels.legendre_table(p)
    w = ctx.mpc(1)
    for x in range(1, (p - 1) // 2 + 1):
        if chi[x] == 1:
            w = w * (1 - zs[2 * x % p])
    return BigComplex(w, prec)


def lemma21_data(p: int) -> ClosedFormWp:
    if p % 4 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 4")
    h = fundamental_unit(p).h
    exponent = a_p_closed_form(p)
    if p % 8 == 1:
        return ClosedFormWp(1, (-1) ** (p // 8), exponent, -h, False)
    return ClosedFormWp(5, (-1) ** (1 + p // 8), exponent, h, True)


def lemma21_closed_form(p: int, prec: int = DEFAULT_PREC) -> BigComplex:
    data = lemma21_data(p)
    unit = fundamental_unit(p)
    ctx = _context(prec)
    eps = (unit.u + unit.v * _sqrt_p(ctx, p)) / 2
    zeta = ctx.expjpi(ctx.mpf(2 * (data.zeta_exponent % p)) / p)
    val = data.sign * zeta * ctx.root(ctx.mpf(p), 4) * ctx.sqrt(eps) ** data.unit_exponent_halves
    if data.i_factor:
        val = val * ctx.mpc(0, 1)
    return BigComplex(val, prec)


def lemma21_check(p: int, prec: int = DEFAULT_PREC):
    return abs(w_product(p, prec).value - lemma21_closed_form(p, prec).value)


def w_norm_check(p: int, prec: int = DEFAULT_PREC):
    """| |W_p|^2 - sqrt(p) eps_p^(-(2/p) h(p)) |."""
    ctx = _context(prec)
    w = w_product(p, prec).value
    unit = fundamental_unit(p)
    eps = (unit.u + unit.v * _sqrt_p(ctx, p)) / 2
    expected = _sqrt_p(ctx, p) * eps ** (-legendre(2, p) * unit.h)
    return abs(abs(w) ** 2 - expected)


def sun_product(p: int, prec: int = DEFAULT_PREC) -> BigComplex:
    ctx = _context(prec)
    zs = zeta_powers(ctx, p)
    w = ctx.mpc(1)
    for k in range(1, (p - 1) // 2 + 1):
        w = w * (1 - zs[k * k % p])
    return BigComplex(w, prec)


def sun_product_expected(p: int, prec: int = DEFAULT_PREC) -> BigComplex:
    ctx = _context(prec)
    root = _sqrt_p(ctx, p)
    if p % 4 == 1:
        unit = fundamental_unit(p)
        eps = (unit.u + unit.v * root) / 2
        return BigComplex(ctx.mpc(root * eps ** (-unit.h)), prec)
    sign = (-1) ** ((class_number_imag(p) + 1) // 2)
    return BigComplex(ctx.mpc(0, sign * root), prec)


def sun_product_check(p: int, prec: int = DEFAULT_PREC):
    _require_odd_prime_modulus(p)
    if p <= 3:
        raise InvalidArgumentError("needs p > 3")
    return abs(sun_product(p, prec).value - sun_product_expected(p, prec).value)


def petrov_sun_precision(p: int, base: int = DEFAULT_PREC) -> int:
    """Working precision for the O(p^2)-factor product.

    At least 64 + (p^2/8) * _PS_GUARD_BITS, one guard bit per factor, and never
    below ``base``.
    """
    return max(base, 64 + -(-p * p // 8) * _PS_GUARD_BITS)


def petrov_sun_sign(p: int) -> int:
    chi = kernels.legendre_table(p)
    count = sum(1 for k in range(1, (p - 1) // 4 + 1) if 4 * k < p and chi[k] == -1)
    return -1 if count % 2 else 1


def petrov_sun_product(p: int, prec: int | None = None) -> BigComplex:
    """Product of (zeta^(j^2) + zeta^(k^2)) over 0 < j < k < p/2."""
    if prec is None:
        prec = petrov_sun_precision(p)
    ctx = _context(prec)
    zs = zeta_powers(ctx, p)
    m = (p - 1) // 2
    sq = [j * j % p for j in range(m + 1)]
    w = ctx.mpc(1)
    for k in range(2, m + 1):
        zk = zs[sq[k]]
        for j in range(1, k):
            w = w * (zs[sq[j]] + zk)
    return BigComplex(w, prec)


def petrov_sun_check(p: int, prec: int | None = None):
    _require_odd_prime_modulus(p)
    if p % 4 != 1:
        raise UnsupportedResidueClassError(f"p={p} is not 1 mod 4")
    if p > PETROV_SUN_MAX_P:
        raise InvalidArgumentError(f"p={p} above the O(p^2) product cap {PETROV_SUN_MAX_P}")
    if prec is None:
        prec = petrov_sun_precision(p)
    ctx = _context(prec)
    prod = petrov_sun_product(p, prec).value
    sign = petrov_sun_sign(p)
    if p % 8 == 1:
        return abs(prod - sign)
    unit = fundamental_unit(p)
    eps = (unit.u + unit.v * _sqrt_p(ctx, p)) / 2
    return abs(sign * prod - eps ** (-unit.h))
