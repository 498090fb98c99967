import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrlab import cyclotomic as cy
from qrlab.errors import InvalidArgumentError
from qrlab.modcore import factorial_mod, odd_primes, prime_context

from oracles import pi_expansion_exact

P8 = [p for p in odd_primes(3, 400) if p % 8 == 1]


def test_trivial_character_coeffs():
    x = cy.gauss_sum_coeffs(prime_context(17), 0)
    assert x.coeffs[0] == 0 and np.all(x.coeffs[1:] == 1)


def test_m1_coeffs_unrolled():
    ctx = prime_context(17)
    x = cy.gauss_sum_coeffs(ctx, 1)
    for k in range(16):
        assert x.coeffs[pow(ctx.g, k, 17)] == pow(ctx.g, -k, 17)


def test_coeff_index_range():
    with pytest.raises(InvalidArgumentError):
        cy.gauss_sum_coeffs(prime_context(17), 16)


def test_expansion_of_one_and_zeta():
    one = cy.CycIntModP.zeta_power(17, 0)
    z = cy.CycIntModP.zeta_power(17, 1)
    assert list(cy.pi_expansion(one, 3).e) == [1, 0, 0, 0]
    assert list(cy.pi_expansion(z, 3).e) == [1, 1, 0, 0]


def test_expansion_m1_p17():
    e = cy.pi_expansion(cy.gauss_sum_coeffs(prime_context(17), 1), 1).e
    assert list(e) == [0, 16]


@pytest.mark.parametrize("p,m", [(17, 1), (17, 4), (41, 10), (73, 18)])
def test_expansion_matches_exact_binomials(p, m):
    x = cy.gauss_sum_coeffs(prime_context(p), m)
    kmax = min(p - 1, 2 * m + 2)
    assert list(cy.pi_expansion(x, kmax).e) == pi_expansion_exact([int(c) for c in x.coeffs], kmax, p)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([17, 41, 73]), st.integers(0, 2**32 - 1))
def test_pi_expansion_is_linear(p, seed):
    rng = np.random.default_rng(seed)
    a = cy.CycIntModP(p, rng.integers(0, p, p).astype(np.int64))
    b = cy.CycIntModP(p, rng.integers(0, p, p).astype(np.int64))
    kmax = p // 2
    lhs = cy.pi_expansion(a + b, kmax).e
    rhs = (cy.pi_expansion(a, kmax).e + cy.pi_expansion(b, kmax).e) % p
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("r,unit", [(0, 16), (1, 16), (4, 12)])
def test_stickelberger_examples_p17(r, unit):
    rep = cy.stickelberger_check(prime_context(17), r)
    assert rep.valuation_ok and rep.unit_value == unit == rep.expected


@pytest.mark.parametrize("p", P8)
def test_stickelberger_default_set(p):
    ctx = prime_context(p)
    for r in cy.default_r_values(p):
        rep = cy.stickelberger_check(ctx, r)
        assert rep.passed
        assert rep.unit_value * factorial_mod(r, p) % p == p - 1
        exp = cy.pi_expansion(cy.gauss_sum_coeffs(ctx, r), r)
        assert exp.valuation() == r


def test_stickelberger_r_range():
    with pytest.raises(InvalidArgumentError):
        cy.stickelberger_check(prime_context(17), 16)


@pytest.mark.parametrize("p", P8)
def test_gauss_jacobi_consistency(p):
    lhs, rhs = cy.gauss_jacobi_consistency(prime_context(p))
    assert lhs == rhs
