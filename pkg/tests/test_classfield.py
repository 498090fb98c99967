from fractions import Fraction

import pytest

from qrlab import classfield as cf
from qrlab.errors import InvalidArgumentError, UnsupportedResidueClassError
from qrlab.modcore import legendre, odd_primes

from oracles import class_number_imag_forms, class_number_real_forms, legendre_by_squares, pell_bruteforce

PRIMES = odd_primes(5, 1000)
P1 = [p for p in PRIMES if p % 4 == 1]
P3 = [p for p in PRIMES if p % 4 == 3]


@pytest.mark.parametrize("p,uv", [(5, (1, 1)), (13, (3, 1)), (17, (8, 2))])
def test_fundamental_unit_examples(p, uv):
    d = cf.fundamental_unit(p)
    assert (d.u, d.v) == uv


# pell_bruteforce is an ascending search on v; only feasible where eps_p is small
@pytest.mark.parametrize("p", [p for p in P1 if p < 200 and p not in (73, 97, 109, 113, 137, 149, 157, 181, 193, 197)])
def test_pell_unit_is_minimal(p):
    assert cf.pell_unit(p) == pell_bruteforce(p)


@pytest.mark.parametrize("p", P1)
def test_unit_invariants(p):
    d = cf.fundamental_unit(p)
    assert d.u * d.u - p * d.v * d.v in (4, -4)
    assert d.u > 0 and d.v > 0 and d.regulator > 0
    assert d.h >= 1
    # prime discriminant: the fundamental unit has norm -1
    assert d.norm_sign == -1


@pytest.mark.parametrize("p,h", [(5, 1), (17, 1), (229, 3)])
def test_class_number_real_examples(p, h):
    assert cf.class_number_real(p) == h


@pytest.mark.parametrize("p", [p for p in P1 if p < 700] + [1129, 1297, 2089])
def test_class_number_real_matches_form_cycles(p):
    assert cf.class_number_real(p) == class_number_real_forms(p)


def test_class_number_real_precision_retry_is_stable():
    assert cf._class_number_real_at(229, 15, 1, 64)[0] == cf._class_number_real_at(229, 15, 1, 512)[0] == 3


@pytest.mark.parametrize("p,h", [(7, 1), (11, 1), (23, 3), (3, 1)])
def test_class_number_imag_examples(p, h):
    assert cf.class_number_imag(p) == h


@pytest.mark.parametrize("p", P3)
def test_class_number_imag_matches_reduced_forms(p):
    h = cf.class_number_imag(p)
    assert h == class_number_imag_forms(p)
    assert h % 2 == 1


def test_class_number_imag_wrong_class():
    with pytest.raises(UnsupportedResidueClassError):
        cf.class_number_imag(13)


@pytest.mark.parametrize(
    "p,b2,l", [(5, Fraction(4, 5), Fraction(-2, 5)), (13, Fraction(4), Fraction(-2)), (17, Fraction(8), Fraction(-4))]
)
def test_l_minus_one_examples(p, b2, l):
    d = cf.l_minus_one(p)
    assert d.B2chi == b2 and d.Lminus1 == l


@pytest.mark.parametrize("p", P1[:40])
def test_b2chi_is_weighted_square_sum(p):
    d = cf.l_minus_one(p)
    assert d.B2chi * p == sum(legendre_by_squares(a, p) * a * a for a in range(1, p))
    assert d.B2chi == -2 * d.Lminus1


@pytest.mark.parametrize("p,a,b", [(7, 3, 3), (13, 8, 13), (11, 13, 2)])
def test_residue_sums_examples(p, a, b):
    s = cf.residue_sums(p)
    assert (s.A, s.B) == (a, b)


@pytest.mark.parametrize("p", PRIMES)
def test_residue_sum_identities(p):
    s = cf.residue_sums(p)
    assert s.A + s.B == (p * p - 1) // 8
    assert s.A - s.B == cf.expected_residue_difference(p)
    assert cf.a_p_closed_form(p) == s.A
    if p % 8 == 3:
        assert s.A - s.B == p * cf.class_number_imag(p)
    if p % 8 == 7:
        assert s.A == s.B


@pytest.mark.parametrize("p,expected", [(7, 3), (11, 13), (13, 8)])
def test_a_p_closed_form_examples(p, expected):
    assert cf.a_p_closed_form(p) == expected


def test_a_p_closed_form_needs_p_above_3():
    with pytest.raises(InvalidArgumentError):
        cf.a_p_closed_form(3)


@pytest.mark.parametrize("p,pair", [(5, (3, 3)), (13, (8, 8)), (17, (4, 4))])
def test_unit_congruence_examples(p, pair):
    assert cf.unit_congruence_check(p) == pair


@pytest.mark.parametrize("p", P1)
def test_unit_congruence_scan(p):
    lhs, rhs = cf.unit_congruence_check(p)
    assert lhs == rhs


@pytest.mark.parametrize("p", [5, 13, 29, 229])
def test_unit_power_matches_exact_integer_power(p):
    # eps^h = (X + Y sqrt p) / 2^h exactly; reduce X * 2^-h mod p
    d = cf.fundamental_unit(p)
    x, y = 1, 0
    for _ in range(d.h):
        x, y = x * d.u + p * y * d.v, x * d.v + y * d.u
    assert cf.unit_power_mod_p(p).x == x * pow(2, -d.h, p) % p
