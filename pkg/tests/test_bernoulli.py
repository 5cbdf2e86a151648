from fractions import Fraction

import pytest
import sympy

from chromcong.arith import is_p_integral, residue_qzp, vp
from chromcong.bernoulli import (bernoulli, bernoulli_denominator_primes, carlitz_check,
                                 cohen_check, cohen_params, kummer_check,
                                 von_staudt_clausen_check, vsc_primes, zeta_neg)
from chromcong.verdict import Status


def test_small_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_matches_sympy():
    # sympy uses B_1 = +1/2, so m = 1 is left out
    for m in [0] + list(range(2, 121)):
        assert bernoulli(m) == Fraction(str(sympy.bernoulli(m))), m


def test_odd_indices_vanish():
    assert all(bernoulli(m) == 0 for m in range(3, 200, 2))


def test_zeta_at_negative_odd():
    assert zeta_neg(1) == Fraction(-1, 12)
    assert zeta_neg(2) == Fraction(1, 120)
    with pytest.raises(ValueError):
        zeta_neg(0)


@pytest.mark.parametrize("two_u", range(2, 201, 2))
def test_von_staudt_clausen(two_u):
    assert von_staudt_clausen_check(two_u)
    assert bernoulli_denominator_primes(two_u) == vsc_primes(two_u)


def test_von_staudt_clausen_rejects_odd():
    with pytest.raises(ValueError):
        von_staudt_clausen_check(3)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_integral_when_no_case_applies(p):
    # p - 1 does not divide 2u and p does not divide 2u - 2
    for two_u in range(2, 161, 2):
        if two_u % (p - 1) and (two_u - 2) % p:
            assert is_p_integral(bernoulli(two_u) / two_u, p)


def test_kummer_example():
    v = kummer_check(5, 1, 4)
    assert v.status is Status.PASS
    assert residue_qzp(bernoulli(22) / 22 - 3, 5) == (0, 0)
    assert residue_qzp(bernoulli(6) / 6 - 3, 5) == (0, 0)


def test_carlitz_example():
    v = carlitz_check(5, 0, 1)
    assert v.status is Status.PASS
    assert v.witness == Fraction(1, 6)


def test_cohen_example():
    v = cohen_check(5, 1, 1)
    assert v.status is Status.PASS
    assert v.witness == Fraction(1975, 16380)
    assert vp(v.witness, 5) == 1
    assert cohen_params(5, 1, 1) == (6, 2)


def test_kummer_skips_outside_hypotheses():
    v = kummer_check(5, 1, 2)  # 2u = 12, divisible by p - 1
    assert v.status is Status.SKIPPED and v.reason == "p-1_divides_2u"
    assert kummer_check(5, 1, 3).status is Status.SKIPPED  # 2u odd
    assert kummer_check(3, 1, 2).status is Status.SKIPPED  # p < 5
    with pytest.raises(ValueError):
        kummer_check(9, 1, 2)


def test_carlitz_skips_when_p_divides_2u_minus_2():
    skipped = [x for x in range(1, 30) if carlitz_check(7, 0, x).status is Status.SKIPPED]
    assert skipped and all((6 * x - 2) % 7 == 0 for x in skipped)


@pytest.mark.parametrize("p", [5, 7])
def test_classical_sweeps(p):
    for r in (1, 2):
        for x in range(1, 7):
            assert kummer_check(p, r, x).status is not Status.FAIL
            assert cohen_check(p, r, x).status is Status.PASS
    for r in (0, 1, 2):
        for x in range(1, 7):
            assert carlitz_check(p, r, x).status is not Status.FAIL
