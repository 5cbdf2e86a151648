"""Acceptance criteria, one test each, with their runtime limits.

Every test starts from cold caches so the timings are honest. A summary with
one PASS/FAIL line per criterion is printed at the end of the run.
"""

import importlib
import itertools
import time
from fractions import Fraction

import pytest

from chromcong import counting, groups, moduli
from chromcong.arith import INFINITY, congruent_mod_pr, is_p_integral, residue_qzp, vp
from chromcong.bernoulli import (BernoulliCache, bernoulli, carlitz_check, cohen_check,
                                 kummer_check)
from chromcong.chromatic import bq_sum, height_sum, section7_check, section7_profile
from chromcong.counting import (AbelianPType, brown_quillen_sum_finite, frobenius_count,
                                gen_tuples_bruteforce, hall_gen_count,
                                height_stabilization_check, theoremB_finite_check,
                                tuple_class_sum)
from chromcong.groups import catalog_groups
from chromcong.moduli import (CaseTag, chi_q, count_residue_tuples, integrality_lemma,
                              lemma67_sum, lemma610_sum, n_closed_prime_power, prop61_check,
                              prop61_terms, thm611_case, thm611_check)
from chromcong.verdict import Status

CHI_Q_FROZEN = {2: 1, 3: 3, 4: 2, 5: 3, 6: 4, 7: 1, 8: -6}


@pytest.fixture(autouse=True)
def cold_caches(monkeypatch):
    bern_module = importlib.import_module("chromcong.bernoulli")
    monkeypatch.setattr(bern_module, "_CACHE", BernoulliCache())
    monkeypatch.setattr(groups, "_catalog_cache", {})
    counting.tuple_orbits.cache_clear()
    moduli._count_sorted.cache_clear()


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def _p_types_up_to(p, max_log):
    def parts(total, largest):
        if total == 0:
            yield ()
            return
        for first in range(min(total, largest), 0, -1):
            for rest in parts(total - first, first):
                yield (first,) + rest
    for a in range(max_log + 1):
        for lam in parts(a, a):
            yield AbelianPType(p, lam)


@pytest.mark.criterion(1, "S3 commuting 2-pairs: class sum 5/3, 2-adic valuation 0")
def test_s3_class_sum():
    with Timer(1):
        G = groups.catalog("S3")
        total = tuple_class_sum(G, 2, 2)
        assert total == Fraction(5, 3)
        assert vp(total, 2) == 0
        assert theoremB_finite_check(G, 2, 2).status is Status.PASS


@pytest.mark.criterion(2, "Frobenius divisibility on every catalog group")
def test_frobenius_divisibility():
    with Timer(5):
        for G in catalog_groups():
            assert G.order <= 48
            for d in range(1, G.order + 1):
                if G.order % d == 0:
                    assert frobenius_count(G, d) % d == 0, (G.name, d)


@pytest.mark.criterion(3, "tuple class sums p-integral, catalog x p in 2,3,5 x n in 1,2,3")
def test_tuple_sums_integral():
    with Timer(30):
        for G in catalog_groups():
            for p, n in itertools.product((2, 3, 5), (1, 2, 3)):
                assert is_p_integral(tuple_class_sum(G, p, n), p), (G.name, p, n)


@pytest.mark.criterion(4, "Hall generating-tuple formula equals enumeration up to order p^4")
def test_hall_formula():
    with Timer(30):
        checked = 0
        for p in (2, 3):
            for t in _p_types_up_to(p, 4):
                for n in (1, 2, 3):
                    assert hall_gen_count(t, n) == gen_tuples_bruteforce(t, n), (t, n)
                    checked += 1
        assert hall_gen_count(AbelianPType(3, (1, 1)), 2) == 48
        assert gen_tuples_bruteforce(AbelianPType(3, (1, 1)), 2) == 48
        assert checked == 2 * 12 * 3  # 12 partitions of 0..4


@pytest.mark.criterion(5, "subgroup-side sum equals tuple sum and is p-integral on the catalog")
def test_subgroup_side_identity():
    with Timer(60):
        for G in catalog_groups():
            for p, n in itertools.product((2, 3, 5), (1, 2, 3)):
                assert theoremB_finite_check(G, p, n).status is Status.PASS, (G.name, p, n)


@pytest.mark.criterion(6, "Brown-Quillen sums p-integral and height sums stabilize")
def test_brown_quillen():
    with Timer(30):
        for G in catalog_groups():
            for p in (2, 3, 5):
                assert is_p_integral(brown_quillen_sum_finite(G, p), p)
                assert height_stabilization_check(G, p).status is Status.PASS, (G.name, p)
        assert brown_quillen_sum_finite(groups.catalog("C3"), 3) == 0
        assert brown_quillen_sum_finite(groups.catalog("C5"), 5) == 0
        assert brown_quillen_sum_finite(groups.catalog("S3"), 3) == 0


@pytest.mark.criterion(7, "residue-tuple closed form equals the count; uncorrected form fails")
def test_residue_closed_form():
    with Timer(60):
        for p, m in itertools.product((2, 3, 5), (1, 2, 3)):
            for s in range(6):
                for ms in itertools.combinations_with_replacement(range(m), s):
                    ls = [p**mi for mi in ms]
                    assert n_closed_prime_power(p, m, ms) == count_residue_tuples(p**m, ls)
        assert count_residue_tuples(25, (1, 5, 5)) == 0
        assert n_closed_prime_power(5, 2, (0, 1, 1), corrected=False) != 0


@pytest.mark.criterion(8, "rational Euler characteristic of the mapping class group is an integer, u=2..8")
def test_chi_q_integers():
    with Timer(120):
        for u, expected in CHI_Q_FROZEN.items():
            value = chi_q(u)
            assert value.denominator == 1
            assert value == expected


@pytest.mark.criterion(9, "height-one sum p-integral for p in 5,7 and u=2..12; witness 19/48")
def test_height_one_sum():
    with Timer(120):
        for p in (5, 7):
            for u in range(2, 13):
                assert prop61_check(u, p).status is Status.PASS, (p, u)
        assert prop61_check(2, 5).witness == Fraction(19, 48)


@pytest.mark.criterion(10, "Bernoulli congruence sweep p in 5,7,11,13, u=2..80; witness 79/6552")
def test_bernoulli_congruence_sweep():
    with Timer(120):
        for p in (5, 7, 11, 13):
            for u in range(2, 81):
                assert thm611_check(u, p).status is Status.PASS, (p, u)
        assert thm611_case(6, 5) == "i"
        assert thm611_check(6, 5).witness == Fraction(79, 6552)


@pytest.mark.criterion(11, "Kummer, Carlitz and Cohen congruences with sweeps r<=2, parameter<=6")
def test_classical_congruences():
    with Timer(60):
        k = kummer_check(5, 1, 4)
        assert k.status is Status.PASS
        assert residue_qzp(bernoulli(22) / 22 - 3, 5) == (0, 0)
        assert residue_qzp(bernoulli(6) / 6 - 3, 5) == (0, 0)
        c = carlitz_check(5, 0, 1)
        assert c.status is Status.PASS and c.witness == Fraction(1, 6)
        assert congruent_mod_pr(c.witness, 1, 5, 0)
        h = cohen_check(5, 1, 1)
        assert h.status is Status.PASS
        assert h.witness == Fraction(1975, 16380) and vp(h.witness, 5) == 1
        for p in (5, 7):
            for r, x in itertools.product((1, 2), range(1, 7)):
                assert kummer_check(p, r, x).status is not Status.FAIL
                assert cohen_check(p, r, x).status is Status.PASS
            for r, x in itertools.product((0, 1, 2), range(1, 7)):
                assert carlitz_check(p, r, x).status is not Status.FAIL


@pytest.mark.criterion(12, "term-level integrality and grouped sums, p in 5,7, u<=20")
def test_term_integrality():
    with Timer(120):
        grouped = 0
        for p in (5, 7):
            for u in range(2, 21):
                terms = prop61_terms(u, p)
                for t in terms:
                    assert isinstance(t.case_tag, CaseTag)
                    if integrality_lemma(t) is not None:
                        assert is_p_integral(t.value, p), (p, u, t)
                s = lemma67_sum(u, p, terms)
                if s is not None:
                    assert is_p_integral(s, p)
                    grouped += 1
                pair = lemma610_sum(u, p, terms)
                if pair is not None:
                    total, predicted = pair
                    assert is_p_integral(total - predicted, p)
                    grouped += 1
        assert grouped > 0


@pytest.mark.criterion(13, "genus (p-1)(p-2)/2 profile: height sums, limit, convergence, bridge")
def test_cyclic_profile():
    with Timer(30):
        assert section7_check(5, 6).status is Status.PASS
        assert section7_check(7, 4).status is Status.PASS
        prof = section7_profile(5)
        assert height_sum(prof, 1) == Fraction(79, 6552)
        assert is_p_integral(bq_sum(prof), 5)
        # zeta(-3)/2 = 1/240 is 1/40 modulo Z_(5)
        zeta_half = -bernoulli(4) / 4 / 2
        assert zeta_half == Fraction(1, 240)
        assert congruent_mod_pr(zeta_half, Fraction(1, 40), 5, 0)
        assert vp(0, 5) is INFINITY
