from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chromcong.arith import congruent_mod_pr, is_p_integral, vp
from chromcong.chromatic import (GroupProfile, SubgroupClassRecord, bq_sum,
                                 convergence_offset, format_profile, height_sum,
                                 limit_convergence_check, limit_exponent_bounds,
                                 parse_profile, profile_from_finite_group, section7_bridge,
                                 section7_check, section7_displayed, section7_profile)
from chromcong.counting import AbelianPType, brown_quillen_sum_finite, tuple_class_sum
from chromcong.groups import CATALOG_NAMES, catalog
from chromcong.moduli import thm611_value
from chromcong.verdict import Status


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_profile_sums_match_group_sums(name):
    G = catalog(name)
    for p in (2, 3, 5):
        prof = profile_from_finite_group(G, p)
        for n in (1, 2, 3):
            assert height_sum(prof, n) == tuple_class_sum(G, p, n)
        assert bq_sum(prof) == brown_quillen_sum_finite(G, p)


@pytest.mark.parametrize("name", ["S3", "D8", "C5xC5", "S4", "C3xS3", "Q8xC2"])
def test_stabilization(name):
    G = catalog(name)
    for p in (2, 3, 5):
        prof = profile_from_finite_group(G, p)
        N = vp(G.order, p)
        for n in range(max(N, 1), max(N, 1) + 3):
            assert is_p_integral(height_sum(prof, n) - bq_sum(prof), p)
        assert limit_convergence_check(prof, 4).status is Status.PASS


def test_c5xc5_limit():
    prof = profile_from_finite_group(catalog("C5xC5"), 5)
    assert bq_sum(prof) == 0
    assert [height_sum(prof, n) for n in (1, 2, 3)] == [1, 25, 625]
    # equal to the limit only modulo Z_(5), not exactly
    for n in (2, 3):
        assert congruent_mod_pr(height_sum(prof, n), bq_sum(prof), 5, 0)


def test_exponent_bounds():
    for name in ("S4", "C4xC4", "Q8xC2"):
        prof = profile_from_finite_group(catalog(name), 2)
        assert all(limit_exponent_bounds(prof, n) for n in range(1, 6))


def test_vacuous_profile_passes():
    prof = GroupProfile(5, (SubgroupClassRecord(AbelianPType(5, ()), Fraction(1, 7)),))
    assert convergence_offset(prof) is None
    assert limit_convergence_check(prof, 3).status is Status.PASS
    with pytest.raises(ValueError):
        limit_convergence_check(prof, 1)


def test_profile_requires_single_trivial_record():
    with pytest.raises(ValueError):
        GroupProfile(5, (SubgroupClassRecord(AbelianPType(5, (1,)), Fraction(1)),))
    with pytest.raises(ValueError):
        GroupProfile(4, ())


def test_section7_values():
    assert height_sum(section7_profile(5), 1) == Fraction(79, 6552)
    assert height_sum(section7_profile(5), 1) == thm611_value(6, 5)
    assert bq_sum(section7_profile(5)) == Fraction(1451, 52416)
    assert section7_bridge(5) == Fraction(-1, 48)
    # zeta(-3)/2 = 1/240, congruent to 1/40 modulo Z_(5)
    assert congruent_mod_pr(Fraction(1, 240), Fraction(1, 40), 5, 0)


@pytest.mark.parametrize("p,n_max", [(5, 6), (7, 4)])
def test_section7_check(p, n_max):
    v = section7_check(p, n_max)
    assert v.status is Status.PASS
    prof = section7_profile(p)
    for n in range(1, n_max + 1):
        assert height_sum(prof, n) == section7_displayed(p, n)
    c0 = convergence_offset(prof)
    for n in range(1, n_max + 1):
        assert vp(height_sum(prof, n) - bq_sum(prof), p) >= n + c0


def test_format_example_line():
    text = format_profile(section7_profile(5))
    assert "p=5 type=1,1 chi_N=1/150" in text.splitlines()
    assert text.splitlines()[0].startswith("p=5 type= chi_N=")


types = st.lists(st.integers(1, 3), max_size=3)
chis = st.builds(Fraction, st.integers(-1000, 1000), st.integers(1, 1000))


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.tuples(types, chis), max_size=5), chis)
def test_profile_round_trip(p, rest, chi0):
    records = [SubgroupClassRecord(AbelianPType(p, ()), chi0)]
    records += [SubgroupClassRecord(AbelianPType(p, tuple(lam) or (1,)), c) for lam, c in rest]
    prof = GroupProfile(p, tuple(records))
    text = format_profile(prof)
    assert parse_profile(text) == prof
    assert format_profile(parse_profile(text)) == text


def test_parse_skips_comments_and_rejects_garbage():
    prof = parse_profile("# demo\n\np=3 type= chi_N=1/6\np=3 type=1 chi_N=1/6\n")
    assert height_sum(prof, 1) == Fraction(1, 2)
    for bad in ["p=3 type= chi=1/6", "p=3 type= chi_N=1/6\np=5 type=1 chi_N=1/2",
                "p=4 type= chi_N=1", "", "p=3 type=x chi_N=1/2", "p=3 type= chi_N=1/0"]:
        with pytest.raises(ValueError):
            parse_profile(bad)
