"""Harer-Zagier Euler characteristics of mapping class groups and the height-1
chromatic congruence for Gamma_u, down to Bernoulli-number congruences.

Branch data (k, v, s, l_1..l_s) solve the Riemann-Hurwitz equation
``2u - 2 = k(2v - 2 + s) - sum(l_i)`` with each l_i a proper divisor of k.
Summands are indexed by unordered multisets of the l_i and weighted by the
number of orderings, which is exact because the summand is symmetric.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Callable, Optional

from .arith import is_p_integral, is_prime, multinomial, prime_factors, vp
from .bernoulli import bernoulli, carlitz_check, cohen_check, kummer_check, zeta_neg
from .verdict import OracleMismatch, Verdict


# --- Euler characteristics --------------------------------------------------

def chi_orb_punctured(v: int, s: int) -> Fraction:
    """chi_orb of the mapping class group of genus v with s marked points."""
    if v < 0 or s < 0:
        raise ValueError("v and s must be non-negative")
    if v == 0:
        return Fraction(1) if s <= 3 else Fraction((-1) ** (s - 3) * factorial(s - 3))
    if v == 1:
        return Fraction(-1, 12) if s <= 1 else Fraction((-1) ** s * factorial(s - 1), 12)
    return (-1) ** s * Fraction(factorial(2 * v + s - 3), 2 * v * factorial(2 * v - 2)) * bernoulli(2 * v)


def chi_orb_closed(u: int) -> Fraction:
    """chi_orb(Gamma_u) = zeta(1-2u)/(2-2u) = B_2u / (2u(2u-2))."""
    if u < 2:
        raise ValueError("chi_orb_closed needs u >= 2")
    via_zeta = zeta_neg(u) / (2 - 2 * u)
    via_bernoulli = bernoulli(2 * u) / (2 * u * (2 * u - 2))
    if via_zeta != via_bernoulli:
        raise OracleMismatch("zeta and Bernoulli forms disagree", via_zeta - via_bernoulli)
    return via_zeta


# --- residue-tuple counts ---------------------------------------------------

def _check_divisors(k: int, ls) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")
    for l in ls:
        if l < 1 or k % l or l == k:
            raise ValueError(f"{l} is not a proper divisor of {k}")


@lru_cache(maxsize=65536)
def _count_sorted(k: int, ls: tuple[int, ...]) -> int:
    by_gcd: dict[int, list[int]] = {}
    for r in range(k):
        by_gcd.setdefault(gcd(r, k), []).append(r)
    dist = [0] * k
    dist[0] = 1
    for l in ls:
        step = [0] * k
        residues = by_gcd[l]
        for a, c in enumerate(dist):
            if c:
                for r in residues:
                    step[(a + r) % k] += c
        dist = step
    return dist[0]


def count_residue_tuples(k: int, ls) -> int:
    """N(k; l_1..l_s): tuples (r_i) mod k with gcd(r_i, k) = l_i summing to 0.

    Dynamic programme over the distribution of partial sums mod k.
    """
    ls = tuple(ls)
    _check_divisors(k, ls)
    return _count_sorted(k, tuple(sorted(ls)))


def n_closed_prime_power(p: int, m: int, ms, corrected: bool = True) -> Fraction:
    """Closed form of N(p^m; p^m_1, ..., p^m_s).

    ``corrected=False`` uses the exponent mu instead of mu - 1 in the last
    factor; it exists only so tests can show that variant is wrong.
    """
    ms = tuple(ms)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    if any(mi < 0 or mi >= m for mi in ms):
        raise ValueError("need 0 <= m_i < m")
    lam = min(ms + (m - 1,))
    mu = sum(1 for mi in ms if mi == lam)
    e = mu - 1 if corrected else mu
    prod = 1
    for mi in ms:
        prod *= p ** (m - mi) - p ** (m - mi - 1)
    last = 1 - Fraction(-1) ** e / Fraction(p - 1) ** e
    value = Fraction(prod * p**lam, p**m) * last
    if corrected and (value.denominator != 1 or value < 0):
        raise OracleMismatch(f"closed form gave non-integral count {value}", value)
    return value


def pi_multiplicity(ms) -> int:
    """Number of distinct orderings of a multiset."""
    return multinomial(Counter(ms).values())


# --- branch data ------------------------------------------------------------

@dataclass(frozen=True)
class BranchDatum:
    k: int
    v: int
    s: int
    ls: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ls", tuple(sorted(self.ls)))
        if len(self.ls) != self.s:
            raise ValueError("s must equal the number of l_i")

    def genus(self) -> Fraction:
        """Ambient genus from the Riemann-Hurwitz equation."""
        return Fraction(self.k * (2 * self.v - 2 + self.s) - sum(self.ls) + 2, 2)


def _proper_divisors(k: int) -> list[int]:
    return [d for d in range(1, k) if k % d == 0]


def _multisets(parts: list[int], size: int, total: int, start: int = 0):
    """Non-decreasing tuples of ``size`` entries from ``parts`` summing to ``total``."""
    if size == 0:
        if total == 0:
            yield ()
        return
    for i in range(start, len(parts)):
        d = parts[i]
        if d * size > total:
            break
        if parts[-1] * size < total:
            return
        for rest in _multisets(parts, size - 1, total - d, i):
            yield (d,) + rest


def hurwitz_k_bound(u: int) -> int:
    return 84 * (u - 1)


def enumerate_branch_data(u: int, k_filter: Optional[Callable[[int], bool]] = None,
                          k_max: Optional[int] = None) -> list[BranchDatum]:
    """All Riemann-Hurwitz solutions for genus u with 1 <= k <= 84(u-1)."""
    if u < 2:
        raise ValueError("enumerate_branch_data needs u >= 2")
    chi = 2 * u - 2
    k_max = hurwitz_k_bound(u) if k_max is None else k_max
    out = []
    for k in range(1, k_max + 1):
        if k_filter is not None and not k_filter(k):
            continue
        divisors = _proper_divisors(k)
        for v in range(chi // (2 * k) + 2):
            for s in range(2 * chi // k + 5):
                target = k * (2 * v - 2 + s) - chi
                if s == 0:
                    if target == 0:
                        out.append(BranchDatum(k, v, 0, ()))
                    continue
                if not divisors or target < s:
                    continue
                for ls in _multisets(divisors, s, target):
                    out.append(BranchDatum(k, v, s, ls))
    return out


def hz_term(u: int, d: BranchDatum) -> Fraction:
    """Contribution of one branch datum to chi_Q(Gamma_u), multiplicity included."""
    if d.genus() != u:
        raise ValueError(f"{d} does not satisfy Riemann-Hurwitz for u={u}")
    g = gcd(*d.ls)  # 0 for the empty multiset, so every q | k qualifies
    factor = Fraction(1)
    for q in prime_factors(d.k):
        if g % q == 0:
            factor *= 1 - Fraction(1, q ** (2 * d.v))
    if factor == 0:
        return Fraction(0)
    n = count_residue_tuples(d.k, d.ls)
    return (Fraction(1, d.k) * chi_orb_punctured(d.v, d.s) / factorial(d.s)
            * d.k ** (2 * d.v) * factor * n * pi_multiplicity(d.ls))


def chi_q(u: int) -> Fraction:
    """Rational Euler characteristic of Gamma_u; must be an integer."""
    total = sum((hz_term(u, d) for d in enumerate_branch_data(u)), Fraction(0))
    if total.denominator != 1:
        raise OracleMismatch(f"chi_Q(Gamma_{u}) = {total} is not an integer", total)
    return total


# --- height-one congruence at a prime p -------------------------------------

class CaseTag(str, enum.Enum):
    M1_S0 = "M1_S0"
    V1_ALL_MAX = "V1_ALL_MAX"
    V1_OTHER = "V1_OTHER"
    V0_X2_UNIFORM = "V0_X2_UNIFORM"
    V0_X2_OTHER = "V0_X2_OTHER"
    V0_X3PLUS = "V0_X3PLUS"
    V_GE2_M1 = "V_GE2_M1"
    V_GE2_M_GE2 = "V_GE2_M_GE2"
    VANISHING = "VANISHING"


@dataclass(frozen=True)
class Prop61Term:
    datum: BranchDatum
    m: int
    ms: tuple[int, ...]
    value: Fraction
    case_tag: CaseTag


def _log_p(x: int, p: int) -> int:
    e = vp(x, p)
    if p**e != x:
        raise ValueError(f"{x} is not a power of {p}")
    return e


def classify(m: int, v: int, ms: tuple[int, ...]) -> CaseTag:
    if v >= 2:
        if m >= 2:
            return CaseTag.V_GE2_M_GE2
        return CaseTag.V_GE2_M1 if ms else CaseTag.M1_S0
    if v == 1:
        return CaseTag.V1_ALL_MAX if all(mi == m - 1 for mi in ms) else CaseTag.V1_OTHER
    x = sum(1 for mi in ms if mi == 0)
    if x <= 1:
        return CaseTag.VANISHING
    if x >= 3:
        return CaseTag.V0_X3PLUS
    if all(mi == m - 1 for mi in ms if mi != 0):
        return CaseTag.V0_X2_UNIFORM
    return CaseTag.V0_X2_OTHER


def _require_p(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < 5:
        raise ValueError("the moduli congruences need p >= 5")


def prop61_terms(u: int, p: int) -> list[Prop61Term]:
    """Harer-Zagier terms with k = p^m, m >= 1, tagged by case."""
    _require_p(p)
    terms = []
    for d in enumerate_branch_data(u, k_filter=lambda k: k > 1 and p ** vp(k, p) == k):
        m = _log_p(d.k, p)
        ms = tuple(_log_p(l, p) for l in d.ls)
        terms.append(Prop61Term(d, m, ms, hz_term(u, d), classify(m, d.v, ms)))
    return terms


def prop61_check(u: int, p: int) -> Verdict:
    """chi_orb(Gamma_u) plus the p-power-order terms is p-integral."""
    _require_p(p)
    if u < 2:
        return Verdict.skipped("u<2")
    total = chi_orb_closed(u) + sum((t.value for t in prop61_terms(u, p)), Fraction(0))
    return Verdict.of(is_p_integral(total, p), total)


def integrality_lemma(t: Prop61Term) -> Optional[str]:
    """Label of the single-term integrality argument covering this term, or
    ``None`` when the term is only integral after grouping (or vanishes)."""
    x = sum(1 for mi in t.ms if mi == 0)
    m, v, s = t.m, t.datum.v, t.datum.s
    if v >= 2 and m >= 2:
        return "genus>=2,m>=2"
    if v >= 2 and m == 1 and s > 0:
        return "genus>=2,m=1"
    if v == 1 and any(mi != m - 1 for mi in t.ms):
        return "genus1,mixed"
    if v == 0 and m >= 2 and x >= 3:
        return "genus0,three-unramified"
    if v == 0 and m >= 2 and x == 2 and any(0 < mi < m - 1 for mi in t.ms):
        return "genus0,two-unramified,mixed"
    return None


def lemma67_sum(u: int, p: int, terms=None) -> Optional[Fraction]:
    """Sum of the genus-one terms with every m_i = m - 1, when p - 1 | 2u - 2."""
    if (2 * u - 2) % (p - 1):
        return None
    terms = prop61_terms(u, p) if terms is None else terms
    return sum((t.value for t in terms if t.case_tag is CaseTag.V1_ALL_MAX), Fraction(0))


def lemma610_sum(u: int, p: int, terms=None) -> Optional[tuple[Fraction, Fraction]]:
    """(grouped genus-zero sum, its predicted class mod Z_(p)) when p - 1 | 2u."""
    if (2 * u) % (p - 1):
        return None
    terms = prop61_terms(u, p) if terms is None else terms
    total = sum((t.value for t in terms
                 if t.datum.v == 0 and ((t.m == 1) or t.case_tag is CaseTag.V0_X2_UNIFORM)),
                Fraction(0))
    s1 = 2 * u // (p - 1) + 2
    return total, Fraction(1, p * s1 * (s1 - 2))


def thm611_case(u: int, p: int) -> str:
    _require_p(p)
    if u < 2:
        raise ValueError("u must be >= 2")
    a = (2 * u) % (p - 1) == 0
    b = (2 * u - 2) % p == 0
    return {(True, True): "i", (False, True): "ii", (True, False): "iii", (False, False): "iv"}[(a, b)]


def thm611_value(u: int, p: int) -> Fraction:
    """Left side of the Bernoulli congruence in the case selected by (u, p)."""
    case = thm611_case(u, p)
    total = zeta_neg(u) / (2 - 2 * u)
    if case in ("i", "ii"):
        v = (u - 1) // p + 1
        total -= Fraction(1, p) * zeta_neg(v) / (2 - 2 * v)
    if case in ("i", "iii"):
        total += Fraction((p - 1) ** 2, 2 * u * p * (2 * u + 2 * p - 2))
    return total


def thm611_check(u: int, p: int) -> Verdict:
    value = thm611_value(u, p)
    return Verdict.of(is_p_integral(value, p), value)


def recovery_target(u: int, p: int) -> tuple[str, dict]:
    """Which classical congruence the case of (u, p) specialises to, and its
    parameters. Case iv maps to p-integrality of B_2u / 2u."""
    case = thm611_case(u, p)
    if case == "i":
        r = vp(u - 1, p)
        x = (u - 1) // p**r
        return "cohen", {"p": p, "r": r, "k": 2 * (x + 1) // (p - 1)}
    if case == "ii":
        r = vp(2 * u - 2, p)
        return "kummer", {"p": p, "r": r, "x": (2 * u - 2) // p**r}
    if case == "iii":
        r = vp(2 * u, p)
        return "carlitz", {"p": p, "r": r, "x": 2 * u // (p**r * (p - 1))}
    return "kummer-integral", {"p": p, "u": u}


def remark_recovery(u: int, p: int) -> tuple[str, dict, Verdict]:
    """(checker name, its parameters, verdict) for the recovered congruence."""
    name, params = recovery_target(u, p)
    if name == "kummer-integral":
        value = bernoulli(2 * u) / (2 * u)
        return name, params, Verdict.of(is_p_integral(value, p), value)
    checker = {"cohen": cohen_check, "kummer": kummer_check, "carlitz": carlitz_check}[name]
    return name, params, checker(*params.values())
