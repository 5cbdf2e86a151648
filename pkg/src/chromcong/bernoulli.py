"""Bernoulli numbers, zeta values at negative odd integers, and the classical
congruence checkers of von Staudt-Clausen, Kummer-Voronoi, Carlitz and Cohen.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import lcm

from .arith import congruent_mod_pr, is_prime, prime_factors
from .verdict import Verdict


class BernoulliCache:
    """Append-only table of B_0, B_1, ... with the convention B_1 = -1/2.

    Entries come from the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0. Each
    new entry is evaluated as one integer sum over the common denominator of
    the earlier entries, so only a single reduction is done per index.
    """

    def __init__(self):
        self._table = [Fraction(1), Fraction(-1, 2)]
        self._lcm = 2
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._table)

    def __getitem__(self, m: int) -> Fraction:
        if m < 0:
            raise ValueError("Bernoulli index must be non-negative")
        if m >= len(self._table):
            with self._lock:
                self._extend(m)
        return self._table[m]

    def _extend(self, upto: int) -> None:
        table = self._table
        while len(table) <= upto:
            m = len(table)
            if m % 2:
                table.append(Fraction(0))
                continue
            L = self._lcm
            total = 0
            c = 1  # C(m+1, j)
            for j in range(m):
                if j < 2 or j % 2 == 0:
                    b = table[j]
                    total += c * b.numerator * (L // b.denominator)
                c = c * (m + 1 - j) // (j + 1)
            b = Fraction(-total, L * (m + 1))
            table.append(b)
            self._lcm = lcm(L, b.denominator)


_CACHE = BernoulliCache()


def bernoulli(m: int) -> Fraction:
    return _CACHE[m]


def zeta_neg(u: int) -> Fraction:
    """zeta(1 - 2u) = -B_{2u} / 2u."""
    if u < 1:
        raise ValueError("zeta_neg needs u >= 1")
    return -bernoulli(2 * u) / (2 * u)


def vsc_primes(two_u: int) -> list[int]:
    """Primes p with (p - 1) | 2u."""
    out = []
    for d in range(1, two_u + 1):
        if two_u % d == 0 and is_prime(d + 1):
            out.append(d + 1)
    return out


def von_staudt_clausen_check(two_u: int) -> bool:
    if two_u < 2 or two_u % 2:
        raise ValueError("von Staudt-Clausen needs an even index >= 2")
    s = bernoulli(two_u) + sum(Fraction(1, p) for p in vsc_primes(two_u))
    return s.denominator == 1


def _check_prime(p: int) -> Verdict | None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < 5:
        return Verdict.skipped("p<5")
    return None


def kummer_check(p: int, r: int, x: int) -> Verdict:
    """B_{2u}/2u == B_{2v}/2v mod p^r for 2u = p^r x + 2, 2v = p^(r-1) x + 2.

    Witness is the difference of the two sides.
    """
    if (bad := _check_prime(p)) is not None:
        return bad
    if r < 1 or x < 1:
        return Verdict.skipped("need r>=1,x>=1")
    two_u = p**r * x + 2
    two_v = p ** (r - 1) * x + 2
    if two_u % 2 or two_v % 2:
        return Verdict.skipped("2u-odd")
    if two_u % (p - 1) == 0:
        return Verdict.skipped("p-1_divides_2u")
    diff = bernoulli(two_u) / two_u - bernoulli(two_v) / two_v
    return Verdict.of(congruent_mod_pr(diff, 0, p, r), diff)


def carlitz_check(p: int, r: int, x: int) -> Verdict:
    """B_{2u} + 1/p == 1 mod p^r for 2u = x p^r (p - 1), p not dividing 2u - 2.

    Witness is B_{2u} + 1/p.
    """
    if (bad := _check_prime(p)) is not None:
        return bad
    if r < 0 or x < 1:
        return Verdict.skipped("need r>=0,x>=1")
    two_u = x * p**r * (p - 1)
    if (two_u - 2) % p == 0:
        return Verdict.skipped("p_divides_2u-2")
    lhs = bernoulli(two_u) + Fraction(1, p)
    return Verdict.of(congruent_mod_pr(lhs, 1, p, r), lhs)


def cohen_params(p: int, r: int, k: int) -> tuple[int, int]:
    x = (p - 1) * k // 2 - 1
    return p**r * x + 1, p ** (r - 1) * x + 1


def cohen_check(p: int, r: int, k: int) -> Verdict:
    """B_{2u}/2u - B_{2v}/2v == (1/2u - 1/2v)(1 - 1/p) mod p^r.

    Here u = p^r((p-1)k/2 - 1) + 1 and v = p^(r-1)((p-1)k/2 - 1) + 1.
    Witness is left side minus right side.
    """
    if (bad := _check_prime(p)) is not None:
        return bad
    if r < 1 or k < 1:
        return Verdict.skipped("need r>=1,k>=1")
    u, v = cohen_params(p, r, k)
    lhs = bernoulli(2 * u) / (2 * u) - bernoulli(2 * v) / (2 * v)
    rhs = (Fraction(1, 2 * u) - Fraction(1, 2 * v)) * (1 - Fraction(1, p))
    diff = lhs - rhs
    return Verdict.of(congruent_mod_pr(diff, 0, p, r), diff)


def bernoulli_denominator_primes(two_u: int) -> list[int]:
    return prime_factors(bernoulli(two_u).denominator)
