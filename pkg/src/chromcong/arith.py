"""Exact rational arithmetic helpers: p-adic valuations, residues in Q/Z_(p),
congruences modulo p^r Z_(p), Gaussian binomials and multinomials.

Rationals are plain :class:`fractions.Fraction` objects, which are always
stored in lowest terms with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[int, Fraction]


class _Infinity:
    """Valuation of zero. Compares greater than every integer."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _Infinity()


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``|n|`` in increasing order."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(q: RationalLike, p: int):
    """p-adic valuation of a rational; ``INFINITY`` for zero."""
    _require_prime(p)
    q = Fraction(q)
    if q == 0:
        return INFINITY
    return _vp_int(q.numerator, p) - _vp_int(q.denominator, p)


def is_p_integral(q: RationalLike, p: int) -> bool:
    return vp(q, p) >= 0


def congruent_mod_pr(q1: RationalLike, q2: RationalLike, p: int, r: int) -> bool:
    """True iff q1 - q2 lies in p^r Z_(p)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return vp(Fraction(q1) - Fraction(q2), p) >= r


def residue_qzp(q: RationalLike, p: int) -> tuple[int, int]:
    """Canonical representative ``c / p**e`` of the class of q in Q/Z_(p).

    Returns ``(c, e)`` with ``0 <= c < p**e`` and ``q - c/p**e`` p-integral.
    """
    _require_prime(p)
    q = Fraction(q)
    v = vp(q, p)
    if v >= 0:
        return 0, 0
    e = -v
    pe = p**e
    # q = a / (p^e * b) with b prime to p
    b = q.denominator // pe
    c = q.numerator * pow(b, -1, pe) % pe
    return c, e


def qbinom(B: int, i: int, p: int) -> int:
    """Gaussian binomial coefficient [B choose i]_p."""
    if i < 0 or B < 0 or i > B:
        raise ValueError(f"need 0 <= i <= B, got B={B}, i={i}")
    result = 1
    for j in range(i):
        # after this step result == [B choose j+1]_p, so the division is exact
        result = result * (p ** (B - j) - 1) // (p ** (j + 1) - 1)
    return result


def multinomial(counts: Iterable[int]) -> int:
    total = 0
    result = 1
    for c in counts:
        if c < 0:
            raise ValueError("counts must be non-negative")
        total += c
        result *= comb(total, c)
    return result


def format_rational(q: RationalLike) -> str:
    """``num/den``, or just ``num`` for integers."""
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    if sep and not den:
        raise ValueError(f"malformed rational {text!r}")
    den = int(den) if sep else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), den)
