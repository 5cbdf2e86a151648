"""Height-n congruence sums over subgroup profiles and their p-adic limit.

A profile lists, for each conjugacy class of finite abelian p-subgroups H of
some group, the isomorphism type of H and the orbifold Euler characteristic
of its normalizer. That is all the height-n and Brown-Quillen sums consume,
so infinite groups enter only through profiles.

Interchange format, one record per line::

    p=5 type=1,1 chi_N=1/150

``type`` lists the parts of the type; the trivial subgroup is written with an
empty list (``type=``). ``chi_N`` is always written as ``num/den``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .arith import is_p_integral, is_prime, parse_rational, vp
from .bernoulli import zeta_neg
from .counting import AbelianPType, abelian_p_subgroup_classes, hall_gen_count
from .groups import FiniteGroup
from .verdict import Verdict


@dataclass(frozen=True)
class SubgroupClassRecord:
    type: AbelianPType
    chi_orb_normalizer: Fraction


@dataclass(frozen=True)
class GroupProfile:
    p: int
    records: tuple[SubgroupClassRecord, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "records", tuple(self.records))
        if any(r.type.p != self.p for r in self.records):
            raise ValueError("record prime differs from profile prime")
        trivial = [r for r in self.records if r.type.rank == 0]
        if len(trivial) != 1:
            raise ValueError("profile needs exactly one trivial-subgroup record")

    @property
    def chi_orb(self) -> Fraction:
        return next(r.chi_orb_normalizer for r in self.records if r.type.rank == 0)


def height_sum(profile: GroupProfile, n: int) -> Fraction:
    """sum over records of chi_orb(N(H)) * |Gen_n(H)|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum((r.chi_orb_normalizer * hall_gen_count(r.type, n) for r in profile.records),
               Fraction(0))


def bq_sum(profile: GroupProfile) -> Fraction:
    """Brown-Quillen sum over the elementary abelian records."""
    p = profile.p
    total = Fraction(0)
    for r in profile.records:
        if r.type.is_elementary:
            b = r.type.rank
            total += (-1) ** b * p ** comb(b, 2) * r.chi_orb_normalizer
    return total


def convergence_offset(profile: GroupProfile):
    """Smallest vp(chi_N) + C(i, 2) over the pairs (H, i) that vanish in the
    limit, i.e. H non-elementary or i < rank. ``None`` if there are none."""
    p = profile.p
    best = None
    for r in profile.records:
        if r.chi_orb_normalizer == 0:
            continue
        b = r.type.rank
        v = vp(r.chi_orb_normalizer, p)
        for i in range(b + 1):
            if r.type.is_elementary and i == b:
                continue
            c = v + comb(i, 2)
            best = c if best is None else min(best, c)
    return best


def limit_convergence_check(profile: GroupProfile, n_max: int) -> Verdict:
    """vp(a_n - a_inf) >= n + c0 for 1 <= n <= n_max.

    Witness is the last difference a_{n_max} - a_inf.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    p = profile.p
    limit = bq_sum(profile)
    c0 = convergence_offset(profile)
    diff = Fraction(0)
    for n in range(1, n_max + 1):
        diff = height_sum(profile, n) - limit
        if c0 is None:
            if diff != 0:
                return Verdict.of(False, diff)
        elif vp(diff, p) < n + c0:
            return Verdict.of(False, diff)
    return Verdict.of(True, diff)


def limit_exponent_bounds(profile: GroupProfile, n: int) -> bool:
    """Every vanishing Hall summand carries p^(n(A-B) + n(B-i)) with exponent >= n."""
    for r in profile.records:
        a, b = r.type.log_order, r.type.rank
        for i in range(b + 1):
            if a > b or i < b:
                if n * (a - b) + n * (b - i) < n:
                    return False
    return True


def profile_from_finite_group(G: FiniteGroup, p: int, n_cap: int = 3) -> GroupProfile:
    classes = abelian_p_subgroup_classes(G, p, n_cap)
    return GroupProfile(p, tuple(
        SubgroupClassRecord(d.type, Fraction(1, d.normalizer_order)) for d in classes))


# --- Gamma_u with u = (p-1)(p-2)/2 ------------------------------------------

def section7_parameters(p: int) -> tuple[int, int]:
    return (p - 1) * (p - 2) // 2, (p - 1) // 2


def section7_cyclic_sum(p: int) -> Fraction:
    """sum over classes of order-p elements g of chi_orb(C<g>)."""
    u, v = section7_parameters(p)
    return (-Fraction(1, p) * zeta_neg(v) / (2 - 2 * v)
            + Fraction((p - 1) ** 2, 2 * u * p * (2 * u + 2 * p - 2)))


def section7_profile(p: int) -> GroupProfile:
    """Profile of Gamma_u, u = (p-1)(p-2)/2: the trivial class, one aggregate
    record carrying all Z/p classes, and the single (Z/p)^2 class."""
    if not is_prime(p) or p < 5:
        raise ValueError("section7_profile needs a prime p >= 5")
    u, _ = section7_parameters(p)
    chi = zeta_neg(u) / (2 - 2 * u)
    # the Z/p classes sum to cyclic_sum/(p-1); their Hall coefficient p^n - 1
    # then reproduces (p^n - 1)/(p - 1) * cyclic_sum
    return GroupProfile(p, (
        SubgroupClassRecord(AbelianPType(p, ()), chi),
        SubgroupClassRecord(AbelianPType(p, (1,)), section7_cyclic_sum(p) / (p - 1)),
        SubgroupClassRecord(AbelianPType(p, (1, 1)), Fraction(1, 6 * p * p)),
    ))


def section7_displayed(p: int, n: int) -> Fraction:
    """The height-n sum written out with its coefficient polynomials in p^n."""
    u, _ = section7_parameters(p)
    pn = p**n
    return (zeta_neg(u) / (2 - 2 * u)
            + Fraction(pn - 1, p - 1) * section7_cyclic_sum(p)
            + (pn * pn - (1 + p) * pn + p) * Fraction(1, 6 * p * p))


def section7_bridge(p: int) -> Fraction:
    """zeta(1-2v)/(2v-2) - 1/(p(p-1)(p-3)), p-integral by von Staudt-Clausen."""
    _, v = section7_parameters(p)
    return zeta_neg(v) / (2 * v - 2) - Fraction(1, p * (p - 1) * (p - 3))


def section7_check(p: int, n_max: int) -> Verdict:
    """Height sums p-integral and matching the displayed polynomials, limit
    p-integral, convergence rate, and the von Staudt-Clausen bridge.

    Witness is the height-1 sum.
    """
    profile = section7_profile(p)
    for n in range(1, n_max + 1):
        a_n = height_sum(profile, n)
        if a_n != section7_displayed(p, n) or not is_p_integral(a_n, p):
            return Verdict.of(False, a_n)
    if not is_p_integral(bq_sum(profile), p):
        return Verdict.of(False, bq_sum(profile))
    conv = limit_convergence_check(profile, max(n_max, 2))
    if not conv:
        return conv
    bridge = section7_bridge(p)
    if not is_p_integral(bridge, p):
        return Verdict.of(False, bridge)
    return Verdict.of(True, height_sum(profile, 1))


# --- interchange format -----------------------------------------------------

def format_profile(profile: GroupProfile) -> str:
    lines = []
    for r in profile.records:
        q = r.chi_orb_normalizer
        lam = ",".join(str(x) for x in r.type.lambdas)
        lines.append(f"p={profile.p} type={lam} chi_N={q.numerator}/{q.denominator}")
    return "\n".join(lines) + "\n"


def parse_profile(text: str) -> GroupProfile:
    p = None
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = dict(_split_field(tok, lineno) for tok in line.split())
        if set(fields) != {"p", "type", "chi_N"}:
            raise ValueError(f"line {lineno}: expected fields p, type, chi_N")
        lp = int(fields["p"])
        if p is None:
            p = lp
        elif lp != p:
            raise ValueError(f"line {lineno}: mixed primes {p} and {lp}")
        lam = tuple(int(x) for x in fields["type"].split(",")) if fields["type"] else ()
        records.append(SubgroupClassRecord(AbelianPType(lp, lam), parse_rational(fields["chi_N"])))
    if p is None:
        raise ValueError("empty profile")
    return GroupProfile(p, tuple(records))


def _split_field(tok: str, lineno: int) -> tuple[str, str]:
    key, sep, value = tok.partition("=")
    if not sep:
        raise ValueError(f"line {lineno}: malformed field {tok!r}")
    return key, value

