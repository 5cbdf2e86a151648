"""Finite-group oracles: commuting p-power tuples, their conjugation orbits,
generating-tuple counts of abelian p-groups, and the finite-group forms of the
height-n chromatic congruence and the Brown-Quillen congruence.

For a finite group the orbifold Euler characteristic of a subgroup K is
``1/|K|``, so every sum below is an exact rational computed from the table.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from .arith import is_p_integral, is_prime, qbinom, vp
from .groups import FiniteGroup, elements_of, mask_of
from .verdict import OracleMismatch, Verdict

GEN_ENUMERATION_BOUND = 10**8


@dataclass(frozen=True)
class AbelianPType:
    """Isomorphism type of prod_i Z/p^lambda_i, parts sorted decreasingly."""

    p: int
    lambdas: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        lam = tuple(sorted((int(x) for x in self.lambdas), reverse=True))
        if any(x < 1 for x in lam):
            raise ValueError("parts must be positive")
        object.__setattr__(self, "lambdas", lam)

    @property
    def rank(self) -> int:
        """Rank of H/Phi(H), i.e. the number of parts."""
        return len(self.lambdas)

    @property
    def log_order(self) -> int:
        return sum(self.lambdas)

    @property
    def order(self) -> int:
        return self.p**self.log_order

    @property
    def is_elementary(self) -> bool:
        return all(x == 1 for x in self.lambdas)

    def __str__(self):
        return ",".join(map(str, self.lambdas)) or "trivial"


@dataclass(frozen=True)
class SubgroupClassDatum:
    representative: frozenset
    type: AbelianPType
    normalizer_order: int
    centralizer_order: int
    class_size: int

    @property
    def weyl_order(self) -> int:
        return self.normalizer_order // self.centralizer_order


def frattini_type(t: AbelianPType) -> AbelianPType:
    return AbelianPType(t.p, tuple(x - 1 for x in t.lambdas if x > 1))


def hall_gen_count(t: AbelianPType, n: int) -> int:
    """Number of generating n-tuples of the abelian p-group of type t (Hall)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p, r = t.p, t.rank
    frattini_order = p ** (t.log_order - r)
    inner = sum((-1) ** i * p ** (n * (r - i) + comb(i, 2)) * qbinom(r, i, p)
                for i in range(r + 1))
    return frattini_order**n * inner


def gen_tuples_bruteforce(t: AbelianPType, n: int) -> int:
    """Count generating n-tuples of the group of type t by enumeration.

    Tuples are enumerated one coordinate at a time while tracking the
    subgroup generated so far, so tuples with a common generated subgroup are
    counted together instead of being revisited.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if t.p ** (n * t.log_order) > GEN_ENUMERATION_BOUND:
        raise ValueError("enumeration bound exceeded")
    mods = [t.p**x for x in t.lambdas]
    elements = list(product(*[range(m) for m in mods]))
    zero = tuple(0 for _ in mods)

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, mods))

    joins: dict = {}

    def join(S: frozenset, h) -> frozenset:
        key = (S, h)
        if key not in joins:
            if h in S:
                joins[key] = S
            else:
                multiples = [zero]
                x = h
                while x != zero:
                    multiples.append(x)
                    x = add(x, h)
                joins[key] = frozenset(add(s, k) for s in S for k in multiples)
        return joins[key]

    counts = Counter({frozenset([zero]): 1})
    for _ in range(n):
        step = Counter()
        for S, c in counts.items():
            for h in elements:
                step[join(S, h)] += c
        counts = step
    return sum(c for S, c in counts.items() if len(S) == len(elements))


# --- commuting tuples -------------------------------------------------------

def p_elements(G: FiniteGroup, p: int) -> list[int]:
    return [x for x, o in enumerate(G.element_orders) if _is_p_power(o, p)]


def _is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def commuting_p_tuples(G: FiniteGroup, p: int, n: int) -> list[tuple[int, ...]]:
    """All n-tuples of pairwise commuting elements of p-power order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pel = p_elements(G, p)
    pmask = mask_of(pel)
    cm = G.centralizer_masks
    out = []

    def extend(prefix, allowed):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for x in pel:
            if allowed >> x & 1:
                prefix.append(x)
                extend(prefix, allowed & cm[x])
                prefix.pop()

    extend([], pmask)
    return out


def _centralizer_mask(G: FiniteGroup, elems) -> int:
    m = (1 << G.order) - 1
    cm = G.centralizer_masks
    for x in elems:
        m &= cm[x]
    return m


@lru_cache(maxsize=256)
def tuple_orbits(G: FiniteGroup, p: int, n: int) -> tuple[tuple[tuple[int, ...], int, int], ...]:
    """Conjugation orbits on G_{n,p} as (representative, |centralizer|, |orbit|)."""
    conj = G.conj.tolist()
    seen = set()
    orbits = []
    for t in commuting_p_tuples(G, p, n):
        if t in seen:
            continue
        orbit = {tuple(row[x] for x in t) for row in conj}
        seen |= orbit
        c = _centralizer_mask(G, t).bit_count()
        orbits.append((t, c, len(orbit)))
    return tuple(orbits)


def tuple_class_sum(G: FiniteGroup, p: int, n: int) -> Fraction:
    """Sum over conjugacy classes of tuples of 1/|C<g_1..g_n>|.

    Checked against |G_{n,p}|/|G| from the class equation.
    """
    total = Fraction(0)
    count = 0
    for _, c, size in tuple_orbits(G, p, n):
        if c * size != G.order:
            raise OracleMismatch("orbit-stabilizer violated", Fraction(c * size, G.order))
        total += Fraction(1, c)
        count += size
    if total != Fraction(count, G.order):
        raise OracleMismatch(f"class sum {total} != |G_n,p|/|G| = {count}/{G.order}", total)
    return total


def frobenius_count(G: FiniteGroup, d: int) -> int:
    """Number of solutions of x^d = 1; divisible by d whenever d | |G|."""
    if d < 1:
        raise ValueError("d must be >= 1")
    count = sum(1 for o in G.element_orders if d % o == 0)
    if G.order % d == 0 and count % d:
        raise OracleMismatch(f"Frobenius divisibility fails: {d} does not divide {count}", count)
    return count


# --- abelian p-subgroups ----------------------------------------------------

def _powers(G: FiniteGroup, g: int) -> list[int]:
    out = [G.identity]
    x = g
    while x != G.identity:
        out.append(x)
        x = G.mul(x, g)
    return out


def _abelian_p_subgroups(G: FiniteGroup, p: int, max_gens: int | None,
                         elementary: bool) -> dict[int, int]:
    """Subgroup mask -> minimal number of generators, built as closures of
    commuting p-element tuples one generator at a time."""
    if elementary:
        gens = [x for x, o in enumerate(G.element_orders) if o == p]
    else:
        gens = [x for x in p_elements(G, p) if x != G.identity]
    trivial = 1 << G.identity
    found = {trivial: 0}
    layer = [trivial]
    depth = 0
    while layer and (max_gens is None or depth < max_gens):
        depth += 1
        nxt = []
        for H in layer:
            helems = elements_of(H)
            allowed = _centralizer_mask(G, helems)
            for g in gens:
                if not allowed >> g & 1 or H >> g & 1:
                    continue
                K = mask_of(G.mul(h, x) for h in helems for x in _powers(G, g))
                if K not in found:
                    found[K] = depth
                    nxt.append(K)
        layer = nxt
    return found


def _abelian_type(G: FiniteGroup, elems: list[int], p: int) -> AbelianPType:
    # |{h : h^(p^j) = 1}| = p^(sum_i min(lambda_i, j)); successive differences of
    # the exponents count the parts >= j, i.e. give the conjugate partition.
    orders = [G.element_orders[x] for x in elems]
    log_order = vp(len(elems), p)
    exps = [0]
    while exps[-1] < log_order:
        j = len(exps)
        exps.append(vp(sum(1 for o in orders if p**j % o == 0), p))
    parts_at_least = [exps[j] - exps[j - 1] for j in range(1, len(exps))]
    rank = parts_at_least[0] if parts_at_least else 0
    lambdas = [sum(1 for c in parts_at_least if c > i) for i in range(rank)]
    return AbelianPType(p, tuple(lambdas))


def _class_data(G: FiniteGroup, p: int, subgroups) -> list[SubgroupClassDatum]:
    conj = G.conj
    classes: dict[int, SubgroupClassDatum] = {}
    for H in sorted(subgroups):
        elems = elements_of(H)
        images = [mask_of(row) for row in conj[:, elems].tolist()]
        canon = min(images)
        if canon in classes:
            continue
        normalizer = sum(1 for m in images if m == H)
        classes[canon] = SubgroupClassDatum(
            representative=frozenset(elems),
            type=_abelian_type(G, elems, p),
            normalizer_order=normalizer,
            centralizer_order=_centralizer_mask(G, elems).bit_count(),
            class_size=len(set(images)),
        )
    return sorted(classes.values(),
                  key=lambda d: (d.type.log_order, d.type.lambdas, sorted(d.representative)))


def abelian_p_subgroup_classes(G: FiniteGroup, p: int, n: int | None = None) -> list[SubgroupClassDatum]:
    """Conjugacy classes of abelian p-subgroups generated by at most n elements
    (all of them when n is None), trivial subgroup included."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _class_data(G, p, _abelian_p_subgroups(G, p, n, elementary=False))


def elementary_abelian_classes(G: FiniteGroup, p: int) -> list[SubgroupClassDatum]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _class_data(G, p, _abelian_p_subgroups(G, p, None, elementary=True))


def hall_side_sum(classes, n: int) -> Fraction:
    return sum((Fraction(hall_gen_count(d.type, n), d.normalizer_order) for d in classes),
               Fraction(0))


def theoremB_finite_check(G: FiniteGroup, p: int, n: int) -> Verdict:
    """sum_(H) |Gen_n(H)| / |N(H)| equals the tuple class sum and is p-integral."""
    hall_side = hall_side_sum(abelian_p_subgroup_classes(G, p, n), n)
    tuple_side = tuple_class_sum(G, p, n)
    return Verdict.of(hall_side == tuple_side and is_p_integral(hall_side, p), tuple_side)


def brown_quillen_sum_finite(G: FiniteGroup, p: int) -> Fraction:
    total = Fraction(0)
    for d in elementary_abelian_classes(G, p):
        r = d.type.rank
        total += Fraction((-1) ** r * p ** comb(r, 2), d.normalizer_order)
    if not is_p_integral(total, p):
        raise OracleMismatch(f"Brown-Quillen sum {total} is not {p}-integral", total)
    return total


def height_stabilization_check(G: FiniteGroup, p: int) -> Verdict:
    """Height-n Hall sums agree with the Brown-Quillen sum modulo Z_(p) for
    N <= n <= N + 2, where p^N is the largest p-subgroup order."""
    N = vp(G.order, p)
    bq = brown_quillen_sum_finite(G, p)
    classes = abelian_p_subgroup_classes(G, p)
    worst = None
    for n in range(max(N, 1), max(N, 1) + 3):
        diff = hall_side_sum(classes, n) - bq
        if not is_p_integral(diff, p):
            return Verdict.of(False, diff)
        worst = diff
    return Verdict.of(True, worst)


def brown_rank1_identity(G: FiniteGroup, p: int) -> Verdict:
    """sum over order-p subgroup classes of 1/|N(P)| equals
    1/(p-1) times the sum over order-p element classes of 1/|C(g)|."""
    classes = elementary_abelian_classes(G, p)
    if any(d.type.rank >= 2 for d in classes):
        return Verdict.skipped("rank2_subgroup_present")
    lhs = sum((Fraction(1, d.normalizer_order) for d in classes if d.type.rank == 1), Fraction(0))
    conj = G.conj
    seen = set()
    rhs = Fraction(0)
    for g, o in enumerate(G.element_orders):
        if o != p or g in seen:
            continue
        seen |= set(conj[:, g].tolist())
        rhs += Fraction(1, G.centralizer_masks[g].bit_count())
    rhs /= p - 1
    return Verdict.of(lhs == rhs, lhs)
