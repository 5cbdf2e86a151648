"""Small finite groups stored as Cayley tables.

Elements are the indices ``0 .. order-1``. Subgroups and centralizers are
handled as Python-int bitmasks over those indices.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

MAX_ORDER = 256


class FiniteGroup:
    def __init__(self, table, identity: int = 0, labels: Sequence[str] | None = None,
                 name: str = "", validate: bool = True):
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("Cayley table must be square")
        if n > MAX_ORDER:
            raise ValueError(f"group order {n} exceeds oracle bound {MAX_ORDER}")
        self.table = table
        self.order = n
        self.identity = identity
        self.labels = list(labels) if labels is not None else None
        self.name = name or f"G{n}"
        if validate:
            self._validate()

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def _validate(self) -> None:
        T, n, e = self.table, self.order, self.identity
        if T.min() < 0 or T.max() >= n:
            raise ValueError("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(T[e], idx) and np.array_equal(T[:, e], idx)):
            raise ValueError(f"{e} is not a two-sided identity")
        for row in T:
            if len(set(row.tolist())) != n:
                raise ValueError("table is not a Latin square (missing inverses)")
        # (ab)c == a(bc) for all a, b, c
        if not np.array_equal(T[T, :], T[:, T]):
            raise ValueError("operation is not associative")

    @classmethod
    def from_operation(cls, elements: Sequence[Hashable], mul: Callable,
                       identity: Hashable, name: str = "", labels=None) -> "FiniteGroup":
        elements = list(elements)
        if len(elements) > MAX_ORDER:
            raise ValueError(f"group order {len(elements)} exceeds oracle bound {MAX_ORDER}")
        index = {x: i for i, x in enumerate(elements)}
        table = [[index[mul(a, b)] for b in elements] for a in elements]
        if labels is None:
            labels = [str(x) for x in elements]
        return cls(table, index[identity], labels, name)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverse(self) -> list[int]:
        rows, cols = np.nonzero(self.table == self.identity)
        inv = [0] * self.order
        for a, b in zip(rows.tolist(), cols.tolist()):
            inv[a] = b
        return inv

    def power(self, a: int, k: int) -> int:
        result, base = self.identity, a
        if k < 0:
            base, k = self.inverse[a], -k
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @cached_property
    def element_orders(self) -> list[int]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.mul(x, a)
                k += 1
            out.append(k)
        return out

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x] = g x g^-1``."""
        T = self.table
        inv = np.asarray(self.inverse)
        return T[T, inv[:, None]]

    @cached_property
    def centralizer_masks(self) -> list[int]:
        """Bitmask of C(x) for every element x."""
        T = self.table
        commute = T == T.T
        return [_mask_from_bools(commute[x]) for x in range(self.order)]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def closure(self, gens) -> int:
        """Bitmask of the subgroup generated by ``gens``."""
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return mask_of(elems)


def mask_of(elements) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _mask_from_bools(row) -> int:
    return mask_of(np.nonzero(row)[0].tolist())


# --- constructors -----------------------------------------------------------

def cyclic(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError("cyclic group needs m >= 1")
    if m > MAX_ORDER:
        raise ValueError(f"group order {m} exceeds oracle bound {MAX_ORDER}")
    idx = np.arange(m)
    return FiniteGroup((idx[:, None] + idx[None, :]) % m, 0, [str(i) for i in range(m)], f"C{m}")


def abelian(ms: Sequence[int]) -> FiniteGroup:
    ms = list(ms)
    if not ms:
        return cyclic(1)
    order = int(np.prod(ms))
    if order > MAX_ORDER:
        raise ValueError(f"group order {order} exceeds oracle bound {MAX_ORDER}")
    elements = list(itertools.product(*[range(m) for m in ms]))
    return FiniteGroup.from_operation(
        elements, lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, ms)),
        tuple(0 for _ in ms), "x".join(f"C{m}" for m in ms))


def _compose(a, b):
    # (a*b)(i) = a(b(i))
    return tuple(a[i] for i in b)


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise ValueError("symmetric(n) supported for 1 <= n <= 5")
    perms = list(itertools.permutations(range(n)))
    return FiniteGroup.from_operation(perms, _compose, tuple(range(n)), f"S{n}")


def dihedral(m: int) -> FiniteGroup:
    """Symmetries of the regular m-gon, order 2m (``D8`` is dihedral(4))."""
    if m < 1:
        raise ValueError("dihedral(m) needs m >= 1")
    if 2 * m > MAX_ORDER:
        raise ValueError(f"group order {2 * m} exceeds oracle bound {MAX_ORDER}")
    # (s, k) acts as i -> (-1)^s i + k
    elements = [(s, k) for s in (0, 1) for k in range(m)]

    def mul(a, b):
        s1, k1 = a
        s2, k2 = b
        return ((s1 + s2) % 2, (k1 + (-1) ** s1 * k2) % m)

    return FiniteGroup.from_operation(elements, mul, (0, 0), f"D{2 * m}")


def quaternion8() -> FiniteGroup:
    # unit quaternions as (sign, axis) with axis in 1, i, j, k
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elements = [(s, a) for s in (1, -1) for a in "1ijk"]

    def mul(x, y):
        sign, axis = mult[(x[1], y[1])]
        return (x[0] * y[0] * sign, axis)

    labels = [("" if s > 0 else "-") + a for s, a in elements]
    return FiniteGroup.from_operation(elements, mul, (1, "1"), "Q8", labels)


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    if not groups:
        return cyclic(1)
    order = int(np.prod([g.order for g in groups]))
    if order > MAX_ORDER:
        raise ValueError(f"group order {order} exceeds oracle bound {MAX_ORDER}")
    elements = list(itertools.product(*[range(g.order) for g in groups]))

    def mul(a, b):
        return tuple(g.mul(x, y) for g, x, y in zip(groups, a, b))

    return FiniteGroup.from_operation(
        elements, mul, tuple(g.identity for g in groups),
        "x".join(g.name for g in groups))


_FACTOR = re.compile(r"^(C|S|D|Q)(\d+)$")


def group_from_name(name: str) -> FiniteGroup:
    """Build a group from names like ``S3``, ``D8``, ``Q8``, ``C5xC5``.

    ``Cm`` cyclic, ``Sn`` symmetric, ``D2m`` dihedral of order 2m, ``Q8``
    quaternion; factors joined by ``x`` form a direct product.
    """
    factors = []
    for part in name.split("x"):
        m = _FACTOR.match(part.strip())
        if not m:
            raise ValueError(f"unknown group name {name!r}")
        kind, k = m.group(1), int(m.group(2))
        if kind == "C":
            factors.append(cyclic(k))
        elif kind == "S":
            factors.append(symmetric(k))
        elif kind == "D":
            if k % 2:
                raise ValueError(f"dihedral order must be even in {name!r}")
            factors.append(dihedral(k // 2))
        elif k == 8:
            factors.append(quaternion8())
        else:
            raise ValueError(f"unknown group name {name!r}")
    g = factors[0] if len(factors) == 1 else direct_product(*factors)
    g.name = name
    return g


CATALOG_NAMES = (
    "C1", "C2", "C3", "C4", "C5", "C6", "C8", "C9",
    "C2xC2", "C4xC2", "C3xC3", "C5xC5", "C2xC2xC2", "C4xC4",
    "S3", "D8", "Q8", "D10", "D12", "C3xS3", "D8xC2", "Q8xC2", "S4", "S4xC2",
)

_catalog_cache: dict[str, FiniteGroup] = {}


def catalog(name: str) -> FiniteGroup:
    if name not in _catalog_cache:
        _catalog_cache[name] = group_from_name(name)
    return _catalog_cache[name]


def catalog_groups() -> list[FiniteGroup]:
    return [catalog(n) for n in CATALOG_NAMES]
