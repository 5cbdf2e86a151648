"""Named verification suites and the report records they produce."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

from . import chromatic, counting, moduli
from .arith import is_p_integral
from .bernoulli import (bernoulli, carlitz_check, cohen_check, kummer_check,
                        von_staudt_clausen_check)
from .groups import CATALOG_NAMES, catalog
from .verdict import OracleMismatch, Status, Verdict

SUITES = ("finite-groups", "hall", "bernoulli", "prop61", "thm611", "chi-q", "section7")


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    params: tuple[tuple[str, object], ...]
    status: Status
    witness: Optional[Fraction] = None
    elapsed_ms: int = 0
    reason: str = ""

    def __post_init__(self):
        if self.status is Status.FAIL and self.witness is None:
            raise ValueError("a FAIL report needs a witness")

    def sort_key(self):
        return (self.check_id, tuple((k, _sortable(v)) for k, v in self.params))

    def to_text(self) -> str:
        parts = [self.status.value, self.check_id]
        parts += [f"{k}={v}" for k, v in self.params]
        if self.witness is not None:
            parts.append(f"witness={self.witness}")
        if self.reason:
            parts.append(f"reason={self.reason}")
        return " ".join(parts)

    def to_json(self) -> str:
        w = self.witness
        return json.dumps({
            "check_id": self.check_id,
            "params": dict(self.params),
            "status": self.status.value,
            "witness_num": None if w is None else str(w.numerator),
            "witness_den": None if w is None else str(w.denominator),
            "elapsed_ms": self.elapsed_ms,
        })

    @classmethod
    def from_json(cls, line: str) -> "CheckReport":
        d = json.loads(line)
        w = None
        if d["witness_num"] is not None:
            w = Fraction(int(d["witness_num"]), int(d["witness_den"]))
        return cls(d["check_id"], tuple(d["params"].items()), Status(d["status"]), w,
                   d["elapsed_ms"])


def _sortable(v):
    # ints before strings, ints numerically
    return (0, v, "") if isinstance(v, int) else (1, 0, str(v))


@dataclass(frozen=True)
class Check:
    check_id: str
    params: tuple[tuple[str, object], ...]
    run: Callable[[], Verdict]


def _check(check_id: str, fn: Callable[[], Verdict], **params) -> Check:
    return Check(check_id, tuple(params.items()), fn)


def run_checks(checks: Iterable[Check]) -> list[CheckReport]:
    reports = []
    for c in checks:
        start = time.perf_counter()
        try:
            v = c.run()
        except OracleMismatch as exc:
            v = Verdict.of(False, exc.witness if exc.witness is not None else 0)
        ms = int((time.perf_counter() - start) * 1000)
        reports.append(CheckReport(c.check_id, c.params, v.status, v.witness, ms, v.reason))
    return sorted(reports, key=CheckReport.sort_key)


# --- suite builders ---------------------------------------------------------

@dataclass
class SuiteOptions:
    p: Optional[Sequence[int]] = None
    n: Optional[int] = None
    u: Optional[int] = None
    u_max: Optional[int] = None
    groups: Optional[Sequence[str]] = None
    profile: Optional[chromatic.GroupProfile] = None


def _u_range(opts: SuiteOptions, default_max: int) -> range:
    if opts.u is not None:
        return range(opts.u, opts.u + 1)
    return range(2, (opts.u_max if opts.u_max is not None else default_max) + 1)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def finite_group_checks(opts: SuiteOptions) -> Iterator[Check]:
    names = opts.groups or CATALOG_NAMES
    ps = opts.p or (2, 3, 5)
    ns = (opts.n,) if opts.n else (1, 2, 3)
    for name in names:
        G = catalog(name)
        if opts.p is None and opts.n is None:
            for d in _divisors(G.order):
                yield _check("frobenius", lambda G=G, d=d: _frobenius(G, d), group=name, d=d)
        for p in ps:
            for n in ns:
                yield _check("tuple-sum", lambda G=G, p=p, n=n: _p_integral(
                    counting.tuple_class_sum(G, p, n), p), group=name, p=p, n=n)
                yield _check("subgroup-sum", lambda G=G, p=p, n=n:
                             counting.theoremB_finite_check(G, p, n), group=name, p=p, n=n)
            if opts.n is None:
                yield _check("brown-quillen", lambda G=G, p=p: _p_integral(
                    counting.brown_quillen_sum_finite(G, p), p), group=name, p=p)
                yield _check("stabilization", lambda G=G, p=p:
                             counting.height_stabilization_check(G, p), group=name, p=p)
                yield _check("brown-rank1", lambda G=G, p=p:
                             counting.brown_rank1_identity(G, p), group=name, p=p)


def _frobenius(G, d) -> Verdict:
    count = counting.frobenius_count(G, d)
    return Verdict.of(count % d == 0, count)


def _p_integral(q: Fraction, p: int) -> Verdict:
    return Verdict.of(is_p_integral(q, p), q)


def _partitions(total: int, largest: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def hall_checks(opts: SuiteOptions) -> Iterator[Check]:
    ps = opts.p or (2, 3)
    ns = (opts.n,) if opts.n else (1, 2, 3)
    for p in ps:
        for a in range(5):
            for lam in _partitions(a, a):
                t = counting.AbelianPType(p, lam)
                for n in ns:
                    yield _check("hall", lambda t=t, n=n: _hall(t, n), p=p, type=str(t), n=n)


def _hall(t, n) -> Verdict:
    closed = counting.hall_gen_count(t, n)
    return Verdict.of(closed == counting.gen_tuples_bruteforce(t, n), closed)


def bernoulli_checks(opts: SuiteOptions) -> Iterator[Check]:
    top = 2 * (opts.u_max if opts.u_max is not None else 100)
    for two_u in range(2, top + 1, 2):
        yield _check("von-staudt-clausen", lambda t=two_u: Verdict.of(
            von_staudt_clausen_check(t), bernoulli(t)), two_u=two_u)
    for p in opts.p or (5, 7):
        for r in (1, 2):
            for x in range(1, 7):
                yield _check("kummer", lambda p=p, r=r, x=x: kummer_check(p, r, x),
                             p=p, r=r, x=x)
                yield _check("cohen", lambda p=p, r=r, k=x: cohen_check(p, r, k),
                             p=p, r=r, k=x)
        for r in (0, 1, 2):
            for x in range(1, 7):
                yield _check("carlitz", lambda p=p, r=r, x=x: carlitz_check(p, r, x),
                             p=p, r=r, x=x)


def prop61_checks(opts: SuiteOptions) -> Iterator[Check]:
    for p in opts.p or (5, 7):
        for u in _u_range(opts, 12):
            yield _check("prop61", lambda u=u, p=p: moduli.prop61_check(u, p), p=p, u=u)
            yield _check("lemma-terms", lambda u=u, p=p: _lemma_terms(u, p), p=p, u=u)
            if (2 * u - 2) % (p - 1) == 0:
                yield _check("lemma-genus1-grouped", lambda u=u, p=p: _p_integral(
                    moduli.lemma67_sum(u, p), p), p=p, u=u)
            if (2 * u) % (p - 1) == 0:
                yield _check("lemma-genus0-grouped", lambda u=u, p=p: _lemma610(u, p),
                             p=p, u=u)


def _lemma_terms(u: int, p: int) -> Verdict:
    """Every term covered by a single-term integrality lemma is p-integral.

    Witness is the number of covered terms, or the first bad term's value.
    """
    covered = 0
    for t in moduli.prop61_terms(u, p):
        if moduli.integrality_lemma(t) is None:
            continue
        if not is_p_integral(t.value, p):
            return Verdict.of(False, t.value)
        covered += 1
    return Verdict.of(True, covered)


def _lemma610(u: int, p: int) -> Verdict:
    total, predicted = moduli.lemma610_sum(u, p)
    return Verdict.of(is_p_integral(total - predicted, p), total)


def thm611_checks(opts: SuiteOptions) -> Iterator[Check]:
    for p in opts.p or (5, 7, 11, 13):
        for u in _u_range(opts, 80):
            yield _check("thm611", lambda u=u, p=p: moduli.thm611_check(u, p),
                         p=p, u=u, case=moduli.thm611_case(u, p))
            name, params = moduli.recovery_target(u, p)
            params = {"u": u, **params} if "u" not in params else params
            yield _check(f"recover-{name}", lambda u=u, p=p: moduli.remark_recovery(u, p)[2],
                         **params)


def chi_q_checks(opts: SuiteOptions) -> Iterator[Check]:
    for u in _u_range(opts, 8):
        yield _check("chi-q", lambda u=u: _integer(moduli.chi_q(u)), u=u)


def _integer(q: Fraction) -> Verdict:
    return Verdict.of(q.denominator == 1, q)


def section7_checks(opts: SuiteOptions) -> Iterator[Check]:
    if opts.profile is not None:
        prof = opts.profile
        n_max = opts.n or 4
        yield _check("profile-limit", lambda: chromatic.limit_convergence_check(prof, n_max),
                     p=prof.p, n_max=n_max)
        yield _check("profile-bq", lambda: _p_integral(chromatic.bq_sum(prof), prof.p),
                     p=prof.p)
        return
    defaults = {5: 6, 7: 4}
    for p in opts.p or (5, 7):
        n_max = opts.n or defaults.get(p, 4)
        yield _check("section7", lambda p=p, n=n_max: chromatic.section7_check(p, n),
                     p=p, n_max=n_max)


BUILDERS = {
    "finite-groups": finite_group_checks,
    "hall": hall_checks,
    "bernoulli": bernoulli_checks,
    "prop61": prop61_checks,
    "thm611": thm611_checks,
    "chi-q": chi_q_checks,
    "section7": section7_checks,
}


def build_checks(suite: str, opts: SuiteOptions) -> list[Check]:
    if suite == "all":
        return [c for name in SUITES for c in BUILDERS[name](opts)]
    if suite not in BUILDERS:
        raise ValueError(f"unknown suite {suite!r}")
    return list(BUILDERS[suite](opts))


def run_suite(suite: str, opts: SuiteOptions | None = None) -> list[CheckReport]:
    return run_checks(build_checks(suite, opts or SuiteOptions()))
