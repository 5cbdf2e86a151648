"""Command-line front end: verification suites, single computations, profiles."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import chromatic, counting, moduli
from .arith import parse_rational, residue_qzp
from .bernoulli import bernoulli, zeta_neg
from .groups import catalog
from .suites import SUITES, SuiteOptions, run_suite
from .verdict import Status

QUANTITIES = ("bernoulli", "zeta", "chi-orb", "chi-q", "N", "hall", "tuple-sum",
              "height-sum", "bq-sum", "residue")


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_filters(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=_int_list, help="prime or comma-separated primes")
    sp.add_argument("--n", type=int, help="height n (or n_max for section7)")
    sp.add_argument("--u", type=int, help="single u")
    sp.add_argument("--u-max", type=int, help="sweep u from 2 to this bound")
    sp.add_argument("--group", help="catalog group name(s), comma-separated, e.g. S3,C5xC5")
    sp.add_argument("--profile", help="profile file for section7 / height-sum / bq-sum")
    sp.add_argument("--format", choices=("text", "jsonl"), default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chromcong",
        description="Exact verification of chromatic and Bernoulli congruences.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    _add_filters(v)

    r = sub.add_parser("report", help="run a suite and write the report to a file")
    r.add_argument("--suite", choices=SUITES + ("all",), default="all")
    r.add_argument("--output", help="report file (default stdout)")
    _add_filters(r)

    c = sub.add_parser("compute", help="print one exact quantity")
    c.add_argument("quantity", choices=QUANTITIES)
    _add_filters(c)
    c.add_argument("--m", type=int)
    c.add_argument("--v", type=int)
    c.add_argument("--s", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--ls", type=_int_list)
    c.add_argument("--type", type=_int_list, help="abelian p-type, e.g. 2,1")
    c.add_argument("--q", help="rational a/b")
    c.add_argument("--section7", action="store_true",
                   help="use the built-in profile for u=(p-1)(p-2)/2")

    pr = sub.add_parser("profile", help="write a subgroup profile in interchange format")
    pr.add_argument("--group")
    pr.add_argument("--p", type=int, required=True)
    pr.add_argument("--section7", action="store_true")
    pr.add_argument("--output")
    return ap


def _options(args) -> SuiteOptions:
    groups = None
    if args.group:
        groups = [g.strip() for g in args.group.split(",")]
        for g in groups:
            catalog(g)
    prof = None
    if args.profile:
        with open(args.profile) as fh:
            prof = chromatic.parse_profile(fh.read())
    return SuiteOptions(p=args.p or None, n=args.n, u=args.u, u_max=args.u_max,
                        groups=groups, profile=prof)


def _emit(reports, fmt: str, out) -> int:
    for rep in reports:
        out.write((rep.to_json() if fmt == "jsonl" else rep.to_text()) + "\n")
    return 1 if any(rep.status is Status.FAIL for rep in reports) else 0


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, _options(args))
    return _emit(reports, args.format, sys.stdout)


def cmd_report(args) -> int:
    reports = run_suite(args.suite, _options(args))
    if args.output:
        with open(args.output, "w") as fh:
            return _emit(reports, args.format, fh)
    return _emit(reports, args.format, sys.stdout)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return [getattr(args, n) for n in names]


def _single_p(args):
    if not args.p:
        return None
    if len(args.p) != 1:
        raise UsageError("--p takes a single prime here")
    return args.p[0]


def _profile_for(args, p):
    if args.profile:
        with open(args.profile) as fh:
            return chromatic.parse_profile(fh.read())
    if p is None:
        raise UsageError("need --profile, or --p with --group or --section7")
    if args.section7:
        return chromatic.section7_profile(p)
    if args.group:
        return chromatic.profile_from_finite_group(catalog(args.group), p)
    raise UsageError("need --profile, --group or --section7")


def compute_value(args) -> tuple[Fraction, int | None]:
    """The requested quantity and the prime to reduce it at, if any."""
    p = _single_p(args)
    q = args.quantity
    if q == "bernoulli":
        (m,) = _need(args, "m")
        return bernoulli(m), p
    if q == "zeta":
        (u,) = _need(args, "u")
        return zeta_neg(u), p
    if q == "chi-orb":
        if args.v is None and args.u is not None:
            return moduli.chi_orb_closed(args.u), p
        v, s = _need(args, "v", "s")
        return moduli.chi_orb_punctured(v, s), p
    if q == "chi-q":
        (u,) = _need(args, "u")
        return moduli.chi_q(u), p
    if q == "N":
        k, ls = _need(args, "k", "ls")
        return Fraction(moduli.count_residue_tuples(k, ls)), p
    if q == "hall":
        lam, n = _need(args, "type", "n")
        if p is None:
            raise UsageError("missing --p")
        return Fraction(counting.hall_gen_count(counting.AbelianPType(p, tuple(lam)), n)), None
    if q == "tuple-sum":
        group, n = _need(args, "group", "n")
        if p is None:
            raise UsageError("missing --p")
        return counting.tuple_class_sum(catalog(group), p, n), p
    if q in ("height-sum", "bq-sum"):
        prof = _profile_for(args, p)
        if q == "bq-sum":
            return chromatic.bq_sum(prof), prof.p
        (n,) = _need(args, "n")
        return chromatic.height_sum(prof, n), prof.p
    # residue
    (text,) = _need(args, "q")
    if p is None:
        raise UsageError("missing --p")
    return parse_rational(text), p


def cmd_compute(args) -> int:
    value, p = compute_value(args)
    line = str(value)
    if p is not None:
        c, e = residue_qzp(value, p)
        line += f" residue={Fraction(c, p**e)}"
    print(line)
    return 0


def cmd_profile(args) -> int:
    if args.section7:
        prof = chromatic.section7_profile(args.p)
    elif args.group:
        prof = chromatic.profile_from_finite_group(catalog(args.group), args.p)
    else:
        raise UsageError("need --group or --section7")
    text = chromatic.format_profile(prof)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {"verify": cmd_verify, "report": cmd_report, "compute": cmd_compute,
            "profile": cmd_profile}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"chromcong: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
