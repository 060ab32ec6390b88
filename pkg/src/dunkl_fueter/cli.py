"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input or refused
configuration, 3 an internal invariant was violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .clifford import format_rational
from .errors import InputError, InternalError
from .fueter import ck_extend, fischer_decompose, monogenic_basis
from .poly import format_poly
from .report import emit_report
from .suites import SUITES, CaseSpec, context_for, run_suite
from .textfmt import parse_poly


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help="group spec, e.g. a1:d=2:kappa=1/2,1")
    p.add_argument("--seed", help="complex seed zbar^j*z^k")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--negative-control", action="store_true")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--rand-seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20, help="random cases per suite")
    p.add_argument("--degree", type=int, help="degree bound for random polynomials")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dunkl-fueter", description="Exact checks of Dunkl-Clifford identities and Fueter-type theorems.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    _shared(v)
    for verb, hlp in (("fischer", "Fischer decomposition of a homogeneous polynomial"), ("ck", "CK extension of a polynomial in x1..xd")):
        p = sub.add_parser(verb, help=hlp)
        p.add_argument("--poly", required=True)
        _shared(p)
    b = sub.add_parser("basis", help="basis of the homogeneous Dunkl-monogenic polynomials of degree n")
    _shared(b)
    sub.add_parser("list-groups", help="show built-in reflection groups")
    return parser


def parse_args(argv: Sequence[str]) -> tuple[str, argparse.Namespace, CaseSpec | None]:
    """Parse argv; raises UsageError (exit 2) naming the offending flag."""
    args = build_parser().parse_args(list(argv))
    if args.verb is None:
        raise UsageError("missing verb: verify, fischer, ck, basis or list-groups")
    if args.verb == "list-groups":
        return args.verb, args, None
    if not args.group:
        raise UsageError("--group is required")
    if args.verb == "verify":
        spec = CaseSpec(
            suite=args.suite,
            group=args.group,
            seed=args.seed,
            m=args.m,
            n=args.n,
            k=args.k,
            negative_control=args.negative_control,
            json=args.json,
            max_degree=args.max_degree,
            rand_seed=args.rand_seed,
            count=args.count,
            degree=args.degree,
            jobs=args.jobs,
        )
        return args.verb, args, spec
    if args.verb == "basis" and args.n is None:
        raise UsageError("--n is required for basis")
    return args.verb, args, None


def _emit_lines(lines: list[str], as_json: bool, payload: dict) -> None:
    if as_json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _run(argv: Sequence[str]) -> int:
    verb, args, spec = parse_args(argv)
    if verb == "list-groups":
        rows = [
            "a1:d=<d>:kappa=<k1,...,kd>   A1^d, one weight per axis",
            "sd:d=<d>:kappa=<k>           S_d acting on R^d by permutations",
            "bd:d=<d>:kappa=<short,long>  B_d (hyperoctahedral)",
            "b2:kappa=<short,long>        B_2 in the plane (dihedral of order 8)",
        ]
        sys.stdout.write("\n".join(rows) + "\n")
        return 0
    if verb == "verify":
        report = run_suite(spec)
        sys.stdout.buffer.write(emit_report(report, "json" if spec.json else "text", spec.rand_seed))
        sys.stdout.flush()
        return 0 if report.ok else 1

    ctx = context_for(args.group)
    if verb == "basis":
        basis = monogenic_basis(ctx, args.n)
        elems = [format_poly(e) for e in basis]
        _emit_lines(
            [f"M({args.n}) for {ctx.group.name}: dimension {len(elems)}"] + [f"[{i}] {e}" for i, e in enumerate(elems)],
            args.json,
            {"group": ctx.group.name, "n": args.n, "mu": format_rational(ctx.mu), "basis": elems},
        )
        return 0
    p = parse_poly(args.poly, ctx.dim)
    if verb == "fischer":
        dec = fischer_decompose(ctx, p)
        parts = [format_poly(part) for part in dec.parts]
        _emit_lines(
            [f"M_{dec.degree - k} (x^{k} factor): {t}" for k, t in enumerate(parts)],
            args.json,
            {"group": ctx.group.name, "degree": dec.degree, "parts": parts},
        )
        return 0
    ck = ck_extend(ctx, p)
    _emit_lines([format_poly(ck)], args.json, {"group": ctx.group.name, "input": format_poly(p), "ck": format_poly(ck)})
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        return _run(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except InputError as exc:
        sys.stderr.write(f"error ({type(exc).__name__}): {exc}\n")
        return 2
    except InternalError as exc:
        sys.stderr.write(f"internal invariant violated ({type(exc).__name__}): {exc}\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
