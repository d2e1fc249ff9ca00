"""Command-line interface.

Exit codes: 0 success / INTEGER verdict / sweep confirmed, 1 NON_INTEGER
verdict or failed check, 2 usage, parse or context errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction

from . import oracle
from .classic import classify_classic
from .classifier import Classification, Verdict, classify, integer_level_set
from .exact import format_rational, parse_rational
from .genfunc import evaluate, partial_sum, within_radius
from .pell import continued_fraction_sqrt
from .sequences import PellContext, SeqKind, terms_upto

EXTENDED_BOUND = 2000
_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")


class UsageError(Exception):
    pass


def _context(text: str) -> PellContext:
    try:
        m = int(text)
    except ValueError:
        raise UsageError(f"m must be a natural number, got {text!r}") from None
    return PellContext.from_m(m)


def _target(text: str):
    return oracle.CLASSIC if text.lower() == oracle.CLASSIC else _context(text)


def _witness_field(ws) -> str:
    return ",".join(f"{w.family.value}:{w.n}" for w in ws)


def _emit(args, tsv_lines: list[str], doc: dict) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) if args.format == "json" else "\n".join(tsv_lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_solve(args) -> int:
    ctx = _context(args.m)
    cf = continued_fraction_sqrt(ctx.m)
    fields = [ctx.m, ctx.a, ctx.b, ctx.epsilon, str(cf)]
    doc = {
        "m": str(ctx.m),
        "a": str(ctx.a),
        "b": str(ctx.b),
        "epsilon": str(ctx.epsilon),
        "a0": str(cf.a0),
        "period": [str(x) for x in cf.period],
    }
    _emit(args, ["\t".join(map(str, fields))], doc)
    return 0


def cmd_seq(args) -> int:
    ctx = _context(args.m)
    if args.N < 0:
        raise UsageError("N must be non-negative")
    terms = terms_upto(ctx, SeqKind.parse(args.kind), args.N)
    _emit(
        args,
        [f"{n}\t{t}" for n, t in enumerate(terms)],
        {"m": str(ctx.m), "kind": args.kind.upper(), "terms": [str(t) for t in terms]},
    )
    return 0


def _classification_doc(c: Classification) -> dict:
    return {
        "verdict": c.verdict.value,
        "value": format_rational(c.value),
        "k": None if c.k is None else str(c.k),
        "witnesses": [{"family": w.family.value, "n": str(w.n), "k": str(w.k)} for w in c.witnesses],
        "diagnostic": c.diagnostic,
    }


def cmd_classify(args) -> int:
    target = _target(args.target)
    kind = SeqKind.parse(args.kind)
    x = parse_rational(args.x)
    c = classify_classic(kind, x) if target == oracle.CLASSIC else classify(target, kind, x)
    if c.verdict is Verdict.INTEGER:
        lines = [f"INTEGER\t{c.k}"] + [f"{w.family.value}\t{w.n}" for w in c.witnesses]
    else:
        lines = [f"NON_INTEGER\t{format_rational(c.value)}"]
    if c.diagnostic:
        print(f"{c.diagnostic}: x={format_rational(x)}", file=sys.stderr)
    _emit(args, lines, _classification_doc(c))
    return 0 if c.verdict is Verdict.INTEGER else 1


def cmd_sweep(args) -> int:
    target = _target(args.target)
    B = EXTENDED_BOUND if args.extended else args.B
    if B is None or B < 1:
        raise UsageError("B must be >= 1 (or pass --extended)")
    report = oracle.sweep(
        target,
        SeqKind.parse(args.kind),
        B,
        radius_only=args.radius_only,
        jobs=args.jobs,
        backend=args.backend,
    )
    doc = report.to_dict()
    lines = [
        f"m\t{report.m}",
        f"kind\t{report.kind.value}",
        f"bound\t{report.bound}",
        f"radius_only\t{str(report.radius_only).lower()}",
        f"points_tested\t{report.points_tested}",
    ]
    if report.points_in_radius is not None:
        lines.append(f"points_in_radius\t{report.points_in_radius}")
    lines += [
        f"count_formula\t{oracle.COUNT_FORMULA}",
        f"family_points_checked\t{report.family_points_checked}",
        f"integer_points\t{len(report.integer_points)}",
        f"violations\t{len(report.violations)}",
    ]
    lines += [
        f"POINT\t{format_rational(p.x)}\t{p.k}\t{_witness_field(p.witnesses)}" for p in report.integer_points
    ]
    lines += [
        f"VIOLATION\t{format_rational(v.x)}\t{format_rational(v.value)}\t{v.diagnosis}"
        for v in report.violations
    ]
    _emit(args, lines, doc)
    return 0 if report.confirmed else 1


def cmd_identities(args) -> int:
    ctx = _context(args.m)
    report = oracle.identity_grid(ctx, args.n_max)
    status = "PASS" if report.passed else "FAIL"
    lines = [f"FAIL\t{i}\t{n}\t{j}" for i, n, j in report.failures]
    lines.append(f"{status} 9 identities, grid n<={args.n_max}")
    doc = {
        "m": str(ctx.m),
        "n_max": str(args.n_max),
        "checked": str(report.checked),
        "passed": report.passed,
        "failures": [{"identity": str(i), "n": str(n), "j": str(j)} for i, n, j in report.failures],
    }
    _emit(args, lines, doc)
    return 0 if report.passed else 1


def cmd_level_set(args) -> int:
    ctx = _context(args.m)
    roots = integer_level_set(ctx, SeqKind.parse(args.kind), args.k)
    _emit(
        args,
        [format_rational(r) for r in roots],
        {"m": str(ctx.m), "kind": args.kind.upper(), "k": str(args.k), "roots": [format_rational(r) for r in roots]},
    )
    return 0


def cmd_eval(args) -> int:
    ctx = _context(args.m)
    kind = SeqKind.parse(args.kind)
    x = parse_rational(args.x)
    v = evaluate(ctx, kind, x)
    doc = {
        "value": format_rational(v.value),
        "is_integer": v.is_integer,
        "within_radius": within_radius(ctx, x),
    }
    lines = [
        f"value\t{format_rational(v.value)}",
        f"is_integer\t{str(v.is_integer).lower()}",
        f"within_radius\t{str(doc['within_radius']).lower()}",
    ]
    if args.partial is not None:
        if args.partial < 0:
            raise UsageError("--partial must be non-negative")
        s = partial_sum(ctx, kind, x, args.partial)
        diff: Fraction = v.value - s
        doc.update(partial_N=str(args.partial), partial_sum=format_rational(s), difference=format_rational(diff))
        lines += [
            f"partial_N\t{args.partial}",
            f"partial_sum\t{format_rational(s)}",
            f"difference\t{format_rational(diff)}",
        ]
    _emit(args, lines, doc)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="pellgf", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="minimal solution of x^2 - m y^2 = +-1")
    p.add_argument("m")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("seq", parents=[common], help="terms 0..N of F or L")
    p.add_argument("m")
    p.add_argument("kind")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("classify", parents=[common], help="integrality verdict with witnesses")
    p.add_argument("target", help="m, or 'classic' for Fibonacci/Lucas")
    p.add_argument("kind")
    p.add_argument("x", help="p/q or integer")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", parents=[common], help="classify every reduced p/q in a box")
    p.add_argument("target", help="m, or 'classic'")
    p.add_argument("kind")
    p.add_argument("B", type=int, nargs="?")
    p.add_argument("--radius-only", action="store_true", help="only points inside the radius of convergence")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--extended", action="store_true", help=f"use B={EXTENDED_BOUND}")
    p.add_argument("--backend", choices=("numba", "numpy", "python"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("identities", parents=[common], help="check the identity grid")
    p.add_argument("m")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("level-set", parents=[common], help="all rational x with GF(x) = k")
    p.add_argument("m")
    p.add_argument("kind")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_level_set)

    p = sub.add_parser("eval", parents=[common], help="exact generating function value")
    p.add_argument("m")
    p.add_argument("kind")
    p.add_argument("x")
    p.add_argument("--partial", type=int, metavar="N")
    p.set_defaults(func=cmd_eval)

    # let "-3/1" through as a positional rational rather than an option
    for action in sub.choices.values():
        action._negative_number_matcher = _NEGATIVE_RATIONAL
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
