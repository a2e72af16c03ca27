"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..division import JANET, JANET_LIKE
from ..engine import janet_basis
from ..quotient import (
    RelationSet,
    comp_cond,
    hilbert_polynomial,
    hilbert_series,
    reduce_with_relations,
    residue_class_basis,
)
from .convert import format_rows, normalize_direction, pol2shift, shift2pol
from .parser import ParseError, parse_relations, parse_system
from .serialize import format_monomial, format_poly, format_system, to_json

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_COMPUTE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        try:
            return Path(arg[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc}") from None
    return arg


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ring", required=True, help='"x,y; u,ux,uy; params"')
    p.add_argument("--ranking", choices=["degrevlex", "lex"], default="degrevlex")
    p.add_argument("--priority", choices=["top", "pot"], default="top")
    p.add_argument("--blocks", help='axis blocks, e.g. "x|y"')
    p.add_argument("--dependent-order", help="dependents from highest to lowest rank, e.g. ux,uy,u")
    p.add_argument("--mode", choices=[JANET, JANET_LIKE], default=JANET)
    p.add_argument("--criteria", default="", help="comma-separated subset of 1,2,3,4")
    p.add_argument("--direction", choices=["forward", "backward"], default="forward")
    p.add_argument("--relations", help="file with one pattern per line, e.g. f[0,*]")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--degree-bound", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lindiff", description="Janet bases of linear difference systems")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("basis", help="compute the minimal Janet(-like) basis")
    p.add_argument("system", help="equations separated by ';' (@file or - for stdin)")
    _common(p)
    p = sub.add_parser("reduce", help="involutive normal forms modulo the basis")
    p.add_argument("system")
    p.add_argument("expr", nargs="+", help="expressions to reduce")
    _common(p)
    p = sub.add_parser("masters", help="standard monomials (master functions)")
    p.add_argument("system")
    _common(p)
    p = sub.add_parser("hilbert", help="Hilbert series, function and polynomial")
    p.add_argument("system")
    _common(p)
    p = sub.add_parser("compcond", help="compatibility conditions of the affine system")
    p.add_argument("system")
    _common(p)
    p = sub.add_parser("convert", help="equations <-> shift operators")
    p.add_argument("system")
    p.add_argument("--to", choices=["operators", "equations"], default="operators")
    _common(p)
    return parser


def _setup(args):
    from .._validation import check_ranking, check_ring

    try:
        ring = check_ring(args.ring, args.direction)
    except ParseError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        ranking = check_ranking(ring, args.ranking, args.priority, args.blocks, args.dependent_order)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    crit = [c.strip() for c in args.criteria.split(",") if c.strip()]
    bad = [c for c in crit if c.upper().lstrip("C") not in ("1", "2", "3", "4")]
    if bad:
        raise UsageError(f"unknown criteria {bad}; use a subset of 1,2,3,4")
    relations = RelationSet()
    if args.relations:
        for pat in parse_relations(_read_text("@" + args.relations), ring):
            relations.add(pat)
    return ring, ranking, crit, relations


def _emit(doc_or_text, args) -> None:
    if isinstance(doc_or_text, dict):
        print(json.dumps(doc_or_text, indent=2))
    else:
        print(doc_or_text)


def run(args) -> int:
    ring, ranking, crit, relations = _setup(args)
    system = normalize_direction(parse_system(_read_text(args.system), ring))
    polys = [p for p in system.polys if p]
    cmd = args.command

    if cmd == "convert":
        if args.to == "operators":
            lines = [format_rows(shift2pol(p)) for p in system.polys]
            if args.format == "json":
                _emit({"operators": lines}, args)
            else:
                print(";\n".join(lines))
        else:
            # operator text already parsed to equations by the grammar
            eqs = [pol2shift(shift2pol(p), ring=ring) for p in system.polys]
            if args.format == "json":
                _emit(to_json(ring, ranking, None, elements=[e for e in eqs if e]), args)
            else:
                print(format_system(eqs, ranking))
        return EXIT_OK

    if cmd == "compcond":
        conds = comp_cond(polys, ranking, args.mode, crit)
        if args.format == "json":
            ext = conds[0].ring if conds else ring
            _emit(to_json(ext, None, args.mode, conditions=conds), args)
        else:
            print(format_system(conds) if conds else "no compatibility conditions")
        return EXIT_OK

    if not polys:
        raise ValueError("zero ideal input")
    J = janet_basis(polys, ranking, args.mode, crit)

    if cmd == "basis":
        if args.format == "json":
            _emit(to_json(ring, ranking, args.mode, elements=J.polys), args)
        else:
            print(format_system(J.polys, ranking))
    elif cmd == "reduce":
        from .._validation import check_poly

        out = [reduce_with_relations(check_poly(_read_text(e), ring), J, relations) for e in args.expr]
        if args.format == "json":
            doc = to_json(ring, ranking, args.mode, elements=J.polys)
            doc["reduced"] = [format_poly(p, ranking) for p in out]
            _emit(doc, args)
        else:
            print("\n".join(format_poly(p, ranking) for p in out))
    elif cmd == "masters":
        masters = residue_class_basis(J, args.degree_bound, relations)
        if not masters.finite and args.degree_bound is None:
            raise UsageError("infinitely many masters; pass --degree-bound")
        mons = list(masters)
        if args.format == "json":
            _emit(to_json(ring, ranking, args.mode, elements=J.polys, masters=mons, series=masters.summary()), args)
        else:
            if masters.finite:
                verdict = f"finite, {len(mons)} master{'' if len(mons) == 1 else 's'}"
            else:
                verdict = f"infinite, series {masters.series}"
            print(verdict)
            print("\n".join(format_monomial(ring, m) for m in mons))
    elif cmd == "hilbert":
        hs = hilbert_series(J)
        hp = hilbert_polynomial(J)
        bound = args.degree_bound if args.degree_bound is not None else 8
        series = {
            "generating_function": str(hs),
            "hilbert_function": hs.coefficients(bound),
            "hilbert_polynomial": str(hp),
            "regularity": hp.regularity,
        }
        if args.format == "json":
            _emit(to_json(ring, ranking, args.mode, elements=J.polys, series=series), args)
        else:
            print(f"series: {hs}")
            print(f"function: {series['hilbert_function']}")
            print(f"polynomial: {hp} (for d >= {hp.regularity})")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return run(args)
    except UsageError as exc:
        print(f"lindiff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"lindiff: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"lindiff: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
