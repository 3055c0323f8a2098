"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 domain error,
4 appendix fixture mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import positivity as pos
from .appendix import CASES, run_appendix
from .chow import MAX_DEPTH, TowerContext
from .errors import DomainError, ParseError
from .jetdiff import (
    commutator_check,
    parse_jet,
    pole_order_bounds,
    wronskian_closed_form,
    wronskian_det,
    wronskian_matrix,
)
from .parser import parse_class
from .scalars import VARS
from .segre import LTable

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _sample(text: str) -> dict[str, Fraction]:
    """``r=10,d=3,chi=2`` -> mapping of parameter to rational."""
    point = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in VARS:
            raise argparse.ArgumentTypeError(f"bad sample entry {item!r}")
        point[name] = _rational(value.strip())
    return point


def _ints(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


# -- rendering helpers -----------------------------------------------------------


def _scalar(p) -> dict:
    return {"text": p.to_text(), "terms": p.to_json()}


def _class(c) -> dict:
    return {"level": c.level, "text": c.to_text(), "terms": c.to_json()}


def _frac(q) -> str:
    return str(Fraction(q))


# -- commands ------------------------------------------------------------------
# each returns (json payload, text lines, exit code)


def cmd_lnumbers(args):
    table = LTable(args.fmax)
    return table.to_json(), table.to_text().splitlines(), EXIT_OK


def _ctx(args, level: int | None = None) -> TowerContext:
    depth = args.k if level is None else level
    if not 0 <= depth <= MAX_DEPTH:
        raise DomainError(f"level must lie in 0..{MAX_DEPTH}")
    return TowerContext(args.n, depth)


def cmd_segre(args):
    ctx = _ctx(args)
    idx = range(ctx.dim(args.k) + 1) if args.i is None else [args.i]
    rows = [(i, ctx.segre_class(args.k, i)) for i in idx]
    payload = {"n": args.n, "k": args.k, "segre": {str(i): _class(c) for i, c in rows}}
    lines = [f"s_{i}(F_{args.k}) = {c.to_text()}" for i, c in rows]
    return payload, lines, EXIT_OK


def cmd_intersect(args):
    ctx = _ctx(args)
    c = parse_class(args.expr, ctx, args.k)
    if args.pushforward is not None:
        p = ctx.pushforward(c, args.pushforward)
        return {"class": _class(c), "pushforward": _class(p)}, [p.to_text()], EXIT_OK
    value = ctx.top_intersection(c)
    payload = {"class": _class(c), "intersection": _scalar(value)}
    return payload, [value.to_text()], EXIT_OK


def cmd_morse(args):
    ctx = _ctx(args)
    A, B = parse_class(args.A, ctx, args.k), parse_class(args.B, ctx, args.k)
    rep = pos.morse_certificate(A, B, ctx, args.sample, substitute_eps=args.substitute_eps)
    lines = [
        f"A^{rep.dimension} - {rep.dimension}*A^{rep.dimension - 1}*B = {rep.difference.to_text()}",
        f"dominant: {rep.dominant.to_text()}",
        f"asymptotic verdict: {rep.asymptotic_verdict or 'undetermined'}",
    ]
    if rep.sample:
        lines.append(f"verdict at sample: {rep.verdict}")
    return rep.to_json(), lines, EXIT_OK


def cmd_final_argument(args):
    point = dict(args.sample or {})
    missing = {"r", "d"} - set(point)
    if missing:
        raise UsageError(f"--sample must give {', '.join(sorted(missing))}")
    x = point.pop("x", args.x)
    rep = pos.final_argument(args.n, point["r"], point["d"], x,
                             chi=point.get("chi", 2), ratio=args.ratio)
    lines = [
        f"n = {args.n}, level {args.n + 1}, x = {x}",
        f"dominant: {rep.morse.dominant.to_text()}",
        f"verdict at r={point['r']}, d={point['d']}, chi={point.get('chi', 2)}: "
        f"{rep.morse.verdict}",
        f"Schwarz weight (3^{args.n + 1} - 1)/2 = {rep.weight_sum}; "
        f"need ratio*{rep.weight_sum} < r/({args.n + 1}d) = {rep.schwarz_rhs}",
    ]
    if rep.schwarz_threshold is not None:
        lines.append(f"threshold {rep.schwarz_threshold}: "
                     f"{'satisfied' if rep.schwarz_ok else 'violated'}")
    lines.append(f"big: {rep.big}")
    return rep.to_json(), lines, EXIT_OK


def cmd_schwarz(args):
    weight = args.weight if args.weight is not None else pos.weight_sum(args.n)
    bound = pos.schwarz_min_lambda(weight, args.ratio)
    payload = {"total_weight": _frac(weight), "ratio": _frac(args.ratio),
               "min_deg_lambda": _frac(bound)}
    return payload, [f"deg(lambda) > {bound}"], EXIT_OK


def cmd_height(args):
    h = pos.height_bound(args.n, args.x, args.ratio)
    payload = {"n": args.n, "x": _frac(args.x), "ratio": _frac(args.ratio), "height_bound": _frac(h)}
    return payload, [f"height <= {h}"], EXIT_OK


def cmd_nef_cone(args):
    cb = pos.nef_cone_bounds(args.n, args.deg_lambda0, args.d0)
    return cb.to_json(), cb.describe(), EXIT_OK


def cmd_h0_bound(args):
    scales = args.scales or [1]
    vals = pos.h0_scan(args.deg_lambda, args.g, args.d, args.d0, args.deg_lambda0, args.n, scales)
    payload = {"scales": scales, "bounds": vals}
    return payload, [f"l={s}: h0 >= {v}" for s, v in zip(scales, vals)], EXIT_OK


def cmd_wronskian(args):
    det = wronskian_det(args.kappa)
    payload = {"kappa": args.kappa, "determinant": det.to_text(),
               "closed_form": wronskian_closed_form(args.kappa).to_text(), "equal": True,
               "pole_order_bounds": pole_order_bounds(args.kappa)}
    lines = []
    if args.expand:
        rows = wronskian_matrix(args.kappa)
        payload["matrix"] = [[p.to_text() for p in row] for row in rows]
        lines += ["[" + ", ".join(p.to_text() for p in row) + "]" for row in rows]
    lines.append(f"det = {det.to_text()}")
    return payload, lines, EXIT_OK


def cmd_commutator(args):
    P = parse_jet(args.p)
    A = [parse_jet(t) for t in (args.A or [])]
    ok = commutator_check(P, A, args.kappa)
    payload = {"P": P.to_text(), "A": [a.to_text() for a in A], "kappa": args.kappa, "holds": ok}
    return payload, [f"commutator identity {'holds' if ok else 'FAILS'}"], EXIT_OK


def cmd_appendix(args):
    rep = run_appendix(args.case)
    return rep.to_json(), rep.to_text().splitlines(), EXIT_OK if rep.ok else EXIT_MISMATCH


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    tower = _Parser(add_help=False)
    tower.add_argument("--n", type=int, required=True, help="fiber dimension")
    tower.add_argument("--k", type=int, required=True, help="tower level")

    root = _Parser(prog="jettower", description="Intersection numbers on jet towers.")
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, parents=(), **kw):
        p = sub.add_parser(name, parents=[common, *parents], **kw)
        p.set_defaults(func=fn)
        return p

    p = add("lnumbers", cmd_lnumbers, help="table of L_e^f")
    p.add_argument("--fmax", type=int, default=9)

    p = add("segre", cmd_segre, [tower], help="Segre classes of F_k")
    p.add_argument("--i", type=int, help="only this degree")

    p = add("intersect", cmd_intersect, [tower], help="top intersection of an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--pushforward", type=int, metavar="LEVEL",
                   help="push down to LEVEL instead of intersecting")

    p = add("morse", cmd_morse, [tower], help="A^D - D A^(D-1) B")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--sample", type=_sample)
    p.add_argument("--substitute-eps", action="store_true", help="eps -> r/((n+1)d)")

    p = add("final-argument", cmd_final_argument, help="bigness test on level n+1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_rational, default=Fraction(1))
    p.add_argument("--sample", type=_sample, required=True)
    p.add_argument("--ratio", type=_rational, help="chi_rho / deg rho")

    p = add("schwarz", cmd_schwarz, help="lower bound on deg(lambda)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--weight", type=_rational, help="total weight |m|")
    g.add_argument("--n", type=int, help="use (3^(n+1)-1)/2 as the weight")
    p.add_argument("--ratio", type=_rational, required=True)

    p = add("height", cmd_height, help="height bound for sections")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--ratio", type=_rational, required=True)

    p = add("nef-cone", cmd_nef_cone, help="nef and effective cone bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deg-lambda0", type=_rational, required=True)
    p.add_argument("--d0", type=_rational, required=True)

    p = add("h0-bound", cmd_h0_bound, help="Riemann-Roch lower bound")
    for name in ("--deg-lambda", "--g", "--d", "--d0", "--deg-lambda0", "--n"):
        p.add_argument(name, type=int, required=True)
    p.add_argument("--scales", type=_ints)

    p = add("wronskian", cmd_wronskian, help="the Wronskian identity")
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--expand", action="store_true", help="also print the matrix")

    p = add("commutator", cmd_commutator, help="the commutator identity")
    p.add_argument("--p", required=True, help="jet expression for P")
    p.add_argument("--A", action="append", help="coefficient A_i (repeatable)")
    p.add_argument("--kappa", type=int, required=True)

    p = add("appendix", cmd_appendix, help="recompute the appendix and diff")
    p.add_argument("--case", choices=CASES, required=True)
    return root


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        payload, lines, code = args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "json":
        print(json.dumps({"command": args.command, "result": payload}, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
