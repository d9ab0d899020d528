"""Command-line interface.

Exit status: 0 success, 1 domain or hypothesis error, 2 usage error,
3 a comparison that stayed undecided at maximum precision.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import __version__
from .errors import DomainError, UndecidedError
from .numerics import precision_context

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _big_int(text: str) -> int:
    from .campaign.config import _parse_int

    try:
        return _parse_int(text)
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the same flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision-bits", type=int, default=argparse.SUPPRESS,
                   help="starting precision of guarded comparisons (default 128)")
    p.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="campaign worker processes")
    p.add_argument("--checkpoint", default=argparse.SUPPRESS, help="campaign checkpoint path")
    p.add_argument("--out", default=argparse.SUPPRESS, help="campaign JSONL output path")
    p.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    return p


# -- handlers -----------------------------------------------------------------


def _cmd_verify(args) -> int:
    from .tuples import verify_tuple

    res = verify_tuple(args.elements, args.n)
    if not res:
        x, y = res.failing_pair
        print(f"not a D({args.n})-tuple: {x}*{y}{args.n:+d} = {x * y + args.n} is not a square")
        return EXIT_OK
    print(f"D({args.n})-tuple {sorted(args.elements)}")
    for (x, y), r in sorted(res.witnesses.items()):
        print(f"  {x}*{y}{args.n:+d} = {r}^2")
    return EXIT_OK


def _cmd_extend(args) -> int:
    from .tuples import TripleContext, d_minus, d_plus

    ctx = TripleContext.of(*args.triple)
    print(f"triple ({ctx.a}, {ctx.b}, {ctx.c})  r={ctx.r} s={ctx.s} t={ctx.t}")
    print(f"d+ = {d_plus(ctx)}")
    print(f"d- = {d_minus(ctx)}")
    return EXIT_OK


def _cmd_classify(args) -> int:
    from .tuples import classify_quadruple

    print(classify_quadruple(*args.quadruple).value)
    return EXIT_OK


def _cmd_pell_solve(args) -> int:
    from .numerics import is_perfect_square
    from .pell import PellProblem, fundamental_unit, solution_classes, solve_square_D

    k = is_perfect_square(args.D)
    if k is not None:
        for x, y in solve_square_D(k, args.N):
            print(f"x={x} y={y}")
        return EXIT_OK
    p = PellProblem(args.D, args.N)
    u = fundamental_unit(args.D)
    print(f"fundamental unit x1={u.x1} y1={u.y1}")
    classes = solution_classes(p)
    if not classes:
        print("no solutions")
    for cls in classes:
        print(f"class x0={cls.x0} y0={cls.y0}")
    return EXIT_OK


def _cmd_pell_enumerate(args) -> int:
    from .pell import PellProblem, enumerate_solutions

    for x, y in enumerate_solutions(PellProblem(args.D, args.N), args.y_max):
        print(f"x={x} y={y}")
    return EXIT_OK


def _cmd_intersect(args) -> int:
    from .sequences import find_intersections

    rows = find_intersections(*args.triple, args.m_max, args.n_max)
    if not rows:
        print("no intersections")
    for m, n, z, d in rows:
        print(f"m={m} n={n} z={z} d={d}")
    return EXIT_OK


def _cmd_bounds_eval(args) -> int:
    from .bounds.registry import IneqId, entry, holds

    ineq = entry(IneqId.parse(args.ineq_id), args.variant)
    from .numerics import get_start_precision

    prec = get_start_precision()
    lhs, rhs = ineq.lhs(args.x, args.k, prec), ineq.rhs(args.x, args.k, prec)
    print(f"{ineq.ident} at {ineq.variable}={args.x}, k={args.k}")
    print(f"  lhs = {lhs!r}")
    print(f"  rhs = {rhs!r}")
    print(f"  holds = {holds(ineq, args.x, args.k)}")
    return EXIT_OK


def _cmd_bounds_max(args) -> int:
    from .bounds.registry import IneqId, max_a2_satisfying

    print(max_a2_satisfying(IneqId.parse(args.ineq_id), args.k, {"variant": args.variant}))
    return EXIT_OK


def _cmd_bounds_iterate(args) -> int:
    from .bounds.registry import IneqId, iterate_a2_bound

    seq = iterate_a2_bound(IneqId.parse(args.ineq_id), args.variant)
    print(" ".join(str(v) for v in seq))
    print(f"fixpoint {seq[-1]} after {len(seq) - 1} refinements")
    return EXIT_OK


def _cmd_bounds_mbound(args) -> int:
    from .bounds.analyses import d_bound_chain, solve_m_bound

    res = solve_m_bound()
    v_exp, _ = d_bound_chain(res.m_max, res.c_log10_max)
    print(f"m_max = {res.m_max}")
    print(f"c < 10^{res.c_log10_max}")
    print(f"v_m < 10^(10^{v_exp})")
    print(f"d < 10^(10^{res.d_log10_log10})")
    return EXIT_OK


def _cmd_bounds_analyses(args) -> int:
    from mpmath import nstr

    from .bounds.analyses import analysis_a2_001, analysis_a2_00251, analysis_b_vs_a2

    for name, a in (("a2 <= 0.01 a1^2", analysis_a2_001()),
                    ("a2 <= 0.0251 a1^2", analysis_a2_00251()),
                    ("a2 <= 0.0251 a1^2 (printed exponent)", analysis_a2_00251("printed"))):
        print(f"{name}: a1 in [{a.a1_min}, {a.a1_max}], c < {nstr(a.c_max.hi, 6)}, "
              f"b < {nstr(a.b_ceiling_coeff, 5)} a1^(-2/3); case b < a1^2 forces b <= {a.case2_b_max}")
    s6 = analysis_b_vs_a2()
    print(f"b >= a2^2, a1 <= 159: b <= {s6.small_a1_b_max}, a2 <= {s6.small_a1_a2_max}")
    print(f"b >= k a2^2, a1 >= 160: k=3 gives a2 <= {s6.large_a1_k3_a2_max}, "
          f"k=1 gives a2 <= {s6.large_a1_k1_a2_max}, so b < {s6.b_ceiling}")
    return EXIT_OK


def _campaign_config(args):
    """Config from --config and/or flags; explicit flags override the file."""
    from .campaign.config import (BCeilingRule, CampaignConfig, CWindowRule, PairRule,
                                  _parse_int, _parse_pairs, load_config)

    source = None
    if args.pairs:
        source = _parse_pairs(args.pairs)
    elif args.a2_max is not None:
        source = PairRule(args.a2_max, ratio_max=args.ratio_max, ratio_min=args.ratio_min)
    kw = {}
    if args.b_ceiling_rule:
        rule, _, val = args.b_ceiling_rule.partition(":")
        kw["b_ceiling_rule"] = BCeilingRule(rule)
        if val:
            kw["b_ceiling_value"] = _parse_int(val)
    if args.c_window_rule:
        rule, _, val = args.c_window_rule.partition(":")
        kw["c_window_rule"] = CWindowRule(rule)
        if val:
            lo, _, hi = val.partition(",")
            kw["c_window"] = (_parse_int(lo), _parse_int(hi))
    if args.b_floor is not None:
        kw["b_floor"] = args.b_floor
    if args.b_cap is not None:
        kw["b_ceiling_cap"] = args.b_cap
    kw["worker_count"] = getattr(args, "workers", None)
    kw["checkpoint_path"] = getattr(args, "checkpoint", None)
    kw["output_path"] = getattr(args, "out", None)

    if args.config:
        return load_config(args.config).with_overrides(pair_source=source, **kw)
    if source is None:
        raise DomainError("give --config, --pairs or --a2-max")
    return CampaignConfig(pair_source=source, **{k: v for k, v in kw.items() if v is not None})


def _print_report(report, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(report.render())


def _cmd_campaign_run(args) -> int:
    from .campaign.runner import run_campaign

    report = run_campaign(_campaign_config(args), stop_after=args.stop_after, resume=False)
    _print_report(report, args.json)
    return EXIT_OK


def _cmd_campaign_resume(args) -> int:
    from pathlib import Path

    from .campaign.runner import run_campaign

    cfg = _campaign_config(args)
    if not cfg.checkpoint_path or not Path(cfg.checkpoint_path).exists():
        raise DomainError("resume needs an existing checkpoint (--checkpoint)")
    report = run_campaign(cfg, stop_after=args.stop_after, resume=True)
    _print_report(report, args.json)
    return EXIT_OK


def _cmd_campaign_report(args) -> int:
    from .campaign.runner import campaign_report

    _print_report(campaign_report(_campaign_config(args)), args.json)
    return EXIT_OK


def _cmd_a1(args) -> int:
    from .campaign.a1_lemma import analysis_a1_details, analysis_a1_small_j, four_pair_solutions

    for j, b, inside in analysis_a1_small_j():
        print(f"j={j} b={b}: c values in (0.25 b^3, 2.25 b^3): {inside or 'none'}")
    ok = True
    for v in analysis_a1_details(args.j_max):
        ok &= v.contradiction
        print(f"j={v.j} k={v.k} 4(c - 2.25 b^3) = {v.excess} identity={'ok' if v.identity_ok else 'FAIL'}")
    r = four_pair_solutions()
    print(f"(2 r1)^2 - r2^2 = 12: {r}")
    return EXIT_OK if ok else EXIT_DOMAIN


# -- parser -------------------------------------------------------------------


def _campaign_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--pairs", help="explicit pairs, e.g. 2/5,3/7")
    p.add_argument("--a2-max", type=int, help="pair rule: a2 <= A")
    p.add_argument("--ratio-max", type=_fraction, help="pair rule: a2 <= ratio * a1")
    p.add_argument("--ratio-min", type=_fraction, help="pair rule: a2 > ratio * a1")
    p.add_argument("--b-floor", type=_big_int)
    p.add_argument("--b-ceiling-rule", help="lemma31 | fixed:<int> | per-pair-from-ineq")
    p.add_argument("--b-cap", type=_big_int, help="absolute b ceiling cap")
    p.add_argument("--c-window-rule", help="standard | case1 | explicit:<lo>,<hi> | none")
    p.add_argument("--stop-after", type=int, help="stop after this many pairs (interrupt simulation)")
    p.add_argument("--json", action="store_true", help="print the report as JSON")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="d4ext", parents=[common],
                                     description="D(4)-quadruple extension toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subs, name, func, **kw):
        p = subs.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    p = leaf(sub, "verify", _cmd_verify, help="check a D(n)-tuple")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("elements", nargs="+", type=_big_int)

    p = leaf(sub, "extend", _cmd_extend, help="d+ and d- of a D(4)-triple")
    p.add_argument("triple", nargs=3, type=_big_int)

    p = leaf(sub, "classify", _cmd_classify, help="regular or irregular D(4)-quadruple")
    p.add_argument("quadruple", nargs=4, type=_big_int)

    pell = sub.add_parser("pell", help="generalized Pell equations").add_subparsers(dest="pell_cmd", required=True)
    for name, func in (("solve", _cmd_pell_solve), ("enumerate", _cmd_pell_enumerate)):
        p = leaf(pell, name, func)
        p.add_argument("--D", type=_big_int, required=True)
        p.add_argument("--N", type=_big_int, required=True)
        if name == "enumerate":
            p.add_argument("--y-max", type=_big_int, required=True)

    seq = sub.add_parser("sequences", help="v/w recurrences").add_subparsers(dest="seq_cmd", required=True)
    p = leaf(seq, "intersect", _cmd_intersect)
    p.add_argument("triple", nargs=3, type=_big_int)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--n-max", type=int, default=4)

    bounds = sub.add_parser("bounds", help="bound inequalities").add_subparsers(dest="bounds_cmd", required=True)
    p = leaf(bounds, "eval", _cmd_bounds_eval, help="evaluate one inequality")
    p.add_argument("ineq_id")
    p.add_argument("--k", type=_fraction, default=Fraction(1))
    p.add_argument("--a2", "--x", dest="x", type=_big_int, required=True,
                   help="value of the inequality's variable")
    p.add_argument("--variant", choices=("derived", "printed"), default="derived")
    p = leaf(bounds, "max", _cmd_bounds_max, help="largest value where an inequality holds")
    p.add_argument("ineq_id")
    p.add_argument("--k", type=_fraction, default=Fraction(1))
    p.add_argument("--variant", choices=("derived", "printed"), default="derived")
    p = leaf(bounds, "iterate", _cmd_bounds_iterate, help="k-refinement sequence")
    p.add_argument("ineq_id")
    p.add_argument("--variant", choices=("derived", "printed"), default="derived")
    leaf(bounds, "m-bound", _cmd_bounds_mbound, help="bounds for m, c and d")
    leaf(bounds, "analyses", _cmd_bounds_analyses, help="case analyses on a1, b and c")

    camp = sub.add_parser("campaign", help="pair searches").add_subparsers(dest="camp_cmd", required=True)
    for name, func in (("run", _cmd_campaign_run), ("resume", _cmd_campaign_resume),
                       ("report", _cmd_campaign_report)):
        _campaign_args(leaf(camp, name, func))

    ana = sub.add_parser("analysis", help="exact analyses").add_subparsers(dest="ana_cmd", required=True)
    p = leaf(ana, "a1-eq-1", _cmd_a1, help="a1 = 1 with a2 in {3, 4}")
    p.add_argument("--j-max", type=int, default=30)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    bits = getattr(args, "precision_bits", None)
    try:
        if bits is not None:
            with precision_context(bits):
                return args.func(args)
        return args.func(args)
    except UndecidedError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        # enum lookups on bad option values
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
