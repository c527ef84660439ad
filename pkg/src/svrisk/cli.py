"""Command-line front end.

Commands: eval, check, decompose, certify, link, demo.  Output is
deterministic for a fixed (arguments, seed) pair; every document is JSON with
rationals as 'p/q' strings.  Exit codes: 0 success / all laws pass, 1 law
violation, 2 input error, 3 degenerate regime.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fixtures
from .errors import (
    EmptyValue,
    NotInIntersection,
    OnlyOrthogonalSeparators,
    SubspaceNotFull,
    SvriskError,
)
from .geometry import convert_rep, sets_equal, upper_set_from_doc
from .laws import (
    ACCEPTANCE_LAWS,
    CORRESPONDENCE_DIRECTIONS,
    MEASURE_LAWS,
    SampleBudget,
    check_acceptance_law,
    check_correspondence,
    check_measure_law,
)
from .measures import (
    Shift,
    VaRStrong,
    VaRWeak,
    WorstCase,
    acceptance_from_doc,
    eval_acceptance,
    eval_measure,
    measure_from_doc,
    measure_to_doc,
)
from .rationals import fmt, rat
from .represent import (
    decompose,
    dual_certificate,
    reconstruct_check,
    star_link,
    validate_certificate,
)
from .scenario import Market, PortfolioVector, RandomVector, load_market, load_position

_DEGENERATE = (OnlyOrthogonalSeparators, SubspaceNotFull, EmptyValue, NotInIntersection)


def _emit(doc):
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _fail(kind: str, detail: str, code: int) -> int:
    _emit({"error": {"kind": kind, "detail": detail}})
    return code


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_market_arg(arg: str) -> Market:
    if arg in fixtures.MARKET_DOCS:
        return fixtures.market(arg)
    return load_market(_read_json(arg))


def _load_position_arg(arg: str, market: Market) -> RandomVector:
    if arg in fixtures.POSITION_DOCS:
        return load_position(fixtures.POSITION_DOCS[arg], market)
    return load_position(_read_json(arg), market)


def _position_loader(market: Market):
    def loader(ref: str) -> RandomVector:
        return _load_position_arg(ref, market)
    return loader


def _parse_measure_arg(arg: str, market: Market):
    """Shorthand ('wc', 'var-strong:1/4') or a measure-expression document."""
    if arg == "wc":
        return WorstCase()
    if arg.startswith("var-strong:"):
        return VaRStrong(rat(arg.split(":", 1)[1]))
    if arg.startswith("var-weak:"):
        return VaRWeak(rat(arg.split(":", 1)[1]))
    if arg.lstrip().startswith("{"):
        doc = json.loads(arg)
    else:
        doc = _read_json(arg)
    return measure_from_doc(doc, _position_loader(market))


def _parse_acceptance_arg(arg: str, market: Market):
    doc = json.loads(arg) if arg.lstrip().startswith("{") else _read_json(arg)
    return acceptance_from_doc(doc, _position_loader(market))


def _budget_from(args) -> SampleBudget:
    seed = args.seed if args.seed is not None else int(os.environ.get("SVRISK_SEED", "0"))
    count = args.budget if args.budget is not None else int(os.environ.get("SVRISK_BUDGET", "200"))
    return SampleBudget(count=count, seed=seed)


def _vertices_csv(value) -> str:
    lines = ["piece,kind,coord0,coord1"]
    for idx, piece in enumerate(value.pieces):
        v = convert_rep(piece)
        for vert in v.vertices:
            row = list(vert) + [Fraction(0)] * (2 - len(vert))
            lines.append(f"{idx},vertex,{fmt(row[0])},{fmt(row[1])}")
        for ray in v.rays:
            row = list(ray) + [Fraction(0)] * (2 - len(ray))
            lines.append(f"{idx},ray,{fmt(row[0])},{fmt(row[1])}")
    return "\n".join(lines) + "\n"


def parse_vertices_csv(text: str, recession):
    """Re-ingest a csv-vertices document as an upper set."""
    pieces: dict[int, dict] = {}
    keys = {"vertex": "vertices", "ray": "rays"}
    for line in text.strip().splitlines()[1:]:
        idx_s, kind, c0, c1 = line.split(",")
        entry = pieces.setdefault(int(idx_s), {"vertices": [], "rays": []})
        coords = [c0, c1][: recession.dim]
        entry[keys[kind]].append(coords)
    doc = {"pieces": [pieces[i] for i in sorted(pieces)]}
    return upper_set_from_doc(doc, recession)


def _format_value(value, fmt_kind: str, market: Market) -> int:
    if fmt_kind == "csv-vertices":
        if market.m > 2:
            return _fail("BadFormat", "csv-vertices requires m <= 2", 2)
        sys.stdout.write(_vertices_csv(value))
        return 0
    if fmt_kind == "text":
        if value.is_empty():
            sys.stdout.write("empty set\n")
        for idx, piece in enumerate(value.pieces):
            rows = "; ".join(str(h) for h in piece.halfspaces)
            sys.stdout.write(f"piece {idx}: {rows if rows else 'all of M'}\n")
        return 0
    _emit(value.to_doc())
    return 0


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    market = _load_market_arg(args.market)
    x = _load_position_arg(args.position, market)
    if args.measure is not None:
        expr = _parse_measure_arg(args.measure, market)
        value = eval_measure(market, expr, x)
    else:
        acc = _parse_acceptance_arg(args.acceptance, market)
        value = eval_acceptance(market, acc, x)
    return _format_value(value, args.format, market)


def _cmd_check(args) -> int:
    market = _load_market_arg(args.market)
    budget = _budget_from(args)
    reports = []
    for law in args.law:
        if law in MEASURE_LAWS:
            expr = _parse_measure_arg(args.measure, market)
            reports.append(check_measure_law(market, expr, law, budget))
        elif law in ACCEPTANCE_LAWS:
            acc = _parse_acceptance_arg(args.acceptance, market)
            reports.append(check_acceptance_law(market, acc, law, budget))
        elif law in CORRESPONDENCE_DIRECTIONS:
            if law == "R_eq_RAR":
                operand = _parse_measure_arg(args.measure, market)
            else:
                operand = _parse_acceptance_arg(args.acceptance, market)
            reports.append(check_correspondence(market, operand, law, budget))
        else:
            return _fail("UnknownLaw", f"unknown law {law!r}", 2)
    all_pass = all(r.passed for r in reports)
    _emit({"reports": [r.to_doc() for r in reports], "all_pass": all_pass})
    return 0 if all_pass else 1


def _cmd_decompose(args) -> int:
    market = _load_market_arg(args.market)
    x = _load_position_arg(args.position, market)
    expr = _parse_measure_arg(args.measure, market)
    budget = _budget_from(args)
    extra = SampleBudget(count=args.extra_anchors, seed=budget.seed) \
        if args.extra_anchors else None
    family = decompose(market, expr, args.theorem, x, extra=extra)
    report = reconstruct_check(market, expr, family, x, budget)
    doc = family.to_doc()
    doc["reconstruction"] = report.to_doc()
    doc["member_values"] = [
        eval_acceptance(market, member, x).to_doc(with_vrep=False)
        for member in family.members
    ]
    _emit(doc)
    return 0 if report.passed else 1


def _cmd_certify(args) -> int:
    market = _load_market_arg(args.market)
    y_vec = _load_position_arg(args.position, market)
    u = PortfolioVector.of(args.point.split(","))
    cert = dual_certificate(market, y_vec, u)
    if cert is None:
        _emit({"certificate": None, "reason": "point lies in the worst-case value"})
        return 0
    ok = validate_certificate(market, y_vec, cert)
    doc = cert.to_doc()
    doc["valid"] = ok
    _emit({"certificate": doc})
    return 0 if ok else 1


def _cmd_link(args) -> int:
    market = _load_market_arg(args.market)
    y = _load_position_arg(args.y, market)
    members_doc = json.loads(args.members) if args.members.lstrip().startswith("[") \
        else _read_json(args.members)
    loader = _position_loader(market)
    members = [acceptance_from_doc(d, loader) for d in members_doc]
    budget = _budget_from(args)
    expr, report = star_link(market, members, y, budget)
    _emit({"measure": measure_to_doc(expr), "report": report.to_doc()})
    return 0 if report.passed else 1


def _demo_remark52(budget: SampleBudget) -> tuple[dict, bool]:
    """The base set B = (1,1) + K is nonempty but misses M entirely."""
    from .measures import DominanceAt, accepts
    market = fixtures.market("mkt-a")
    z = RandomVector.constant(market.n, ["1", "1"])
    member = DominanceAt(z)
    b_nonempty = accepts(market, member, z)
    r_b_at_zero = eval_acceptance(market, member, market.zero_position())
    b_meets_m = not r_b_at_zero.is_empty()
    # translation by Y = (1,1) still produces a star-shaped measure
    expr, report = star_link(market, [member], z, budget)
    expected = b_nonempty and not b_meets_m and report.passed
    doc = {
        "fixture": "remark52",
        "B_nonempty": b_nonempty,
        "B_meets_M": b_meets_m,
        "translate_star_report": report.to_doc(),
        "matches_expected": expected,
    }
    return doc, expected


def _demo_example51(budget: SampleBudget) -> tuple[dict, bool]:
    """Shifting worst case into the cone interior breaks star-shapedness;
    shifting back restores it."""
    market = fixtures.market("mkt-a")
    c = PortfolioVector.of(["1", "0"])  # strictly inside K cap M
    minus_c = PortfolioVector.of(["-1", "0"])
    shifted = Shift(WorstCase(), minus_c)   # value sets become WC(X) + c
    r6 = check_measure_law(market, shifted, "R6", budget)
    restored = Shift(shifted, c)
    r6_back = check_measure_law(market, restored, "R6", budget)
    r4_back = check_measure_law(market, restored, "R4", budget)
    expected = (not r6.passed) and r6.witness is not None \
        and r6_back.passed and r4_back.passed
    doc = {
        "fixture": "example51",
        "shifted_R6": r6.to_doc(),
        "restored_R6": r6_back.to_doc(),
        "restored_R4": r4_back.to_doc(),
        "matches_expected": expected,
    }
    return doc, expected


def _demo_var_fixture(budget: SampleBudget) -> tuple[dict, bool]:
    """The documented two-piece V@R value and its convexity failure."""
    from .geometry import Polyhedron, hs, upper_set
    market = fixtures.market("mkt-b")
    x = fixtures.position("var-fixture")
    expr = VaRStrong(Fraction(1, 4))
    value = eval_measure(market, expr, x)
    expected_value = upper_set(2, (
        Polyhedron(2, (hs([1, 0], 2), hs([0, 1], 1))),
        Polyhedron(2, (hs([1, 0], 1), hs([0, 1], 4))),
    ), market.cone_in_m)
    pieces_match = sets_equal(value, expected_value)
    r4 = check_measure_law(market, expr, "R4", budget)
    expected = pieces_match and not r4.passed and r4.witness is not None
    doc = {
        "fixture": "var_fixture",
        "value": value.to_doc(with_vrep=False),
        "value_matches_expected": pieces_match,
        "R4": r4.to_doc(),
        "matches_expected": expected,
    }
    return doc, expected


_DEMOS = {
    "remark52": _demo_remark52,
    "example51": _demo_example51,
    "var_fixture": _demo_var_fixture,
}


def _cmd_demo(args) -> int:
    budget = _budget_from(args)
    doc, ok = _DEMOS[args.name](budget)
    _emit(doc)
    if args.name == "remark52":
        sys.stdout.write("B != empty, B cap M = empty\n"
                         if doc["B_nonempty"] and not doc["B_meets_M"]
                         else "unexpected fixture behaviour\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svrisk",
        description="Exact set-valued risk measures on finite scenario spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, position=True):
        p.add_argument("--market", required=True,
                       help="market document path or built-in name (mkt-a, mkt-b, mkt-1d)")
        if position:
            p.add_argument("--position", required=True,
                           help="position document path or built-in name")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("eval", help="evaluate a measure or acceptance expression")
    common(p)
    p.add_argument("--measure", help="shorthand or measure document")
    p.add_argument("--acceptance", help="acceptance document (instead of --measure)")
    p.add_argument("--format", choices=("structured", "text", "csv-vertices"),
                   default="structured")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("check", help="run law checks")
    common(p, position=False)
    p.add_argument("--law", action="append", required=True,
                   help="law id (repeatable): R1..R6, A1_translate..A6equiv, "
                        "R_eq_RAR, A_eq_ARA, transfer, ...")
    p.add_argument("--measure")
    p.add_argument("--acceptance")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decompose", help="build and verify a decomposition family")
    common(p)
    p.add_argument("--measure", required=True)
    p.add_argument("--theorem", choices=("monetary", "star_normalized", "coherent"),
                   required=True)
    p.add_argument("--extra-anchors", type=int, default=0)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("certify", help="dual certificate for an excluded portfolio")
    common(p)
    p.add_argument("--point", required=True, help="portfolio coords, e.g. '0,0'")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("link", help="translate a family union into a star-shaped measure")
    common(p, position=False)
    p.add_argument("--members", required=True,
                   help="JSON list of acceptance documents (inline or path)")
    p.add_argument("--y", required=True, help="base position document")
    p.set_defaults(func=_cmd_link)

    p = sub.add_parser("demo", help="run a named fixture with expected-output comparison")
    p.add_argument("name", choices=sorted(_DEMOS))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DEGENERATE as exc:
        return _fail(type(exc).__name__, str(exc), 3)
    except SvriskError as exc:
        return _fail(type(exc).__name__, str(exc), 2)
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        return _fail(type(exc).__name__, str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
