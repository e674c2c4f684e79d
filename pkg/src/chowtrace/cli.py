"""``chowtrace`` command line.

Exit codes: 0 success, 1 usage error, 2 mathematical-contract violation,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, rostnum, schubert, steenrod
from .catalog import UnknownVariety, UnsupportedCombination
from .charclass import DimensionUnderflow
from .exactalg import NotDivisible
from .rootweyl import BoundExceeded, ParabolicQuotient, UnknownType, build_root_system, parse_group, poincare_polynomial
from .specfile import ConfluenceFailure, SpecError, load_spec

USAGE, CONTRACT, BOUND = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def resolve_variety(text: str):
    if text.endswith(".toml") or Path(text).is_file():
        return load_spec(text)
    return catalog.builtin(text)


def _marked(text: str) -> list[int]:
    try:
        return [int(t) for t in str(text).split(",") if t]
    except ValueError as exc:
        raise UsageError(f"bad parabolic {text!r}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_eta(args) -> dict:
    v = resolve_variety(args.variety)
    res = rostnum.rost_number_full(v, args.prime)
    return {
        "variety": v.name,
        "prime": args.prime,
        "eta_integer": res.eta_integer,
        "eta_mod_p": res.eta_mod_p,
        "pre_division": res.pre_division,
        "paths_agree": res.paths_agree,
    }


def cmd_poincare(args):
    try:
        rs = build_root_system(*parse_group(args.group))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return poincare_polynomial(ParabolicQuotient(rs, _marked(args.parabolic)))


def cmd_degree(args) -> dict:
    A = schubert.gp_algebra(args.group, _marked(args.parabolic))
    out = schubert.degree_of_divisor_power(A, args.power, args.node)
    return {
        "variety": A.provenance["quotient"].label,
        "power": args.power,
        "degree": int(out["degree"]),
        "cross_checked": bool(out["cross_checked"]),
    }


def cmd_check_special(args) -> dict:
    v = resolve_variety(args.variety)
    return rostnum.screen_special_correspondence(v, args.prime).to_dict()


def cmd_steenrod(args) -> dict:
    v = resolve_variety(args.variety)
    if not v.intrinsic:
        raise UsageError("Steenrod tables need an intrinsic Chow ring")
    if not args.solve:
        A = v.ring.mod(args.prime)
        gens = steenrod.GeneratorData(A)
        return {"variety": v.name, "prime": args.prime, "generators": gens.generators, "codims": gens.codims}
    T = steenrod.solve_for_variety(v, args.prime, use_wu=not args.no_wu, bound=args.bound)
    rep = steenrod.s2_report(T)
    rep["variety"] = v.name
    rep["wu_constraint"] = not args.no_wu
    if args.tables:
        rep["tables"] = [t.to_dict() for t in steenrod.family_of(T)]
    return rep


def cmd_chern(args) -> dict:
    v = resolve_variety(args.variety)
    c = catalog.chern_total(v)
    from .exactalg import format_element

    return {
        "variety": v.name,
        "dim": v.dim,
        "chern": format_element(c),
        "euler_characteristic": v.euler_characteristic(),
    }


def cmd_paper_suite(args):
    from .suite import run_suite

    rows = run_suite()
    return {"checks": rows, "all_pass": all(r["pass"] for r in rows)}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="chowtrace", description="Rost numbers, Chow traces, Schubert data and Steenrod actions.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eta", help="Rost number by both paths")
    p.add_argument("--variety", required=True, help="builtin name or path to a .toml description")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("poincare", help="Chow ranks of G/P by codimension")
    p.add_argument("--group", required=True)
    p.add_argument("--parabolic", required=True, help="marked nodes, e.g. 4 or 1,2")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("degree", help="degree of a power of a Schubert divisor")
    p.add_argument("--group", required=True)
    p.add_argument("--parabolic", required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--node", type=int, default=None)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("check-special", help="necessary conditions for a special correspondence")
    p.add_argument("--variety", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_check_special)

    p = sub.add_parser("steenrod", help="reduced power action on Ch(X)/p")
    p.add_argument("--variety", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--solve", action="store_true")
    p.add_argument("--no-wu", action="store_true", help="drop the Wu constraint from the solver")
    p.add_argument("--tables", action="store_true", help="include every admissible table")
    p.add_argument("--bound", type=int, default=100_000)
    p.set_defaults(func=cmd_steenrod)

    p = sub.add_parser("chern", help="total Chern class of the tangent bundle")
    p.add_argument("--variety", required=True)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("paper-suite", help="replay every reference computation")
    p.set_defaults(func=cmd_paper_suite)
    return ap


CONTRACT_ERRORS = (
    rostnum.NotDivisibleByP,
    rostnum.PathDisagreement,
    steenrod.UnsolvableSteenrod,
    steenrod.NotInGeneratedSubring,
    schubert.IntegralityFailure,
    schubert.NotInPullbackImage,
    schubert.DivisionFailure,
    NotDivisible,
    ConfluenceFailure,
)
USAGE_ERRORS = (UsageError, rostnum.DimensionNotDivisible, UnknownVariety, UnsupportedCombination, UnknownType, SpecError, DimensionUnderflow, FileNotFoundError)
BOUND_ERRORS = (steenrod.SearchBoundExceeded, BoundExceeded)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except CONTRACT_ERRORS as exc:
        print(dump({"error": type(exc).__name__, "message": str(exc)}))
        return CONTRACT
    except BOUND_ERRORS as exc:
        print(dump({"error": type(exc).__name__, "message": str(exc)}))
        return BOUND
    except USAGE_ERRORS as exc:
        print(f"chowtrace: error: {exc}", file=sys.stderr)
        return USAGE
    print(dump(out))
    if args.command == "paper-suite" and not out["all_pass"]:
        return CONTRACT
    return 0


if __name__ == "__main__":
    sys.exit(main())
