"""``dfc`` command line.

Exit codes: 0 success, 1 usage error or invalid input, 2 no operator within
the degree caps, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import (ProblemShape, SingularityProfile, bound_table, default_cost, thm3_degree,
                     thm5_degree)
from .compose import (InvalidInstance, LiftInconsistency, minimal_annihilator,
                      minimal_degree_at_order, operator_at, order_degree_scan, validate_inputs)
from .diffop import DiffOp
from .instance import (InstanceFile, bipoly_to_json, operator_from_json, operator_to_json,
                       parse_rat, random_instance, rat_str)
from .oracle import InadmissiblePoint, admissible_points, verify_annihilation

EXIT_OK, EXIT_USAGE, EXIT_NONE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _range(text: str) -> list[int]:
    """``"9"`` or ``"10..12"``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"malformed range {text!r}") from None


def _profile(text: str) -> SingularityProfile:
    """``"degM,ordM,deg:cost,..."``."""
    try:
        parts = text.split(",")
        factors = [tuple(int(v) for v in f.split(":")) for f in parts[2:] if f]
        if any(len(f) != 2 for f in factors):
            raise ValueError
        return SingularityProfile(int(parts[0]), int(parts[1]), tuple(factors))
    except (ValueError, IndexError):
        raise UsageError(f"malformed profile {text!r}; expected degM,ordM,deg:cost,...") from None


def _shape(args, required: bool) -> Optional[ProblemShape]:
    vals = [args.rL, args.dL, args.rP, args.dP]
    if all(v is None for v in vals) and not required:
        return None
    if any(v is None for v in vals):
        raise UsageError("--rL, --dL, --rP and --dP must be given together")
    try:
        return ProblemShape(*vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_shape(p: argparse.ArgumentParser):
    for flag in ("--rL", "--dL", "--rP", "--dP"):
        p.add_argument(flag, type=int)


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_instance(path: str) -> InstanceFile:
    try:
        return InstanceFile.from_json(_read_json(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed instance {path}: {exc}") from None


def _load_operator(obj: dict) -> DiffOp:
    if "operator" in obj:
        obj = obj["operator"]
    return operator_from_json(obj)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _cell(v) -> str:
    return "-" if v is None else str(v)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    shape = _shape(args, required=False)
    profile = _profile(args.profile) if args.profile else None
    if shape is None and profile is None:
        raise UsageError("give a shape (--rL --dL --rP --dP) or --profile")
    if args.r is None:
        raise UsageError("--r is required")
    delta = parse_rat(args.delta) if args.delta is not None else None
    rows = bound_table(shape, _range(args.r), profile, delta, args.cost)
    cols = ["r", "thm2", "thm3", "conjecture"]
    if profile is not None:
        cols.append("thm9")
    if delta is not None:
        cols.append("thm5")
    print("\t".join(cols))
    for row in rows:
        print("\t".join(_cell(getattr(row, c)) for c in cols))
    return EXIT_OK


def _report_points(M: DiffOp, inst: InstanceFile, count: int = 2) -> list:
    return [verify_annihilation(M, inst.L, inst.P, a) for a in admissible_points(inst.L, inst.P, count)]


def cmd_compose(args) -> int:
    inst = _load_instance(args.instance)
    ctx = validate_inputs(inst.L, inst.P)
    if args.degree is not None and args.order is None:
        raise UsageError("--degree needs --order")
    if args.order is None or args.minimal:
        M, r, d = minimal_annihilator(ctx)
    else:
        r = args.order
        if args.degree is not None:
            d = args.degree
            M = operator_at(ctx, r, d)
        else:
            cap = args.cap if args.cap is not None else thm3_degree(ctx.shape, ctx.shape.order)
            pt = minimal_degree_at_order(ctx, r, cap)
            M, d = (pt.witness, pt.d) if pt is not None else (None, None)
        if M is None:
            _emit({"status": "none", "order": r, "degree": d})
            return EXIT_NONE
    reports = _report_points(M, inst)
    _emit({"status": "ok" if all(rep.passed for rep in reports) else "fail",
           "order": M.order, "degree": M.x_degree, "operator": operator_to_json(M),
           "verification": [rep.to_dict() for rep in reports]})
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_VERIFY


def cmd_curve(args) -> int:
    inst = _load_instance(args.instance)
    ctx = validate_inputs(inst.L, inst.P)
    rs = _range(args.r)
    print("r\td")
    if not rs:
        return EXIT_OK
    cap = args.cap if args.cap is not None else thm3_degree(ctx.shape, ctx.shape.order)
    for pt in order_degree_scan(ctx, rs[0], rs[-1], cap, witness=False):
        print(f"{pt.r}\t{_cell(pt.d)}")
    return EXIT_OK


def cmd_singular(args) -> int:
    from .singular import (INFINITY, branch_data_at_infinity, delta_for_thm5,
                           operator_newton_height, removability_profile,
                           resultant_multiplicity_diagnostic)

    obj = _read_json(args.file)
    inst = None
    try:
        if "L" in obj and "P" in obj:
            inst = InstanceFile.from_json(obj)
            ctx = validate_inputs(inst.L, inst.P)
            M, _, _ = minimal_annihilator(ctx)
        else:
            M = _load_operator(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed input {args.file}: {exc}") from None
    if M.is_zero():
        raise UsageError("zero operator")
    report = removability_profile(M, args.nmax, args.dcap)
    heights = {"infinity": str(operator_newton_height(M, INFINITY)[1])}
    for a in args.alpha or []:
        heights[rat_str(parse_rat(a))] = str(operator_newton_height(M, parse_rat(a))[1])
    out = {"operator": operator_to_json(M), "order": M.order, "degree": M.x_degree,
           "removability": report.to_dict(), "heights": heights}
    if inst is not None:
        data = branch_data_at_infinity(inst.P)
        out["branches"] = [{"beta": e.describe(), "rho": rat_str(e.rho), "multiplicity": e.multiplicity}
                           for e in data.entries]
        out["lemma6"] = [{"factor": f.factor.to_str(), "multiplicity": f.multiplicity,
                          "squarefree_degree": f.squarefree_degree, "bound": f.bound}
                         for f in resultant_multiplicity_diagnostic(inst.P)]
        delta = delta_for_thm5(inst.L, inst.P)
        c = default_cost(inst.shape)
        first = M.order + c - 1
        out["thm5"] = {"delta": delta, "cost": c, "deg_x_M": M.x_degree, "ord_M": M.order,
                       "curve": [{"r": r, "d": thm5_degree(delta, M.x_degree, M.order, c, r)}
                                 for r in range(first, first + 4)]}
    _emit(out)
    return EXIT_OK


def cmd_random(args) -> int:
    shape = _shape(args, required=True)
    try:
        inst = random_instance(shape, args.seed, args.height)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = inst.dumps()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    M = _load_operator(_read_json(args.operator))
    inst = _load_instance(args.instance)
    alpha = parse_rat(args.alpha) if args.alpha is not None else Fraction(0)
    rep = verify_annihilation(M, inst.L, inst.P, alpha, args.order_N)
    _emit(rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dfc", description="Annihilating operators for compositions f(g(x)).")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("bounds", help="evaluate the order-degree bounds")
    _add_shape(p)
    p.add_argument("--r", help="order or range a..b")
    p.add_argument("--profile", help="degM,ordM,deg:cost,... for the singularity curve")
    p.add_argument("--delta", help="delta for the singularity-aware curve")
    p.add_argument("--cost", type=int, help="removal cost (default from the shape)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("compose", help="compute an annihilating operator")
    p.add_argument("instance")
    p.add_argument("--order", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("curve", help="minimal degree per order as TSV")
    p.add_argument("instance")
    p.add_argument("--r", required=True)
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("singular", help="singularity analysis of an operator or instance")
    p.add_argument("file")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--dcap", type=int)
    p.add_argument("--alpha", action="append", help="extra point for Newton heights")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("random", help="random valid instance")
    _add_shape(p)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--height", type=int, default=3)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="check an operator with the series oracle")
    p.add_argument("operator")
    p.add_argument("instance")
    p.add_argument("--alpha")
    p.add_argument("--order-N", dest="order_N", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInstance as exc:
        print(f"invalid instance ({exc.kind}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InadmissiblePoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LiftInconsistency as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
