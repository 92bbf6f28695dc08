"""momentcut: one executable over the exact polytope engine.

Subcommands: validate, info, diff, reduce, cut, compactify, blowup,
add-fixed-points, reverse, dh, wall-check, local-model.  Polytopes travel
as JSON files (or stdin/stdout with "-"), every report is a single JSON
document on stdout, and all numeric payloads are rational strings except
the local-model reports, which are floats with stated tolerances.

Exit codes: 0 success, 1 input or validation error, 2 precondition
violation, 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import batteries
from .dh import (
    check_log_concavity,
    critical_values,
    dh_profile,
    find_strict_local_minima,
    wall_crossing_check,
)
from .errors import InputError, InternalError, MomentcutError, PreconditionError
from .lattice import format_rational, parse_rational
from .localmodel import (
    NeighborhoodSpec,
    bad_annulus_region,
    cut_tameness_identity,
    default_spec,
    level_membership,
    n_pm,
    orbital_convexity_probe,
    parse_weights,
    psh_criterion,
    psh_test_family,
    solve_time_to_level,
)
from .ops import (
    BlowupParams,
    CutSide,
    add_fixed_points,
    blowup,
    compactify,
    cut,
    fresh_ledger,
    reduce_at,
    reversed_polytope,
)
from .polytope import (
    LabeledPolytope,
    canonical_equal,
    dumps as dump_polytope,
    from_json_dict,
    to_json_dict,
    validate,
    vertices,
)
from .toric import (
    circle_stabilizer_order,
    classify_vertex,
    fixed_components,
    weights_at_vertex,
)


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    payload: dict


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_polytope(path: str) -> LabeledPolytope:
    try:
        obj = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from None
    if isinstance(obj, dict) and "polytope" in obj:
        obj = obj["polytope"]
    return from_json_dict(obj)


def _write_polytope(P: LabeledPolytope, path: Optional[str]) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_polytope(P))


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def build_parser() -> _Parser:
    p = _Parser(prog="momentcut", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def add_io(sp, out=True):
        sp.add_argument("--in", dest="infile", default="-", metavar="PATH|-")
        sp.add_argument("--json", action="store_true",
                        help="machine-readable output (the default; accepted "
                             "for pipeline compatibility)")
        if out:
            sp.add_argument("--out", dest="outfile", default="-", metavar="PATH|-")

    add_io(sub.add_parser("validate"), out=False)

    sp = sub.add_parser("info")
    add_io(sp, out=False)
    sp.add_argument("--xi", default=None, help="circle direction, e.g. 1,0,0")

    sp = sub.add_parser("diff")
    add_io(sp, out=False)
    sp.add_argument("--other", required=True, metavar="PATH")

    sp = sub.add_parser("reduce")
    add_io(sp)
    sp.add_argument("--level", required=True)

    sp = sub.add_parser("cut")
    add_io(sp)
    sp.add_argument("--level", required=True)
    sp.add_argument("--above", action="store_true")

    sp = sub.add_parser("compactify")
    add_io(sp)
    sp.add_argument("--min", dest="lo", required=True)
    sp.add_argument("--max", dest="hi", required=True)

    sp = sub.add_parser("blowup")
    add_io(sp)
    sp.add_argument("--vertex-index", type=int, default=None)
    sp.add_argument("--vertex", default=None, help="exact coordinates, e.g. 0,1/2")
    sp.add_argument("--depth", required=True)

    sp = sub.add_parser("add-fixed-points")
    add_io(sp)
    sp.add_argument("--eps", required=True)

    add_io(sub.add_parser("reverse"))

    sp = sub.add_parser("dh")
    add_io(sp, out=False)
    sp.add_argument("--csv", default=None, metavar="PATH")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--check-log-concavity", action="store_true")
    sp.add_argument("--local-minima", action="store_true")

    sp = sub.add_parser("wall-check")
    add_io(sp, out=False)
    sp.add_argument("--wall", required=True)
    sp.add_argument("--window", default=None)

    sp = sub.add_parser("local-model")
    sp.add_argument("op", choices=["monotone", "solve", "membership", "npm",
                                   "convexity", "psh", "cut-identity",
                                   "blowup-potential"])
    sp.add_argument("--weights", required=True, help="comma-separated integers")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--z", default=None, help="comma-separated complex values")
    sp.add_argument("--level", type=float, default=None)
    sp.add_argument("--eps", type=float, default=0.5)
    sp.add_argument("--eps-prime", type=float, default=0.25)
    sp.add_argument("--delta", type=float, default=None)
    sp.add_argument("--bad-region", action="store_true")
    sp.add_argument("--t0", type=float, default=0.7)
    sp.add_argument("--n", type=int, default=3)
    return p


def _rational(text: str) -> Fraction:
    return parse_rational(text)


def _vertex_arg(P: LabeledPolytope, args) -> tuple:
    verts = vertices(P)
    if args.vertex_index is not None:
        if not 0 <= args.vertex_index < len(verts):
            raise PreconditionError(
                f"--vertex-index {args.vertex_index} out of range 0..{len(verts)-1}")
        return verts[args.vertex_index].point
    if args.vertex is not None:
        return tuple(_rational(c) for c in args.vertex.split(","))
    raise InputError("one of --vertex-index or --vertex is required")


def _cmd_validate(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    rep = validate(P)
    return CommandOutcome(0 if rep.valid else 1, rep.to_json())


def _cmd_info(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    xi = (tuple(int(x) for x in args.xi.split(","))
          if args.xi else (1,) + (0,) * (P.dim - 1))
    verts = vertices(P)
    out_vertices = []
    for v in sorted(verts, key=lambda v: v.point):
        out_vertices.append({
            "point": [format_rational(c) for c in v.point],
            "active_facets": sorted(v.active),
            "class": classify_vertex(P, v).to_json(),
            "weights": list(weights_at_vertex(P, v, xi)),
        })
    stab = []
    for i in range(len(P.facets)):
        order = circle_stabilizer_order(P, frozenset({i}))
        stab.append({"facet": i, "order": order if order == "infinite" else int(order)})
    return CommandOutcome(0, {
        "dim": P.dim,
        "direction": list(xi),
        "vertices": out_vertices,
        "fixed_components": [c.to_json() for c in fixed_components(P)],
        "facet_stabilizer_orders": stab,
        "critical_values": [format_rational(c) for c in critical_values(P)],
    })


def _cmd_diff(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    Q = _load_polytope(args.other)
    eq = canonical_equal(P, Q)
    return CommandOutcome(0 if eq else 1, {"equal": eq})


def _polytope_payload(P: LabeledPolytope, extra: Optional[dict] = None) -> dict:
    payload = {"polytope": to_json_dict(P)}
    if extra:
        payload.update(extra)
    return payload


def _cmd_reduce(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    res = reduce_at(P, _rational(args.level))
    _write_polytope(res.polytope, args.outfile)
    return CommandOutcome(0, _polytope_payload(res.polytope, {
        "level": format_rational(res.level),
        "stabilizers": res.to_json()["stabilizers"],
    }))


def _cmd_cut(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    side = CutSide.ABOVE if args.above else CutSide.BELOW
    Q = cut(P, _rational(args.level), side)
    _write_polytope(Q, args.outfile)
    return CommandOutcome(0, _polytope_payload(Q, {
        "level": args.level, "side": side.value}))


def _cmd_compactify(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    Q = compactify(P, _rational(args.lo), _rational(args.hi))
    _write_polytope(Q, args.outfile)
    return CommandOutcome(0, _polytope_payload(Q))


def _cmd_blowup(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    point = _vertex_arg(P, args)
    Q, ledger = blowup(P, BlowupParams(point, _rational(args.depth)),
                       fresh_ledger(P))
    _write_polytope(Q, args.outfile)
    return CommandOutcome(0, _polytope_payload(Q, {"ledger": ledger.to_json(Q)}))


def _cmd_add_fixed_points(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    Q, ledger, report = add_fixed_points(P, _rational(args.eps))
    _write_polytope(Q, args.outfile)
    return CommandOutcome(0 if report.ok else 3, _polytope_payload(Q, {
        "ledger": ledger.to_json(Q),
        "report": report.to_json(),
    }))


def _cmd_reverse(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    Q = reversed_polytope(P)
    _write_polytope(Q, args.outfile)
    return CommandOutcome(0, _polytope_payload(Q))


def _cmd_dh(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    profile = dh_profile(P)
    payload = {"profile": profile.to_json(),
               "total_integral": format_rational(profile.total_integral())}
    if args.csv:
        lo, hi = profile.walls[0], profile.walls[-1]
        nsamp = max(2, args.samples)
        rows = ["s,mu"]
        for k in range(nsamp):
            s = lo + (hi - lo) * Fraction(k, nsamp - 1)
            rows.append(f"{format_rational(s)},{format_rational(profile.value(s))}")
        text = "\n".join(rows) + "\n"
        if args.csv == "-":
            sys.stdout.write(text)
        else:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write(text)
        payload["csv"] = args.csv
    if args.check_log_concavity:
        payload["log_concavity"] = check_log_concavity(profile).to_json()
    if args.local_minima:
        payload["strict_local_minima"] = [
            m.to_json() for m in find_strict_local_minima(profile)]
    return CommandOutcome(0, payload)


def _cmd_wall_check(args) -> CommandOutcome:
    P = _load_polytope(args.infile)
    window = _rational(args.window) if args.window else None
    report = wall_crossing_check(P, _rational(args.wall), window)
    return CommandOutcome(0 if report.ok else 3, report.to_json())


def _parse_z(text: str) -> np.ndarray:
    return np.array([complex(part) for part in text.split(",")], dtype=complex)


def _cmd_local_model(args) -> CommandOutcome:
    action = parse_weights(args.weights)
    op = args.op
    if op == "monotone":
        rep = batteries.monotone_battery(args.trials, args.seed)
        return CommandOutcome(0 if rep.ok else 3, rep.to_json())
    if op == "solve":
        if args.z is not None and args.level is not None:
            t = solve_time_to_level(action, _parse_z(args.z), args.level,
                                    tol=args.tol or 1e-12)
            return CommandOutcome(0, {"weights": list(action.weights),
                                      "level": args.level, "time": t})
        rep = batteries.solve_membership_battery(args.trials, args.seed)
        return CommandOutcome(0 if rep.ok else 3, rep.to_json())
    if op == "membership":
        if args.z is not None and args.level is not None:
            member = level_membership(action, _parse_z(args.z), args.level)
            return CommandOutcome(0, {"weights": list(action.weights),
                                      "level": args.level, "member": member})
        rep = batteries.solve_membership_battery(args.trials, args.seed)
        return CommandOutcome(0 if rep.ok else 3, rep.to_json())
    if op == "npm":
        if args.z is not None:
            nm, np_ = n_pm(action, _parse_z(args.z))
            return CommandOutcome(0, {"n_minus": nm, "n_plus": np_})
        rep = batteries.npm_scaling_battery(args.trials, args.seed)
        return CommandOutcome(0 if rep.ok else 3, rep.to_json())
    if op == "convexity":
        spec = (default_spec(action, args.eps, args.eps_prime)
                if args.delta is None else
                NeighborhoodSpec(args.eps, args.eps_prime, args.delta))
        region = bad_annulus_region(action) if args.bad_region else None
        rep = orbital_convexity_probe(action, spec, trials=args.trials,
                                      seed=args.seed, region=region)
        payload = {
            "eps": spec.eps, "eps_prime": spec.eps_prime, "delta": spec.delta,
            "trials": rep.trials, "reentries": rep.reentries,
            "exit_clause_failures": rep.exit_clause_failures,
            "half_line_cases": rep.half_line_cases,
            "grid": {"t_span": rep.t_span, "points": rep.grid_points},
            "ok": rep.ok,
        }
        return CommandOutcome(0 if rep.ok or args.bad_region else 3, payload)
    if op == "psh":
        worst = 0.0
        results = []
        for spec in psh_test_family():
            r = psh_criterion(spec, args.t0, args.n, seed=args.seed)
            worst = max(worst, r.rel_err)
            results.append({"profile": r.name, "rel_err": r.rel_err,
                            "kahler": r.kahler})
        rep = batteries.psh_battery(args.trials, args.seed)
        return CommandOutcome(0 if rep.ok else 3, {
            "at_t0": results, "battery": rep.to_json()})
    if op == "cut-identity":
        if args.z is not None:
            z = _parse_z(args.z)
            r = cut_tameness_identity(action, z[:-1], complex(z[-1]))
            return CommandOutcome(0 if r.ok else 3, {
                "value": r.value, "expected": r.expected, "rel_err": r.rel_err,
                "orthogonality": [r.orth_1, r.orth_2], "ok": r.ok})
        rep = batteries.cut_identity_battery(args.trials, args.seed)
        return CommandOutcome(0 if rep.ok else 3, rep.to_json())
    if op == "blowup-potential":
        rep = batteries.blowup_potential_battery(args.trials, args.seed)
        return CommandOutcome(0 if rep.ok else 3, rep.to_json())
    raise InputError(f"unknown local-model op {op}")  # pragma: no cover


_HANDLERS = {
    "validate": _cmd_validate,
    "info": _cmd_info,
    "diff": _cmd_diff,
    "reduce": _cmd_reduce,
    "cut": _cmd_cut,
    "compactify": _cmd_compactify,
    "blowup": _cmd_blowup,
    "add-fixed-points": _cmd_add_fixed_points,
    "reverse": _cmd_reverse,
    "dh": _cmd_dh,
    "wall-check": _cmd_wall_check,
    "local-model": _cmd_local_model,
}


def run(argv: list[str]) -> CommandOutcome:
    """Parse and dispatch; errors become exit codes, never tracebacks."""
    try:
        args = build_parser().parse_args(argv)
        return _HANDLERS[args.command](args)
    except InputError as exc:
        return CommandOutcome(1, {"error": "input", "message": str(exc)})
    except PreconditionError as exc:
        return CommandOutcome(2, {"error": "precondition",
                                  "kind": type(exc).__name__, "message": str(exc)})
    except (InternalError, AssertionError) as exc:
        return CommandOutcome(3, {"error": "internal", "message": str(exc)})
    except MomentcutError as exc:
        return CommandOutcome(1, {"error": "input", "message": str(exc)})


def main() -> None:
    outcome = run(sys.argv[1:])
    _emit(outcome.payload)
    sys.exit(outcome.exit_code)


if __name__ == "__main__":
    main()
