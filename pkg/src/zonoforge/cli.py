"""Command-line front end.

Every computation is exposed as a subcommand emitting deterministic JSON
(or a plain table with --format table).  Rationals cross the boundary as
"p/q" strings; the only floating-point outputs are the labeled Monte-Carlo
estimates.  Exit codes: 0 success, 1 verification failure or boundary
input, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import activity, linalg, parking, spaces, volumes
from .graphs import (
    Orientation,
    RootedTree,
    broken_wheel,
    edge_matrix,
    enumerate_orientations,
    gbw,
)
from .mpoly import coeff_vector, monomials_of_degree, normalized_monomial
from .volumes import DegenerateContourError, ZeroMeasureError


def _ints_csv(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from exc


def _fracs_csv(text: str) -> list[Fraction]:
    try:
        vals = [Fraction(v) for v in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"expected comma-separated rationals, got {text!r}") from exc
    if any(v <= 0 for v in vals):
        raise ValueError("parameters must be positive rationals")
    return vals


def _load_tree(path: str) -> RootedTree:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return RootedTree.from_json_dict(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValueError(f"cannot parse tree file {path}: {exc}") from exc


def _emit(data: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(data, separators=(",", ":")))
        return
    for key, value in data.items():
        if isinstance(value, list):
            print(f"{key}:")
            for item in value:
                print(f"  {item}")
        else:
            print(f"{key}: {value}")


def _require_positive(n: int):
    if n < 1:
        raise ValueError("n must be a positive integer")


# ----------------------------------------------------------------------
# bw subcommands


def _cmd_bw_tutte(args) -> int:
    _require_positive(args.n)
    x = edge_matrix(broken_wheel(args.n))
    _emit(activity.tutte(x).to_json_dict(), args.format)
    return 0


def _cmd_bw_parking(args) -> int:
    _require_positive(args.n)
    bw = broken_wheel(args.n)
    if args.cls == "internal":
        functions = parking.enumerate_bw_internal(args.n)
    elif args.cls == "maximal":
        functions = parking.maximal_parking(bw)
    else:
        functions = parking.enumerate_parking(bw)
    _emit(parking.parking_json(args.n, args.cls, functions), args.format)
    return 0


def _cmd_bw_hilbert(args) -> int:
    _require_positive(args.n)
    x = edge_matrix(broken_wheel(args.n))
    dims = spaces.hilbert_series(x, args.kind)
    _emit({"n": args.n, "kind": args.kind, "dims": list(dims)}, args.format)
    return 0


def _cmd_bw_qn(args) -> int:
    _require_positive(args.n)
    _emit(volumes.stanley_pitman_q(args.n).to_json_dict(), args.format)
    return 0


def _cmd_bw_monic(args) -> int:
    _require_positive(args.n)
    s = _ints_csv(args.s)
    if len(s) != args.n or any(v < 0 for v in s):
        raise ValueError("--s must list n nonnegative integers")
    bw = broken_wheel(args.n)
    x = edge_matrix(bw)
    if args.internal:
        family = parking.enumerate_bw_internal(args.n)
    else:
        family = parking.enumerate_parking(bw)
    if s not in family:
        kind = "internal parking" if args.internal else "parking"
        raise ValueError(f"{s} is not a {kind} function of the broken wheel graph")
    group = [p for p in family if sum(p) == sum(s)]
    poly = spaces.monic_basis(x, group, internal=args.internal)[s]
    _emit(
        {
            "n": args.n,
            "s": list(s),
            "internal": bool(args.internal),
            "poly": poly.to_json_dict(),
        },
        args.format,
    )
    return 0


# ----------------------------------------------------------------------
# gbw subcommands


def _cmd_gbw_subdivide(args) -> int:
    tree = _load_tree(args.tree)
    t = _fracs_csv(args.t) if args.t else [Fraction(1)] * tree.n
    if len(t) != tree.n:
        raise ValueError("--t must list one rational per vertex")
    chambers = [
        volumes.chamber(tree, k).to_json_dict(t)
        for k in enumerate_orientations(tree.n)
    ]
    _emit(
        {
            "tree": tree.to_json_dict(),
            "t": [str(v) for v in t],
            "chambers": chambers,
        },
        args.format,
    )
    return 0


def _verify_dspace(tree: RootedTree) -> tuple[bool, list[str]]:
    """Chamber polynomials sit in the degree-n central kernel, independently."""
    failures = []
    x = edge_matrix(gbw(tree, Orientation.all_forward(tree.n)))
    family = spaces.cocircuit_ideal_ops(x)
    polys = []
    for k in enumerate_orientations(tree.n):
        q = volumes.q_tk(tree, k)
        polys.append(q)
        if not family.annihilates(q):
            failures.append(f"chamber polynomial for k={k.k} not annihilated")
    order = monomials_of_degree(tree.n, tree.n)
    rows = [coeff_vector(p, order) for p in polys]
    if linalg.rank(rows, len(order)) != len(polys):
        failures.append("chamber polynomials are linearly dependent")
    return not failures, failures


def _verify_parking(tree: RootedTree) -> tuple[bool, list[str]]:
    refs = {
        volumes.ref_monomial(tree, k) for k in enumerate_orientations(tree.n)
    }
    maximal = set(parking.maximal_parking(gbw(tree, Orientation.all_forward(tree.n))))
    if refs != maximal:
        return False, [f"reference exponents {sorted(refs)} != maximal parking {sorted(maximal)}"]
    return True, []


def _verify_mc(tree, t, seed: int, samples: int) -> tuple[bool, list[str]]:
    failures = []
    for idx, k in enumerate(enumerate_orientations(tree.n)):
        ch = volumes.chamber(tree, k)
        exact = float(volumes.q_tk(tree, k).eval(t))
        est, err = volumes.mc_volume(volumes.chamber_system(ch, t), samples, seed + idx)
        band = 3 * err if err > 0 else 3 * (exact or 1.0) / samples**0.5
        if abs(est - exact) > band:
            failures.append(
                f"k={k.k}: estimate {est:.6f} vs exact {exact:.6f} (band {band:.6f})"
            )
    return not failures, failures


def _cmd_gbw_verify(args) -> int:
    tree = _load_tree(args.tree)
    t = _fracs_csv(args.t) if args.t else [Fraction(1)] * tree.n
    if len(t) != tree.n:
        raise ValueError("--t must list one rational per vertex")
    wanted = args.checks.split(",") if args.checks else ["partition", "dspace", "parking"]
    valid = {"partition", "dspace", "parking", "mc"}
    unknown = set(wanted) - valid
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    report: dict = {
        "tree": tree.to_json_dict(),
        "t": [str(v) for v in t],
        "chambers": [
            volumes.chamber(tree, k).to_json_dict(t)
            for k in enumerate_orientations(tree.n)
        ],
        "checks": {},
        "witnesses": [],
    }
    ok = True
    if "partition" in wanted:
        pr = volumes.partition_check(tree, t, seed=args.seed)
        report["partition_ok"] = pr.supports_disjoint and pr.union_complete and pr.samples_ok
        report["sum_identity_ok"] = pr.sum_identity_ok
        report["checks"]["partition"] = pr.ok
        report["witnesses"] += pr.failures
        ok = ok and pr.ok
    if "dspace" in wanted:
        good, failures = _verify_dspace(tree)
        report["checks"]["dspace"] = good
        report["witnesses"] += failures
        ok = ok and good
    if "parking" in wanted:
        good, failures = _verify_parking(tree)
        report["checks"]["parking"] = good
        report["witnesses"] += failures
        ok = ok and good
    if "mc" in wanted:
        good, failures = _verify_mc(tree, t, args.seed, args.samples)
        report["checks"]["mc"] = good
        report["witnesses"] += failures
        ok = ok and good
    _emit(report, args.format)
    return 0 if ok else 1


# ----------------------------------------------------------------------
# assoc subcommands


def _cmd_assoc_list(args) -> int:
    if args.n is None:
        raise ValueError("--n is required")
    _require_positive(args.n)
    trees = volumes.plane_binary_trees(args.n)
    rows = []
    for t in trees:
        k = volumes.kT(t)
        rows.append(
            {
                "shape": t.encode(),
                "kT": list(k),
                "volume_monomial": normalized_monomial(k).to_json_dict(),
            }
        )
    _emit({"n": args.n, "trees": rows}, args.format)
    return 0


def _cmd_assoc_locate(args) -> int:
    x = _fracs_csv(args.x)
    y = [Fraction(v) for v in args.y.split(",")]
    walk = volumes.phi_walk(x, y, Fraction(args.s))
    shape = walk.shape
    trees = volumes.plane_binary_trees(len(x))
    _emit(
        {
            "n": len(x),
            "shape": shape.encode(),
            "index": trees.index(shape),
            "kT": list(volumes.kT(shape)),
        },
        args.format,
    )
    return 0


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zonoforge",
        description="Exact zonotopal algebra of broken wheel graphs.",
    )
    parser.add_argument("--format", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    bw = sub.add_parser("bw", help="broken wheel graph computations")
    bw_sub = bw.add_subparsers(dest="bw_command", required=True)
    p = bw_sub.add_parser("tutte")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_bw_tutte)
    p = bw_sub.add_parser("parking")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=("all", "internal", "maximal"), default="all")
    p.set_defaults(func=_cmd_bw_parking)
    p = bw_sub.add_parser("hilbert")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("central", "internal"), default="central")
    p.set_defaults(func=_cmd_bw_hilbert)
    p = bw_sub.add_parser("qn")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_bw_qn)
    p = bw_sub.add_parser("monic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--internal", action="store_true")
    p.set_defaults(func=_cmd_bw_monic)

    g = sub.add_parser("gbw", help="generalized broken wheel graph computations")
    g_sub = g.add_subparsers(dest="gbw_command", required=True)
    p = g_sub.add_parser("subdivide")
    p.add_argument("--tree", required=True)
    p.add_argument("--t")
    p.set_defaults(func=_cmd_gbw_subdivide)
    p = g_sub.add_parser("verify")
    p.add_argument("--tree", required=True)
    p.add_argument("--t")
    p.add_argument("--checks")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=_cmd_gbw_verify)

    a = sub.add_parser("assoc", help="plane-binary-tree subdivision of the prefix polytope")
    a.add_argument("--n", type=int)
    a.set_defaults(func=_cmd_assoc_list)
    a_sub = a.add_subparsers(dest="assoc_command")
    p = a_sub.add_parser("locate")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--s", required=True)
    p.set_defaults(func=_cmd_assoc_locate)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except DegenerateContourError as exc:
        print(f"degenerate contour: {exc}", file=sys.stderr)
        return 1
    except ZeroMeasureError as exc:
        print(f"zero-measure system: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
