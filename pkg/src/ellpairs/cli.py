"""
Command-line front end.

    ellpairs classify [--case 1|2|3] [--no-strict] [--oracle --amax N --cmax N]
    ellpairs triangle analyze|fibration "0,0 2,0 5,8" --mult 4
    ellpairs nodal test|scan|roots|triple|grouplaw ...

Exit status: 0 on success, 1 on invalid input, 2 on an internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import arith, classify, lattice, linsys, toric

log = logging.getLogger("ellpairs")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _triangle(text: str) -> lattice.LatticeTriangle:
    try:
        return lattice.LatticeTriangle.parse(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ellpairs", description="Toric elliptic pairs and nodal-cubic blow-ups.")
    p.add_argument("--format", choices=("json", "text", "csv"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="triangles with Vol = m^2, |boundary| = m and width >= m")
    c.add_argument("--case", type=int, choices=(1, 2, 3))
    c.add_argument("--no-strict", action="store_true", help="drop the side-sum filter in case 1")
    c.add_argument("--mode", choices=("listing", "exact"), default="listing", help="case 1 parameter ranges")
    c.add_argument("--oracle", action="store_true", help="brute-force scan instead of the case solvers")
    c.add_argument("--amax", type=_positive, default=50)
    c.add_argument("--cmax", type=_positive, default=250)
    c.add_argument("--jobs", type=_positive, default=1)

    t = sub.add_parser("triangle", help="linear systems and fibration of one triangle")
    t.add_argument("action", choices=("analyze", "fibration"))
    t.add_argument("triangle", type=_triangle)
    t.add_argument("--mult", type=_positive, required=True)
    t.add_argument("--h", dest="h_poly", help="override the adjoint cofactor h")

    n = sub.add_parser("nodal", help="blow-ups of P^2 at points of a nodal cubic")
    nsub = n.add_subparsers(dest="action", required=True, parser_class=_Parser)
    nt = nsub.add_parser("test")
    nt.add_argument("--a", type=_rational, required=True)
    nt.add_argument("--q", type=_rational, required=True)
    nt.add_argument("--p", type=int, required=True)
    ns = nsub.add_parser("scan")
    ns.add_argument("--a", type=_rational, required=True)
    ns.add_argument("--q", type=_rational, required=True)
    ns.add_argument("--limit", type=int, required=True)
    ns.add_argument("--l", dest="l", type=int, action="append", default=[])
    ns.add_argument("--jobs", type=_positive, default=1)
    ns.add_argument("--out", help="write per-prime CSV rows here")
    nr = nsub.add_parser("roots")
    nr.add_argument("--a", type=_rational, required=True)
    nr.add_argument("--q", type=_rational, required=True)
    ntr = nsub.add_parser("triple")
    ntr.add_argument("--a", type=_rational, required=True)
    ntr.add_argument("--limit", type=int, required=True)
    ntr.add_argument("--jobs", type=_positive, default=1)
    ng = nsub.add_parser("grouplaw", help="random collinearity checks on the nodal cubic")
    ng.add_argument("--count", type=_positive, default=100)
    ng.add_argument("--seed", type=int, default=0)
    return p


# --- subcommands -------------------------------------------------------------


def _classify(args) -> object:
    if args.oracle:
        prim, imprim = classify.brute_oracle(args.amax, args.cmax, jobs=args.jobs)
        solver_keys = [ct.key for ct in classify.classify_all()]
        if [ct.key for ct in prim] != solver_keys:
            raise arith.InconsistencyError("oracle and case solvers disagree")
        log.info("oracle: %d primitive, %d imprimitive classes", len(prim), len(imprim))
        return [dict(ct.to_json(), paper_anchor="classification of primitive triangles") for ct in prim]
    if args.case == 1:
        sols = classify.solve_case1(strict=not args.no_strict, mode=args.mode)
        return [
            {
                "e": s.e, "x": s.x, "p": s.p, "s": s.s, "k": s.k, "y": s.y,
                "abc": [s.a, s.c - 2 * s.d, s.c], "m": s.m,
                "paper_anchor": "case 1: a/m > 2/3",
            }
            for s in sols
        ]
    if args.case == 2:
        out = []
        for cand in classify.solve_case2():
            out.append(
                {
                    "k": cand.k, "a": cand.a, "x": cand.x, "m": cand.m,
                    "triangles": [{"branch": b, "vertices": tri.to_json()} for b, tri in cand.triangles()],
                    "paper_anchor": "case 2: 1/2 < a/m <= 2/3",
                }
            )
        return out
    if args.case == 3:
        return [
            {"abc": list(abc), "m": m, "paper_anchor": "case 3: 1/3 <= a/m <= 1/2"}
            for abc, m in classify.case3_triples().items()
        ]
    return [dict(ct.to_json(), paper_anchor="classification of primitive triangles") for ct in classify.classify_all()]


def _triangle_cmd(args) -> dict:
    t, m = args.triangle, args.mult
    rep = lattice.candidate_check(t)
    if args.action == "analyze":
        nf = lattice.normalize(t)
        out = {
            "vertices": t.to_json(),
            "normal_form": [nf.a, nf.b, nf.c],
            "m": rep.m,
            "volume": rep.volume,
            "width": rep.width,
            "width_directions": [list(d) for d in rep.width_directions],
            "primitive": rep.primitive,
            "interior_points": len(lattice.interior_points(t)),
            "passes": rep.passes,
            "paper_anchor": "candidate conditions and pencil of curves",
        }
        if rep.passes and m == rep.m:
            system = linsys.linear_system(t, m)
            out["linear_system_dimension"] = system.dimension
            out["arithmetic_genus"] = linsys.arithmetic_genus(t, m)
            if rep.width == m:
                out["subgroup_curve"] = str(linsys.subgroup_curve(t, m))
            adj = linsys.adjoint_system(t, m)
            out["adjoint_dimension"] = adj.dimension
            if adj.dimension == 1 and rep.width == m:
                h, e, k = linsys.adjoint_cofactor(t, m)
                out["adjoint_factors"] = {"g_factor": str(linsys.subgroup_factor(t, m)), "g_power": e, "h": str(h), "h_power": k}
        return out
    if not rep.passes or m != rep.m or rep.width != m:
        raise UsageError(f"triangle does not satisfy Vol = m^2, |boundary| = m = {m}, width = m")
    h = linsys.parse_laurent(args.h_poly) if args.h_poly else None
    analysis = toric.fibration_for_triangle(t, m, h=h)
    out = analysis.to_json()
    out["paper_anchor"] = "elliptic fibration of the resolved blow-up"
    return out


def _nodal_cmd(args) -> object:
    if args.action == "grouplaw":
        rng = random.Random(args.seed)
        bad = 0
        for k in range(args.count):
            t1 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
            t2 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
            t3 = 1 / (t1 * t2) if k % 2 == 0 else 1 / (t1 * t2) + rng.randint(1, 5)
            col, one = arith.collinear_iff_product_one(t1, t2, t3)
            bad += col != one
        if bad:
            raise arith.InconsistencyError(f"{bad} group-law mismatches")
        return {"count": args.count, "seed": args.seed, "mismatches": 0, "paper_anchor": "group law on the nodal cubic"}
    if args.action == "roots":
        census = arith.root_census()
        a, q = args.a, args.q
        roots = [
            {"root": r.label(), "alpha": img.alpha, "beta": img.beta, "image": img.label(),
             "value": str(a ** img.alpha * q ** img.beta)}
            for r, img in arith.enumerate_roots()
        ]
        return {"census": census.to_json(), "roots": roots, "paper_anchor": "restriction of roots to the cubic"}
    if args.action == "triple":
        reports = arith.heath_brown_triple(args.a, args.limit, jobs=args.jobs)
        return {
            "a": str(args.a),
            "limit": args.limit,
            "reports": {str(q): r.to_json() for q, r in reports.items()},
            "paper_anchor": "polyhedral density for a triple of bases",
        }
    if not arith.multiplicatively_independent(args.a, args.q):
        raise UsageError(f"{args.a} and {args.q} are multiplicatively dependent")
    if args.action == "test":
        outcome = arith.polyhedrality_test(args.a, args.q, args.p)
        return {"a": str(args.a), "q": str(args.q), "p": args.p, "outcome": outcome, "paper_anchor": "polyhedrality criterion"}
    rep = arith.density_scan(args.a, args.q, args.limit, args.l, jobs=args.jobs, keep_rows=bool(args.out) or args.format == "csv")
    if rep.mismatches:
        raise arith.InconsistencyError(f"{rep.mismatches} primes where the two criteria disagree")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.to_csv())
    if args.format == "csv":
        return rep.to_csv()
    return dict(rep.to_json(), paper_anchor="polyhedrality criterion and order filters")


def _emit(result, fmt: str) -> str:
    if isinstance(result, str):
        return result
    if fmt == "text":
        rows = result if isinstance(result, list) else [result]
        return "\n".join(" ".join(f"{k}={json.dumps(v)}" for k, v in row.items()) for row in rows) + "\n"
    return json.dumps(result, indent=2) + "\n"


def run(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("EP_LOG", "WARNING").upper(), format="%(levelname)s %(message)s")
    try:
        args = build_parser().parse_args(argv)
        if args.format == "csv" and not (args.command == "nodal" and args.action == "scan"):
            raise UsageError("csv output is only available for 'nodal scan'")
        handler = {"classify": _classify, "triangle": _triangle_cmd, "nodal": _nodal_cmd}[args.command]
        sys.stdout.write(_emit(handler(args), args.format))
        return 0
    except arith.InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
