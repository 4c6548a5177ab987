"""Command-line entry points ``gol`` and ``polyfunc``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import BasisAlgebra, cartan_matrix, check_algebra
from .brauer_tree import BrauerTree, predict_projectives, predicted_cartan, to_algebra
from .green_order import GreenOrderSpec, green_report
from .polyfunctor import (
    check_mod_p_invariance,
    check_p_alpha_vanishes,
    cross_effect_dims,
    cross_effect_hom_identity,
    degree_of,
    dim_at,
    parse_functor,
    hom_dim_projectivity_identity,
)
from .report import SUITES, SuiteParams, all_passed, dumps, emit_json, run_suite, summary_lines


def _gol_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gol", description="Run the verification suites.")
    ap.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--precision", type=int, default=6)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", metavar="PATH", help="write the reports as JSON ('-' for stdout)")
    ap.add_argument("--timings", action="store_true", help="include runtime_ms in the JSON")
    inspect = ap.add_mutually_exclusive_group()
    inspect.add_argument("--green-report", action="store_true",
                         help="print the Green order summary for --p and exit")
    inspect.add_argument("--algebra", metavar="PATH", help="check an algebra JSON file and exit")
    inspect.add_argument("--tree", metavar="PATH", help="compare a Brauer tree JSON file with its algebra")
    return ap


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2, ensure_ascii=False))


def gol_main(argv: list[str] | None = None) -> int:
    args = _gol_parser().parse_args(argv)
    try:
        params = SuiteParams(args.p, args.precision, args.trials, args.seed)
    except ValueError as exc:
        print(f"gol: {exc}", file=sys.stderr)
        return 2

    if args.green_report:
        spec = GreenOrderSpec.lambda0(args.p, args.precision)
        _print_json(green_report(spec, args.trials, args.seed))
        return 0
    if args.algebra:
        a = BasisAlgebra.load(args.algebra)
        rep = check_algebra(a)
        doc = {"dim": a.dim, "radical_dim": a.radical_dim, "checks": rep.checks,
               "failures": rep.failures}
        if rep.ok:
            doc["cartan"] = cartan_matrix(a).tolist()
        _print_json(doc)
        return 0 if rep.ok else 1
    if args.tree:
        t = BrauerTree.load(args.tree)
        c = cartan_matrix(to_algebra(t, args.p))
        pred = predicted_cartan(t)
        _print_json({
            "edges": t.n_edges,
            "projectives": [p.layers() for p in predict_projectives(t)],
            "cartan": c.tolist(),
            "cartan_matches_prediction": bool(np.array_equal(c, pred)),
        })
        return 0 if np.array_equal(c, pred) else 1

    reports = run_suite(args.suite, params)
    # keep stdout pure JSON when the reports go there
    summary = sys.stderr if args.json == "-" else sys.stdout
    for line in summary_lines(reports):
        print(line, file=summary)
    if args.json == "-":
        sys.stdout.write(dumps(reports, args.timings))
    elif args.json:
        emit_json(reports, args.json, args.timings)
    return 0 if all_passed(reports) else 1


def _polyfunc_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyfunc", description="Polynomial functor dimensions and checks.")
    sub = ap.add_subparsers(dest="command", required=True)
    dims = sub.add_parser("dims", help="dimensions F(Z^0..Z^k)")
    dims.add_argument("--functor", required=True)
    dims.add_argument("--k", type=int, required=True)
    cross = sub.add_parser("cross", help="cross-effect dimensions c_1..c_slots")
    cross.add_argument("--functor", required=True)
    cross.add_argument("--slots", type=int, required=True)
    verify = sub.add_parser("verify", help="randomized check of a functor identity")
    verify.add_argument("--lemma", required=True, choices=["welldefined", "modp", "projectivity", "crosshom"])
    verify.add_argument("--p", type=int, default=5)
    verify.add_argument("--trials", type=int, default=200)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--functor", default=None, help="restrict to one functor")
    return ap


def _verify(args) -> dict:
    from .report import _functors_below

    p = args.p
    fs = [parse_functor(args.functor, p)] if args.functor else _functors_below(p)
    rng = np.random.default_rng(args.seed)
    failures = []
    if args.lemma in ("welldefined", "modp"):
        for f in fs:
            for _ in range(args.trials):
                k = int(rng.integers(1, 4))
                a = rng.integers(-9, 10, (k, k)).tolist()
                if args.lemma == "welldefined":
                    res = check_p_alpha_vanishes(f, a, p)
                else:
                    res = check_mod_p_invariance(f, a, rng.integers(-9, 10, (k, k)).tolist(), p)
                if not res:
                    failures.append({"functor": str(f), "A": a, "entry": res.witness})
    elif args.lemma == "projectivity":
        for f in fs:
            n = degree_of(f, p + f.parameter_bound())
            for m in range(args.trials):
                if not hom_dim_projectivity_identity(max(n, 1), m % 8, f):
                    failures.append({"functor": str(f), "m": m % 8})
    else:
        for f in fs:
            n = degree_of(f, p + f.parameter_bound())
            if n and not cross_effect_hom_identity(n, f):
                failures.append({"functor": str(f), "n": n})
    return {"lemma": args.lemma, "p": p, "functors": [str(f) for f in fs],
            "trials": args.trials, "seed": args.seed, "failures": failures,
            "status": "pass" if not failures else "fail"}


def polyfunc_main(argv: list[str] | None = None) -> int:
    args = _polyfunc_parser().parse_args(argv)
    try:
        if args.command == "dims":
            f = parse_functor(args.functor)
            _print_json({"functor": str(f), "dims": [dim_at(f, k) for k in range(args.k + 1)]})
        elif args.command == "cross":
            f = parse_functor(args.functor)
            table = cross_effect_dims(f, args.slots)
            _print_json({"functor": str(f), "offset": table.offset, "cross_effects": list(table.values),
                         "degree": degree_of(f, args.slots)})
        else:
            doc = _verify(args)
            _print_json(doc)
            return 0 if doc["status"] == "pass" else 1
    except ValueError as exc:
        print(f"polyfunc: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(gol_main())
