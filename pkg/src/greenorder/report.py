"""Verification suites and their JSON reports (schema ``gol-1``)."""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Iterable

import numpy as np

from .algebra import (
    cartan_matrix,
    check_algebra,
    group_algebra_from_table,
    omega_orbit_period,
    radical_series,
    regular_module,
    projective_module,
    symmetric_group_table,
)
from .brauer_tree import predict_projectives, predicted_cartan, star, stem, to_algebra
from .exactring import is_prime
from .green_order import (
    GreenOrderSpec,
    commutative_factor_count,
    kernel_lattices,
    lattice_count,
    lattice_is_indecomposable,
    member,
    mul,
    projective_lattices,
    random_member,
    rank,
    rational_components,
    reduce_mod_p,
)
from .combinatorics import count_p_regular
from .polyfunctor import (
    PolyFunctorSpec,
    check_mod_p_invariance,
    check_p_alpha_vanishes,
    cross_effect_dims,
    dim_at,
    projective_cover_bookkeeping,
    tensor_end_dim,
)
from .recollement import IdempotentSelection, corner_algebra, quotient_by_trace_ideal, recollement_check

SCHEMA = "gol-1"
SUITES = ("brauer", "green", "oracle-s3", "polyfunc", "recollement")


@dataclass
class SuiteParams:
    p: int = 5
    precision: int = 6
    trials: int = 200
    seed: int = 0

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"--p must be prime, got {self.p}")
        if self.precision < 2:
            raise ValueError("--precision must be at least 2")
        if self.trials < 1:
            raise ValueError("--trials must be positive")


@dataclass
class VerificationReport:
    suite: str
    anchor: str
    status: str  # pass | fail | skipped
    metrics: dict[str, Any]
    seed: int
    runtime_ms: float = 0.0
    witness: Any = None

    def __post_init__(self) -> None:
        if self.status not in ("pass", "fail", "skipped"):
            raise ValueError(f"bad status {self.status!r}")
        if not self.anchor:
            raise ValueError("a report needs a non-empty anchor")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def to_json(self, timings: bool = False) -> dict:
        doc = {
            "schema": SCHEMA,
            "suite": self.suite,
            "anchor": self.anchor,
            "status": self.status,
            "metrics": self.metrics,
            "seed": self.seed,
        }
        if self.status == "fail":
            doc["witness"] = self.witness
        if timings:
            doc["runtime_ms"] = round(self.runtime_ms, 3)
        return doc


class _Failed(Exception):
    def __init__(self, witness: Any, metrics: dict | None = None):
        super().__init__(str(witness))
        self.witness = witness
        self.metrics = metrics or {}


def _run(suite: str, anchor: str, seed: int, check: Callable[[], dict]) -> VerificationReport:
    start = time.perf_counter()
    try:
        metrics, status, witness = check(), "pass", None
    except _Failed as exc:
        metrics, status, witness = exc.metrics, "fail", exc.witness
    except (ValueError, AssertionError, ArithmeticError) as exc:
        metrics, status, witness = {}, "fail", {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = (time.perf_counter() - start) * 1000
    return VerificationReport(suite, anchor, status, metrics, seed, elapsed, witness)


def _expect(condition: bool, witness: Any, metrics: dict) -> dict:
    if not condition:
        raise _Failed(witness, metrics)
    return metrics


################################################################################
# suites


def _brauer(params: SuiteParams) -> list[VerificationReport]:
    out = []

    def cartan() -> dict:
        bad = {}
        for n in range(1, 8):
            got = cartan_matrix(to_algebra(stem(n), 2))
            if not np.array_equal(got, predicted_cartan(stem(n))):
                bad[n] = got.tolist()
        return _expect(not bad, bad, {"stems": list(range(1, 8))})

    def layers() -> dict:
        trees = {"stem(4)": stem(4), "star(3)": star(3), "star(3,mu=2)": star(3, 2)}
        bad = {}
        for name, t in trees.items():
            a = to_algebra(t, 2)
            for pred in predict_projectives(t):
                got = radical_series(a, projective_module(a, pred.edge)).factors()
                if got != pred.layers():
                    bad[f"{name}/P{pred.edge}"] = {"got": got, "expected": pred.layers()}
        return _expect(not bad, bad, {"trees": sorted(trees)})

    def periodic() -> dict:
        periods = {}
        bad = {}
        for n in range(2, 7):
            a = to_algebra(stem(n), 2)
            periods[n] = [omega_orbit_period(a, i, 2 * n) for i in range(n)]
            if any(t is None or t == 0 or (2 * n) % t for t in periods[n]):
                bad[n] = periods[n]
        return _expect(not bad, bad, {"periods": {str(k): v for k, v in periods.items()}})

    out.append(_run("brauer", "Cartan matrix of the stem algebra is tridiagonal", params.seed, cartan))
    out.append(_run("brauer", "projective radical layers follow the two strands of the tree", params.seed, layers))
    out.append(_run("brauer", "syzygies of simples over a stem are periodic with period dividing 2n", params.seed, periodic))
    return out


def _green(params: SuiteParams) -> list[VerificationReport]:
    p, seed = params.p, params.seed
    spec = GreenOrderSpec.lambda0(p, params.precision)
    out = []

    def closure() -> dict:
        rng = np.random.default_rng(seed)
        for t in range(params.trials):
            x, y = random_member(spec, rng), random_member(spec, rng)
            ok, bad = member(spec, mul(spec, x, y))
            if not ok:
                raise _Failed({"trial": t, "x": x.to_vector(), "y": y.to_vector(), "violations": bad})
        return {"p": p, "precision": params.precision, "trials": params.trials, "failures": 0}

    def counts() -> dict:
        r, comps = rank(spec), rational_components(spec)
        m = {"rank": r, "rational_components": comps}
        return _expect(r == 4 * p - 2 and comps == p + 1, m, m)

    def reduction() -> dict:
        a = reduce_mod_p(spec)
        c = cartan_matrix(a)
        m = {"reduced_dim": a.dim, "vertices": a.n_vertices, "cartan": c.tolist()}
        ok = (
            check_algebra(a).ok
            and a.dim == 4 * p - 2
            and a.n_vertices == p
            and np.array_equal(c, predicted_cartan(stem(p)))
        )
        return _expect(ok, m, m)

    def census() -> dict:
        proj = projective_lattices(spec)
        kers = kernel_lattices(spec)
        ranks = [lat.rank for lat in proj]
        local = [lattice_is_indecomposable(lat) for lat in kers]
        counts = lattice_count(p)
        m = {
            "projective_ranks": ranks,
            "kernels": len(kers),
            "kernels_local": sum(local),
            "lattice_count": {
                "total": counts.total,
                "projective": counts.projective,
                "nonprojective": counts.nonprojective,
            },
        }
        expected = [3] + [4] * (p - 2) + [3] if p > 2 else [3, 3]
        ok = (
            ranks == expected
            and len(kers) == 2 * (p - 1)
            and all(local)
            and counts.nonprojective == len(kers)
        )
        return _expect(ok, m, m)

    def factors() -> dict:
        c = commutative_factor_count(p)
        simples = sum(count_p_regular(n, p) for n in range(1, p + 1))
        m = {"commutative_factors": c.total, "simples": simples}
        # every simple is either one of the p simples of Lambda^0 or a Z_p factor
        return _expect(c.total + p == simples, m, m)

    out.append(_run("green", "products of members satisfy every congruence", seed, closure))
    out.append(_run("green", "rank 4p-2 and p+1 rational matrix components", seed, counts))
    out.append(_run("green", "reduction mod p is the stem Brauer tree algebra with p edges", seed, reduction))
    if p <= 7:
        out.append(_run("green", "p projective and 2(p-1) indecomposable non-projective lattices", seed, census))
    else:
        out.append(VerificationReport("green", "p projective and 2(p-1) indecomposable non-projective lattices",
                                      "skipped", {"reason": "lattice census limited to p <= 7"}, seed))
    if p >= 5:
        out.append(_run("green", "two readings of the commutative factor count agree", seed, factors))
    else:
        out.append(VerificationReport("green", "two readings of the commutative factor count agree",
                                      "skipped", {"reason": "requires p >= 5"}, seed))
    return out


def _recollement(params: SuiteParams) -> list[VerificationReport]:
    seed = params.seed
    primes = sorted({3, 5, 7} | ({params.p} if 3 <= params.p <= 11 else set()))

    def cut_leaf() -> dict:
        bad, dims = {}, {}
        for p in primes:
            a = to_algebra(stem(p), p)
            s = IdempotentSelection.of(a, range(1, p))
            corner, quotient = corner_algebra(a, s), quotient_by_trace_ideal(a, s)
            dims[str(p)] = {"corner": corner.dim, "quotient": quotient.dim}
            if not np.array_equal(cartan_matrix(corner), predicted_cartan(stem(p - 1))) or quotient.dim != 1:
                bad[p] = dims[str(p)]
        return _expect(not bad, bad, {"dims": dims})

    def additivity() -> dict:
        rng = np.random.default_rng(seed)
        for t in range(min(params.trials, 100)):
            n = int(rng.integers(2, 7))
            a = to_algebra(stem(n), 2)
            size = int(rng.integers(1, n))
            verts = rng.choice(n, size=size, replace=False).tolist()
            rep = recollement_check(a, IdempotentSelection.of(a, verts))
            if not rep.ok:
                raise _Failed({"trial": t, "n": n, "selection": sorted(verts), "failures": rep.failures})
        return {"trials": min(params.trials, 100)}

    return [
        _run("recollement", "cutting a leaf leaves the stem with one edge fewer and a one-dimensional quotient", seed, cut_leaf),
        _run("recollement", "simples of B split between eBe and B/BeB", seed, additivity),
    ]


def _polyfunc(params: SuiteParams) -> list[VerificationReport]:
    seed = params.seed

    def linearization() -> dict:
        dims = [dim_at(PolyFunctorSpec.lin(1, n), 1) for n in range(11)]
        return _expect(dims == [n + 1 for n in range(11)], dims, {"dims": dims})

    def cross() -> dict:
        tens = [cross_effect_dims(PolyFunctorSpec.tensor(n), n)[n] for n in range(1, 6)]
        syms = [cross_effect_dims(PolyFunctorSpec.sym(n), n)[n] for n in range(1, 6)]
        m = {"tensor": tens, "sym": syms}
        ok = tens == [math.factorial(n) for n in range(1, 6)] and syms == [1] * 5
        return _expect(ok, m, m)

    def lemmas() -> dict:
        rng = np.random.default_rng(seed)
        runs = 0
        for p in (3, 5, 7):
            for f in _functors_below(p):
                for _ in range(params.trials):
                    k = int(rng.integers(1, 4))
                    a = rng.integers(-9, 10, (k, k)).tolist()
                    g = rng.integers(-9, 10, (k, k)).tolist()
                    r1 = check_p_alpha_vanishes(f, a, p)
                    r2 = check_mod_p_invariance(f, a, g, p)
                    runs += 1
                    if not (r1 and r2):
                        raise _Failed({"p": p, "functor": str(f), "A": a, "G": g,
                                       "entry": r1.witness or r2.witness})
        return {"trials": runs}

    def commutant() -> dict:
        dims = {f"{n},{k},{p}": tensor_end_dim(n, k, p)
                for n in (1, 2, 3) for k in range(n, 4) for p in (3, 5)}
        bad = {key: v for key, v in dims.items() if v != math.factorial(int(key[0]))}
        return _expect(not bad, bad, {"dims": dims})

    def bookkeeping() -> dict:
        rows = {f"{p},{k}": projective_cover_bookkeeping(p, k) for p in (2, 3, 5, 7) for k in range(6)}
        ok = rows["2,2"]["dimL"] == 1 and all(
            sum(dim_at(PolyFunctorSpec.sym(i), k) for i in range(p)) == math.comb(k + p - 1, p - 1)
            for p in (2, 3, 5, 7) for k in range(6)
        )
        return _expect(ok, rows["2,2"], {"rows": len(rows)})

    return [
        _run("polyfunc", "End of the degree-n linearization in one variable has dimension n+1", seed, linearization),
        _run("polyfunc", "top cross effects: n! for tensor powers, 1 for symmetric powers", seed, cross),
        _run("polyfunc", "F(p A) = 0 and F(A + p G) = F(A) mod p below degree p", seed, lemmas),
        _run("polyfunc", "tensor-power commutant has dimension n!", seed, commutant),
        _run("polyfunc", "composition-factor bookkeeping of the degree-p projective", seed, bookkeeping),
    ]


def _functors_below(p: int) -> list[PolyFunctorSpec]:
    fs = [PolyFunctorSpec.identity()]
    for d in range(1, p):
        fs += [PolyFunctorSpec.tensor(d), PolyFunctorSpec.sym(d), PolyFunctorSpec.ext(d)]
    fs.append(PolyFunctorSpec.direct_sum(PolyFunctorSpec.sym(p - 1), PolyFunctorSpec.ext(2)))
    return [f.over(p) for f in fs]


def _oracle_s3(params: SuiteParams) -> list[VerificationReport]:
    def compare() -> dict:
        g = group_algebra_from_table(symmetric_group_table(3), 3)
        b = to_algebra(stem(2), 3)

        def invariants(a) -> dict:
            return {
                "dim": a.dim,
                "radical_dim": a.radical_dim,
                "cartan": cartan_matrix(a).tolist(),
                "loewy_length": radical_series(a, regular_module(a)).loewy_length,
                "omega_periods": [omega_orbit_period(a, i, 8) for i in range(a.n_vertices)],
            }

        ig, ib = invariants(g), invariants(b)
        return _expect(ig == ib, {"group_algebra": ig, "stem": ib}, ig)

    return [_run("oracle-s3", "F_3 S_3 computed by brute force matches the stem with two edges", params.seed, compare)]


_RUNNERS = {
    "brauer": _brauer,
    "green": _green,
    "oracle-s3": _oracle_s3,
    "polyfunc": _polyfunc,
    "recollement": _recollement,
}


def run_suite(name: str, params: SuiteParams | None = None) -> list[VerificationReport]:
    """Run one suite, or every suite for ``all``; reports are sorted by suite name."""
    params = params or SuiteParams()
    if name == "all":
        names = SUITES
    elif name in _RUNNERS:
        names = (name,)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}, all")
    reports = list(itertools.chain.from_iterable(_RUNNERS[n](params) for n in names))
    return sorted(reports, key=lambda r: r.suite)


def all_passed(reports: Iterable[VerificationReport]) -> bool:
    return all(r.status != "fail" for r in reports)


def dumps(reports: Iterable[VerificationReport], timings: bool = False) -> str:
    docs = [r.to_json(timings) for r in reports]
    return json.dumps(docs, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit_json(reports: Iterable[VerificationReport], path: str | Path, timings: bool = False) -> None:
    """Write the reports as a UTF-8 JSON array; without timings the output is canonical."""
    Path(path).write_text(dumps(reports, timings), encoding="utf-8")


def summary_lines(reports: Iterable[VerificationReport]) -> list[str]:
    return [f"[{r.status.upper():7}] {r.suite:12} {r.anchor}" for r in reports]
