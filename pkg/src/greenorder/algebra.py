"""Split basic algebras over F_p given by structure constants, and their modules.

An algebra has a basis b_0..b_{d-1}; ``table[i, j]`` holds the coordinates of
b_i * b_j.  Vertex idempotents are sums of basis elements (one index each for
every algebra built in this package) and the Jacobson radical is the two-sided
ideal generated by the listed radical generators.  Modules are left modules
given by one action matrix per basis element.

Every simple module is one-dimensional, so composition multiplicities can be
read off as ranks of vertex idempotents acting on subquotients.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .exactring import (
    is_prime,
    nullspace_mod,
    rank_mod,
    row_basis_mod,
    solve_mod,
)

__all__ = [
    "BasisAlgebra",
    "LeftModule",
    "RadicalSeries",
    "AlgebraReport",
    "NotAModule",
    "check_algebra",
    "regular_module",
    "projective_module",
    "simple_module",
    "radical_series",
    "cartan_matrix",
    "ext1_dim",
    "syzygy",
    "is_isomorphic",
    "omega_orbit_period",
    "endomorphism_ring_is_local",
    "group_algebra_radical",
    "group_algebra_from_table",
    "adapted_algebra",
]

# largest field-element enumeration we are willing to do anywhere in here
ENUMERATION_BUDGET = 10**6


class NotAModule(ValueError):
    """Action matrices violate the module axioms."""


################################################################################
# algebras


@dataclass(frozen=True, eq=False)
class BasisAlgebra:
    p: int
    table: np.ndarray = field(repr=False)
    unit: np.ndarray = field(repr=False)
    vertices: tuple[tuple[int, ...], ...]
    radical_generators: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        table = np.asarray(self.table, dtype=np.int64) % self.p
        table.flags.writeable = False
        unit = np.asarray(self.unit, dtype=np.int64) % self.p
        unit.flags.writeable = False
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        object.__setattr__(self, "radical_generators", tuple(self.radical_generators))

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def idempotent(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n_vertices:
            raise IndexError(f"vertex {v} out of range")
        e = np.zeros(self.dim, dtype=np.int64)
        e[list(self.vertices[v])] = 1
        return e

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.table) % self.p

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> x*y in basis coordinates."""
        return np.einsum("i,ijk->kj", x, self.table) % self.p

    def right_matrix(self, y: np.ndarray) -> np.ndarray:
        """Matrix of x -> x*y in basis coordinates."""
        return np.einsum("j,ijk->ki", y, self.table) % self.p

    @functools.cached_property
    def radical_basis(self) -> np.ndarray:
        gens = np.eye(self.dim, dtype=np.int64)[list(self.radical_generators)]
        return ideal_span(self, gens)

    @property
    def radical_dim(self) -> int:
        return self.radical_basis.shape[0]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "dim": self.dim,
            "unit": [int(x) for x in self.unit],
            "vertices": [list(v) for v in self.vertices],
            "radical_generators": list(self.radical_generators),
            "table": self.table.tolist(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> BasisAlgebra:
        dim = doc["dim"]
        table = np.array(doc["table"], dtype=np.int64)
        if table.shape != (dim, dim, dim):
            raise ValueError(f"table has shape {table.shape}, expected {(dim,) * 3}")
        return cls(
            p=doc["p"],
            table=table,
            unit=doc["unit"],
            vertices=doc["vertices"],
            radical_generators=doc["radical_generators"],
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> BasisAlgebra:
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def ideal_span(a: BasisAlgebra, gens: np.ndarray) -> np.ndarray:
    """Row basis of the two-sided ideal generated by the rows of ``gens``."""
    p = a.p
    span = row_basis_mod(gens, p) if len(gens) else np.zeros((0, a.dim), np.int64)
    while True:
        if span.shape[0] == 0:
            return span
        # b_i * x and x * b_j for every basis element
        left = np.einsum("ijk,rj->rik", a.table, span).reshape(-1, a.dim)
        right = np.einsum("ijk,ri->rjk", a.table, span).reshape(-1, a.dim)
        new = row_basis_mod(np.concatenate([span, left % p, right % p]), p)
        if new.shape[0] == span.shape[0]:
            return new
        span = new


def _product_span(a: BasisAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.shape[0] == 0 or y.shape[0] == 0:
        return np.zeros((0, a.dim), dtype=np.int64)
    xt = np.tensordot(x, a.table, axes=(1, 0)) % a.p  # (r, j, k)
    prods = np.tensordot(y, xt, axes=(1, 1)).reshape(-1, a.dim) % a.p
    return row_basis_mod(prods, a.p)


def _is_nilpotent_ideal(a: BasisAlgebra, ideal: np.ndarray) -> bool:
    power = ideal
    for _ in range(a.dim + 1):
        if power.shape[0] == 0:
            return True
        nxt = _product_span(a, power, ideal)
        if nxt.shape[0] == power.shape[0]:
            return False
        power = nxt
    return power.shape[0] == 0


@dataclass
class AlgebraReport:
    checks: dict[str, bool]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def check_algebra(a: BasisAlgebra) -> AlgebraReport:
    p, d = a.p, a.dim
    checks: dict[str, bool] = {}
    failures: list[str] = []
    t = a.table

    flat = t.reshape(d * d, d)
    lhs = (flat @ t.reshape(d, d * d)).reshape(d, d, d, d) % p
    # b_i (b_j b_k): index the product of (j, k) first, then multiply by b_i
    rhs = (flat @ t.transpose(1, 0, 2).reshape(d, d * d)).reshape(d, d, d, d)
    rhs = rhs.transpose(2, 0, 1, 3) % p
    bad = np.argwhere(np.any(lhs != rhs, axis=3))
    checks["associativity"] = bad.size == 0
    if bad.size:
        i, j, k = bad[0]
        failures.append(f"(b{i} b{j}) b{k} != b{i} (b{j} b{k})")

    eye = np.eye(d, dtype=np.int64)
    unit_ok = bool(
        np.all(a.left_matrix(a.unit) == eye) and np.all(a.right_matrix(a.unit) == eye)
    )
    checks["unit"] = unit_ok
    if not unit_ok:
        failures.append("unit is not a two-sided identity")

    idem_ok = True
    total = np.zeros(d, dtype=np.int64)
    for v in range(a.n_vertices):
        e = a.idempotent(v)
        total = (total + e) % p
        for w in range(a.n_vertices):
            expected = e if v == w else np.zeros(d, dtype=np.int64)
            if np.any(a.multiply(e, a.idempotent(w)) != expected):
                idem_ok = False
                failures.append(f"e{v} e{w} != {'e' + str(v) if v == w else '0'}")
    if a.n_vertices and np.any(total != a.unit):
        idem_ok = False
        failures.append("vertex idempotents do not sum to the unit")
    checks["idempotents"] = idem_ok

    rad = a.radical_basis
    nil = _is_nilpotent_ideal(a, rad)
    checks["radical_nilpotent"] = nil
    if not nil:
        failures.append("radical ideal is not nilpotent")

    stacked = np.concatenate(
        [np.array([a.idempotent(v) for v in range(a.n_vertices)]).reshape(-1, d), rad]
    )
    split = rad.shape[0] + a.n_vertices == d and rank_mod(stacked, p) == d
    checks["split_basic"] = split
    if not split:
        failures.append(
            f"dim rad {rad.shape[0]} + {a.n_vertices} vertices does not give a "
            f"complement of dimension {d}"
        )
    return AlgebraReport(checks, failures)


def adapted_algebra(
    p: int,
    product,
    idempotents: np.ndarray,
    radical: np.ndarray,
    modulo: np.ndarray | None = None,
) -> BasisAlgebra:
    """Algebra on the basis (idempotents, radical basis), optionally modulo an ideal.

    ``product`` multiplies two ambient coordinate vectors.  Products are
    expressed in the new basis after discarding the component in the span of
    ``modulo``.
    """
    basis = np.concatenate([idempotents, radical]).astype(np.int64) % p
    n = basis.shape[0]
    ext = basis if modulo is None or len(modulo) == 0 else np.concatenate([basis, modulo])
    if rank_mod(ext, p) != ext.shape[0]:
        raise ValueError("adapted basis is not independent")
    prods = np.array([product(basis[i], basis[j]) for i in range(n) for j in range(n)])
    coords = solve_mod(ext.T, prods.T % p, p)
    if coords is None:
        raise ValueError("subspace is not closed under multiplication")
    table = coords[:n].T.reshape(n, n, n)
    s = idempotents.shape[0]
    unit = np.zeros(n, dtype=np.int64)
    unit[:s] = 1
    return BasisAlgebra(
        p=p,
        table=table,
        unit=unit,
        vertices=[(i,) for i in range(s)],
        radical_generators=range(s, n),
    )


################################################################################
# modules


@dataclass(frozen=True, eq=False)
class LeftModule:
    p: int
    action: np.ndarray = field(repr=False)  # shape (algebra dim, m, m)

    def __post_init__(self) -> None:
        act = np.asarray(self.action, dtype=np.int64) % self.p
        act.flags.writeable = False
        object.__setattr__(self, "action", act)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def act(self, x: np.ndarray) -> np.ndarray:
        """Matrix of an arbitrary algebra element."""
        return np.einsum("i,ijk->jk", x, self.action) % self.p


def module_errors(a: BasisAlgebra, m: LeftModule) -> list[str]:
    p, d = a.p, a.dim
    if m.action.shape[0] != d:
        return [f"module has {m.action.shape[0]} action matrices, algebra dim {d}"]
    errs = []
    if np.any(m.act(a.unit) != np.eye(m.dim, dtype=np.int64)):
        errs.append("unit does not act as identity")
    lhs = np.einsum("iab,jbc->ijac", m.action, m.action) % p
    rhs = np.einsum("ijk,kac->ijac", a.table, m.action) % p
    bad = np.argwhere(np.any(lhs != rhs, axis=(2, 3)))
    if bad.size:
        i, j = bad[0]
        errs.append(f"act(b{i}) act(b{j}) != act(b{i} b{j})")
    return errs


def _check_module(a: BasisAlgebra, m: LeftModule) -> None:
    errs = module_errors(a, m)
    if errs:
        raise NotAModule("not a module: " + "; ".join(errs))


def regular_module(a: BasisAlgebra) -> LeftModule:
    action = np.einsum("ijk->ikj", a.table)
    return LeftModule(a.p, action)


def submodule(m: LeftModule, basis: np.ndarray) -> LeftModule:
    """Restriction of ``m`` to the invariant subspace spanned by rows of ``basis``."""
    p = m.p
    k = basis.shape[0]
    d = m.action.shape[0]
    if k == 0:
        return LeftModule(p, np.zeros((d, 0, 0), dtype=np.int64))
    images = np.einsum("iab,rb->ira", m.action, basis) % p  # (d, k, m)
    coords = solve_mod(basis.T, images.reshape(-1, m.dim).T, p)
    if coords is None:
        raise NotAModule("subspace is not invariant")
    # coords[:, (i, r)] are the coordinates of act(b_i) basis_r
    action = coords.T.reshape(d, k, k).transpose(0, 2, 1)
    return LeftModule(p, action)


def quotient_module(m: LeftModule, sub: np.ndarray) -> LeftModule:
    """m / span(rows of ``sub``)."""
    p = m.p
    sub = row_basis_mod(sub, p) if len(sub) else np.zeros((0, m.dim), np.int64)
    comp = _complement(sub, m.dim, p)
    k = comp.shape[0]
    d = m.action.shape[0]
    if k == 0:
        return LeftModule(p, np.zeros((d, 0, 0), dtype=np.int64))
    ext = np.concatenate([comp, sub])
    images = np.einsum("iab,rb->ira", m.action, comp) % p
    coords = solve_mod(ext.T, images.reshape(-1, m.dim).T, p)
    action = coords[:k].T.reshape(d, k, k).transpose(0, 2, 1)
    return LeftModule(p, action)


def direct_sum(modules: Sequence[LeftModule]) -> LeftModule:
    p = modules[0].p
    d = modules[0].action.shape[0]
    n = sum(mod.dim for mod in modules)
    action = np.zeros((d, n, n), dtype=np.int64)
    off = 0
    for mod in modules:
        action[:, off : off + mod.dim, off : off + mod.dim] = mod.action
        off += mod.dim
    return LeftModule(p, action)


def _complement(sub: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the rows of ``sub`` to a basis."""
    rows = list(sub)
    rank = len(rows)
    comp = []
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        if rank_mod(np.array(rows + [e]), p) > rank:
            rows.append(e)
            comp.append(e)
            rank += 1
    return np.array(comp, dtype=np.int64).reshape(-1, n)


def projective_module(a: BasisAlgebra, v: int) -> LeftModule:
    """P_v = A e_v."""
    return submodule(regular_module(a), projective_basis(a, v))


def projective_basis(a: BasisAlgebra, v: int) -> np.ndarray:
    e = a.idempotent(v)
    return row_basis_mod(a.right_matrix(e).T, a.p)


def simple_module(a: BasisAlgebra, v: int) -> LeftModule:
    """S_v: b acts by the coefficient of e_v in the image of b in A/rad A."""
    idems = np.array([a.idempotent(w) for w in range(a.n_vertices)])
    ext = np.concatenate([idems, a.radical_basis])
    coords = solve_mod(ext.T, np.eye(a.dim, dtype=np.int64), a.p)
    if coords is None:
        raise ValueError("algebra is not split basic")
    action = coords[v].reshape(a.dim, 1, 1)
    return LeftModule(a.p, action)


################################################################################
# radical series and derived invariants


@dataclass(frozen=True)
class RadicalSeries:
    dims: tuple[int, ...]
    layers: tuple[tuple[int, ...], ...]

    @property
    def loewy_length(self) -> int:
        return len(self.layers)

    def factors(self) -> list[list[int]]:
        """Composition factors of each layer, by vertex, with repetition."""
        return [
            [v for v, mult in enumerate(layer) for _ in range(mult)]
            for layer in self.layers
        ]


def _radical_of(a: BasisAlgebra, m: LeftModule, span: np.ndarray) -> np.ndarray:
    if span.shape[0] == 0:
        return span
    mats = np.einsum("ri,iab->rab", a.radical_basis, m.action) % a.p
    images = np.einsum("rab,sb->rsa", mats, span).reshape(-1, m.dim) % a.p
    return row_basis_mod(images, a.p) if images.size else np.zeros((0, m.dim), np.int64)


def _vertex_dims(a: BasisAlgebra, m: LeftModule, span: np.ndarray) -> list[int]:
    out = []
    for v in range(a.n_vertices):
        if span.shape[0] == 0:
            out.append(0)
            continue
        ev = m.act(a.idempotent(v))
        out.append(rank_mod((ev @ span.T) % a.p, a.p))
    return out


def radical_series(a: BasisAlgebra, m: LeftModule) -> RadicalSeries:
    _check_module(a, m)
    span = np.eye(m.dim, dtype=np.int64)
    dims = [m.dim]
    layers = []
    prev = _vertex_dims(a, m, span)
    while span.shape[0]:
        nxt = _radical_of(a, m, span)
        if nxt.shape[0] == span.shape[0]:
            raise ValueError("radical series does not terminate; radical is wrong")
        cur = _vertex_dims(a, m, nxt)
        layers.append(tuple(x - y for x, y in zip(prev, cur)))
        dims.append(nxt.shape[0])
        span, prev = nxt, cur
    return RadicalSeries(tuple(dims), tuple(layers))


def cartan_matrix(a: BasisAlgebra) -> np.ndarray:
    """Entry (i, j) is the multiplicity of S_j in P_i."""
    c = np.zeros((a.n_vertices, a.n_vertices), dtype=np.int64)
    for i in range(a.n_vertices):
        series = radical_series(a, projective_module(a, i))
        c[i] = np.sum(np.array(series.layers, dtype=np.int64), axis=0)
    return c


def ext1_dim(a: BasisAlgebra, i: int, j: int) -> int:
    """Multiplicity of S_j in rad(P_i) / rad^2(P_i)."""
    for v in (i, j):
        if not 0 <= v < a.n_vertices:
            raise IndexError(f"vertex {v} out of range")
    layers = radical_series(a, projective_module(a, i)).layers
    return layers[1][j] if len(layers) > 1 else 0


def _top_generators(a: BasisAlgebra, m: LeftModule) -> list[tuple[int, np.ndarray]]:
    p = a.p
    full = np.eye(m.dim, dtype=np.int64)
    rad = _radical_of(a, m, full)
    gens = []
    for v in range(a.n_vertices):
        ev = m.act(a.idempotent(v))
        ev_rad = row_basis_mod((ev @ rad.T).T % p, p) if rad.shape[0] else rad
        rows = list(ev_rad)
        for x in row_basis_mod(ev.T, p):
            if rank_mod(np.array(rows + [x]), p) > len(rows):
                rows.append(x)
                gens.append((v, x))
    return gens


def syzygy(a: BasisAlgebra, m: LeftModule) -> LeftModule:
    """Kernel of the projective cover of ``m``.

    Projective summands of ``m`` are not split off first, so this is the
    minimal syzygy only when ``m`` has none.
    """
    _check_module(a, m)
    p = a.p
    gens = _top_generators(a, m)
    if not gens:
        return LeftModule(p, np.zeros((a.dim, 0, 0), dtype=np.int64))
    blocks = []
    columns = []
    for v, x in gens:
        basis = projective_basis(a, v)
        blocks.append(submodule(regular_module(a), basis))
        for y in basis:
            columns.append((m.act(y) @ x) % p)
    phi = np.array(columns, dtype=np.int64).T  # m.dim x dim P
    cover = direct_sum(blocks)
    return submodule(cover, nullspace_mod(phi, p))


def _intertwiners(a: BasisAlgebra, m1: LeftModule, m2: LeftModule) -> np.ndarray:
    """Basis of Hom_A(m1, m2) as flattened m2.dim x m1.dim matrices."""
    n1, n2 = m1.dim, m2.dim
    eqs = [
        np.kron(np.eye(n2, dtype=np.int64), m1.action[i].T)
        - np.kron(m2.action[i], np.eye(n1, dtype=np.int64))
        for i in range(a.dim)
    ]
    return nullspace_mod(np.concatenate(eqs) % a.p, a.p)


def _combinations(basis: np.ndarray, p: int, rng: np.random.Generator, tries: int):
    r = basis.shape[0]
    if p**r <= 4096:
        for coeffs in itertools.product(range(p), repeat=r):
            yield (np.array(coeffs, dtype=np.int64) @ basis) % p
    else:
        for _ in range(tries):
            yield (rng.integers(0, p, size=r) @ basis) % p


def is_isomorphic(a: BasisAlgebra, m1: LeftModule, m2: LeftModule) -> bool:
    if m1.dim != m2.dim:
        return False
    if m1.dim == 0:
        return True
    s1, s2 = radical_series(a, m1), radical_series(a, m2)
    if s1 != s2:
        return False
    homs = _intertwiners(a, m1, m2)
    if homs.shape[0] == 0:
        return False
    n = m1.dim
    rng = np.random.default_rng(0)
    for x in _combinations(homs, a.p, rng, 512):
        if rank_mod(x.reshape(n, n), a.p) == n:
            return True
    return False


def omega_orbit_period(a: BasisAlgebra, i: int, bound: int) -> int | None:
    """Least t <= bound with Omega^t(S_i) isomorphic to S_i.

    Returns 0 when S_i is projective (its syzygy vanishes) and None when no
    period is found within ``bound`` steps.
    """
    s = simple_module(a, i)
    m = s
    for t in range(1, bound + 1):
        m = syzygy(a, m)
        if m.dim == 0:
            return 0
        if is_isomorphic(a, m, s):
            return t
    return None


def endomorphism_ring_is_local(a: BasisAlgebra, m: LeftModule) -> bool:
    """Every endomorphism is invertible or nilpotent."""
    n = m.dim
    if n == 0:
        return False
    homs = _intertwiners(a, m, m)
    rng = np.random.default_rng(0)
    for x in _combinations(homs, a.p, rng, 512):
        mat = x.reshape(n, n)
        if rank_mod(mat, a.p) == n:
            continue
        power = np.eye(n, dtype=np.int64)
        for _ in range(n):
            power = (power @ mat) % a.p
        if np.any(power):
            return False
    return True


################################################################################
# group algebras by brute force


def _check_group(mult: np.ndarray) -> int:
    n = mult.shape[0]
    if mult.shape != (n, n) or set(np.unique(mult)) - set(range(n)):
        raise ValueError("not a group: table is not an n x n table on 0..n-1")
    left_ids = [e for e in range(n) if np.all(mult[e] == np.arange(n))]
    right_ids = [e for e in range(n) if np.all(mult[:, e] == np.arange(n))]
    ids = set(left_ids) & set(right_ids)
    if not ids:
        raise ValueError("not a group: no identity")
    ident = ids.pop()
    # mult[mult[g, h], k] against mult[g, mult[h, k]]
    if np.any(mult[mult, :] != mult[:, mult]):
        raise ValueError("not a group: multiplication is not associative")
    for g in range(n):
        if ident not in mult[g] or ident not in mult[:, g]:
            raise ValueError(f"not a group: element {g} has no inverse")
    return ident


def _group_table(mult: np.ndarray, p: int) -> np.ndarray:
    n = mult.shape[0]
    table = np.zeros((n, n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            table[g, h, mult[g, h]] = 1
    return table


def group_algebra_radical(mult_table: Sequence[Sequence[int]], p: int) -> np.ndarray:
    """Jacobson radical of F_p G by exhaustive search.

    An element lies in the radical iff the two-sided ideal it generates is
    nilpotent; every one of the p^|G| elements is tested.
    """
    mult = np.array(mult_table, dtype=np.int64)
    ident = _check_group(mult)
    n = mult.shape[0]
    if p**n > ENUMERATION_BUDGET:
        raise ValueError(f"search budget exceeded: {p}^{n} > {ENUMERATION_BUDGET}")
    unit = np.zeros(n, dtype=np.int64)
    unit[ident] = 1
    a = BasisAlgebra(p, _group_table(mult, p), unit, [], [])
    # each x spans the ideal generated by {g x h}; a two-sided ideal of F_p G
    # is determined by its image under these n^2 permutation matrices
    lr = np.array(
        [a.left_matrix(a.basis_vector(g)) @ a.right_matrix(a.basis_vector(h))
         for g in range(n) for h in range(n)]
    ) % p
    verdict: dict[bytes, bool] = {}
    members = []
    for coeffs in itertools.product(range(p), repeat=n):
        x = np.array(coeffs, dtype=np.int64)
        if not x.any():
            continue
        ideal = row_basis_mod(lr @ x % p, p)
        key = ideal.tobytes() + bytes([ideal.shape[0]])
        if key not in verdict:
            verdict[key] = _is_nilpotent_ideal(a, ideal)
        if verdict[key]:
            members.append(x)
    if not members:
        return np.zeros((0, n), dtype=np.int64)
    return row_basis_mod(np.array(members), p)


def _lift_idempotent(a: BasisAlgebra, x: np.ndarray, max_iter: int = 64) -> np.ndarray:
    p = a.p
    for _ in range(max_iter):
        x2 = a.multiply(x, x)
        if np.all(x2 == x):
            return x
        x3 = a.multiply(x2, x)
        x = (3 * x2 - 2 * x3) % p
    raise ValueError(f"idempotent lifting did not converge in {max_iter} steps")


def group_algebra_from_table(mult_table: Sequence[Sequence[int]], p: int) -> BasisAlgebra:
    """F_p G rebased onto (lifted primitive idempotents, radical basis).

    Requires F_p G to be split basic; the semisimple quotient is searched
    exhaustively for its primitive idempotents.
    """
    mult = np.array(mult_table, dtype=np.int64)
    ident = _check_group(mult)
    n = mult.shape[0]
    rad = group_algebra_radical(mult, p)
    unit = np.zeros(n, dtype=np.int64)
    unit[ident] = 1
    full = BasisAlgebra(p, _group_table(mult, p), unit, [], [])

    comp = _complement(rad, n, p)
    s = comp.shape[0]
    ext = np.concatenate([comp, rad]) if rad.shape[0] else comp

    def reduce(x: np.ndarray) -> np.ndarray:
        return solve_mod(ext.T, x, p)[:s]

    elems = [np.array(c, dtype=np.int64) for c in itertools.product(range(p), repeat=s)]
    lifts = [(e @ comp) % p for e in elems]
    idems = [
        e for e, x in zip(elems, lifts)
        if e.any() and np.all(reduce(full.multiply(x, x)) == e)
    ]

    def qmul(e: np.ndarray, f: np.ndarray) -> np.ndarray:
        return reduce(full.multiply((e @ comp) % p, (f @ comp) % p))

    primitive = [
        e for e in idems
        if all(
            np.all(f == e) or not np.all(qmul(qmul(e, f), e) == f)
            for f in idems
        )
    ]
    corner_dims = []
    for e in primitive:
        corner = np.array([qmul(qmul(e, f), e) for f in elems])
        corner_dims.append(rank_mod(corner, p))
    if len(primitive) != s or any(c != 1 for c in corner_dims):
        raise ValueError("group algebra is not split basic over F_p")

    lifted = []
    acc = np.zeros(n, dtype=np.int64)
    for e in primitive[:-1]:
        comp_acc = (unit - acc) % p
        x = (e @ comp) % p
        x = full.multiply(full.multiply(comp_acc, x), comp_acc)
        x = _lift_idempotent(full, x)
        lifted.append(x)
        acc = (acc + x) % p
    lifted.append((unit - acc) % p)
    return adapted_algebra(p, full.multiply, np.array(lifted), rad)


def symmetric_group_table(n: int) -> list[list[int]]:
    """Multiplication table of S_n on permutations in lexicographic order."""
    perms = list(itertools.permutations(range(n)))
    index = {q: i for i, q in enumerate(perms)}
    # (g h)(k) = g(h(k))
    return [
        [index[tuple(g[h[k]] for k in range(n))] for h in perms] for g in perms
    ]


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(g + h) % n for h in range(n)] for g in range(n)]
