"""Idempotent calculus: the corner eBe and the quotient B/BeB of a basic algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .algebra import BasisAlgebra, adapted_algebra, cartan_matrix, check_algebra, ideal_span
from .exactring import rank_mod, row_basis_mod

__all__ = [
    "IdempotentSelection",
    "RecollementReport",
    "corner_algebra",
    "quotient_by_trace_ideal",
    "recollement_check",
]


@dataclass(frozen=True)
class IdempotentSelection:
    """A nonempty proper set of vertices; e is the sum of their idempotents."""

    n_vertices: int
    vertices: frozenset[int]

    def __post_init__(self) -> None:
        verts = frozenset(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("selection must be nonempty")
        if not verts < frozenset(range(self.n_vertices)):
            if verts - frozenset(range(self.n_vertices)):
                raise ValueError("selection contains vertices out of range")
            raise ValueError("selection must be a proper subset of the vertices")

    @classmethod
    def of(cls, a: BasisAlgebra, vertices: Iterable[int]) -> IdempotentSelection:
        return cls(a.n_vertices, frozenset(vertices))

    @property
    def complement(self) -> IdempotentSelection:
        return IdempotentSelection(
            self.n_vertices, frozenset(range(self.n_vertices)) - self.vertices
        )

    def ordered(self) -> list[int]:
        return sorted(self.vertices)


def _check(a: BasisAlgebra, s: IdempotentSelection) -> None:
    if s.n_vertices != a.n_vertices:
        raise ValueError("selection was made for a different algebra")
    report = check_algebra(a)
    if not report.ok:
        raise ValueError("algebra fails its checks: " + "; ".join(report.failures))


def _idempotent(a: BasisAlgebra, s: IdempotentSelection) -> np.ndarray:
    return sum((a.idempotent(v) for v in s.vertices), np.zeros(a.dim, dtype=np.int64)) % a.p


def corner_algebra(a: BasisAlgebra, s: IdempotentSelection) -> BasisAlgebra:
    """eBe on the selected idempotents and a basis of e rad(B) e.

    Radical basis elements of B fixed by x -> exe are used directly when they
    span; otherwise the projections of the radical basis are re-echelonized.
    """
    _check(a, s)
    p = a.p
    e = _idempotent(a, s)
    left, right = a.left_matrix(e), a.right_matrix(e)
    project = (left @ right) % p  # x -> e x e
    rad = a.radical_basis
    target = row_basis_mod((project @ rad.T).T % p, p) if rad.shape[0] else rad
    vertex_indices = {i for v in a.vertices for i in v}
    fixed = [
        i for i in range(a.dim)
        if i not in vertex_indices and np.array_equal(project[:, i], a.basis_vector(i))
    ]
    candidate = np.eye(a.dim, dtype=np.int64)[fixed]
    if len(fixed) == target.shape[0] and (
        not fixed or rank_mod(np.concatenate([target, candidate]), p) == len(fixed)
    ):
        radical = candidate
    else:
        radical = target
    idempotents = np.array([a.idempotent(v) for v in s.ordered()])
    return adapted_algebra(p, a.multiply, idempotents, radical)


def _complement_modulo(rows: np.ndarray, modulo: np.ndarray, p: int) -> np.ndarray:
    """Rows of ``rows`` extending a basis of ``modulo`` greedily."""
    keep = []
    current = modulo
    r = rank_mod(current, p) if current.shape[0] else 0
    for x in rows:
        trial = np.concatenate([current, x[None, :]]) if current.shape[0] else x[None, :]
        if rank_mod(trial, p) > r:
            keep.append(x)
            current, r = trial, r + 1
    return np.array(keep, dtype=np.int64).reshape(len(keep), rows.shape[1])


def quotient_by_trace_ideal(a: BasisAlgebra, s: IdempotentSelection) -> BasisAlgebra:
    """B / BeB on the surviving vertex idempotents and a radical complement."""
    _check(a, s)
    p = a.p
    ideal = ideal_span(a, _idempotent(a, s)[None, :])
    others = np.array([a.idempotent(v) for v in s.complement.ordered()])
    idempotents = _complement_modulo(others, ideal, p)
    base = np.concatenate([ideal, idempotents]) if ideal.shape[0] else idempotents
    radical = _complement_modulo(a.radical_basis, base, p)
    return adapted_algebra(p, a.multiply, idempotents, radical, modulo=ideal)


@dataclass(frozen=True)
class RecollementReport:
    n_vertices: int
    corner_vertices: int
    quotient_vertices: int
    corner_dim: int
    quotient_dim: int
    corner_cartan: list[list[int]]
    quotient_cartan: list[list[int]]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def recollement_check(a: BasisAlgebra, s: IdempotentSelection) -> RecollementReport:
    """Vertex counts add up, and both pieces are valid basic algebras."""
    corner = corner_algebra(a, s)
    quotient = quotient_by_trace_ideal(a, s)
    failures = []
    if a.n_vertices != corner.n_vertices + quotient.n_vertices:
        failures.append(
            f"vertex count {a.n_vertices} != {corner.n_vertices} + {quotient.n_vertices}"
        )
    for name, alg in (("corner", corner), ("quotient", quotient)):
        rep = check_algebra(alg)
        failures.extend(f"{name}: {f}" for f in rep.failures)
    return RecollementReport(
        n_vertices=a.n_vertices,
        corner_vertices=corner.n_vertices,
        quotient_vertices=quotient.n_vertices,
        corner_dim=corner.dim,
        quotient_dim=quotient.dim,
        corner_cartan=cartan_matrix(corner).tolist(),
        quotient_cartan=cartan_matrix(quotient).tolist(),
        failures=failures,
    )
