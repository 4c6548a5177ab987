"""Brauer trees, their predicted projective modules, and a walk-basis algebra.

Edges index the simple modules.  At a vertex v the cyclic order sigma_v lists
the edges around v; walking l steps from edge e around v lands on
sigma_v^l(e).  Edges and vertices are 0-based throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .algebra import BasisAlgebra
from .exactring import is_prime

__all__ = [
    "BrauerTree",
    "ProjectivePrediction",
    "stem",
    "star",
    "predict_projectives",
    "to_algebra",
    "predicted_cartan",
    "schur_basic_prediction",
]


@dataclass(frozen=True)
class BrauerTree:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    cyclic: Mapping[int, tuple[int, ...]]
    exceptional: tuple[int, int] | None = None  # (vertex, multiplicity)

    def __post_init__(self) -> None:
        edges = tuple(tuple(e) for e in self.edges)
        cyclic = {int(v): tuple(order) for v, order in self.cyclic.items()}
        exc = self.exceptional
        if exc is not None:
            vertex, mu = exc
            if mu < 1:
                raise ValueError("exceptional multiplicity must be >= 1")
            # multiplicity one is the same as having no exceptional vertex
            exc = None if mu == 1 else (int(vertex), int(mu))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "cyclic", cyclic)
        object.__setattr__(self, "exceptional", exc)
        self._validate()

    def _validate(self) -> None:
        n = self.n_vertices
        if n < 2 or len(self.edges) != n - 1:
            raise ValueError("a tree on n vertices needs exactly n - 1 >= 1 edges")
        seen = set()
        for v, w in self.edges:
            if not (0 <= v < n and 0 <= w < n) or v == w:
                raise ValueError(f"bad edge {(v, w)}")
            key = frozenset((v, w))
            if key in seen:
                raise ValueError(f"multiple edge {(v, w)}")
            seen.add(key)
        # n - 1 edges and connected means acyclic
        reach = {0}
        frontier = [0]
        while frontier:
            u = frontier.pop()
            for v, w in self.edges:
                for a, b in ((v, w), (w, v)):
                    if a == u and b not in reach:
                        reach.add(b)
                        frontier.append(b)
        if len(reach) != n:
            raise ValueError("graph is not connected")
        for v in range(n):
            order = self.cyclic.get(v)
            if order is None or sorted(order) != sorted(self.incident(v)):
                raise ValueError(f"cyclic order at vertex {v} is not a cycle on E_v")
        if self.exceptional is not None and not 0 <= self.exceptional[0] < n:
            raise ValueError("exceptional vertex out of range")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e]

    def multiplicity(self, v: int) -> int:
        if self.exceptional is not None and self.exceptional[0] == v:
            return self.exceptional[1]
        return 1

    def cycle_length(self, v: int) -> int:
        """Length of a full walk around v: mu_v * |E_v|."""
        return self.multiplicity(v) * len(self.cyclic[v])

    def sigma(self, v: int, e: int, steps: int = 1) -> int:
        order = self.cyclic[v]
        return order[(order.index(e) + steps) % len(order)]

    def to_json(self) -> dict:
        return {
            "vertices": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "cyclic": {str(v): list(o) for v, o in sorted(self.cyclic.items())},
            "exceptional": None
            if self.exceptional is None
            else {"vertex": self.exceptional[0], "mu": self.exceptional[1]},
        }

    @classmethod
    def from_json(cls, doc: dict) -> BrauerTree:
        exc = doc.get("exceptional")
        return cls(
            n_vertices=doc["vertices"],
            edges=doc["edges"],
            cyclic={int(v): o for v, o in doc["cyclic"].items()},
            exceptional=None if exc is None else (exc["vertex"], exc["mu"]),
        )

    @classmethod
    def load(cls, path: str | Path) -> BrauerTree:
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def stem(n: int) -> BrauerTree:
    """Path with n edges; edge i joins vertices i and i + 1."""
    if n < 1:
        raise ValueError("a stem needs at least one edge")
    edges = [(i, i + 1) for i in range(n)]
    cyclic = {v: tuple(i for i in (v - 1, v) if 0 <= i < n) for v in range(n + 1)}
    return BrauerTree(n + 1, edges, cyclic)


def star(k: int, exceptional_mu: int = 1) -> BrauerTree:
    """k edges around a center vertex 0, cyclically ordered 0, 1, ..., k-1."""
    edges = [(0, i + 1) for i in range(k)]
    cyclic = {0: tuple(range(k))}
    cyclic.update({i + 1: (i,) for i in range(k)})
    return BrauerTree(k + 1, edges, cyclic, (0, exceptional_mu))


@dataclass(frozen=True)
class ProjectivePrediction:
    edge: int
    top: int
    strands: tuple[tuple[int, ...], ...]
    socle: int

    @property
    def length(self) -> int:
        return 2 + sum(len(s) for s in self.strands)

    def layers(self) -> list[list[int]]:
        """Radical layers: top, strands read in parallel, then the socle."""
        depth = max((len(s) for s in self.strands), default=0)
        middle = [
            sorted(s[k] for s in self.strands if k < len(s)) for k in range(depth)
        ]
        return [[self.top], *middle, [self.socle]]

    def factors(self) -> list[int]:
        return [f for layer in self.layers() for f in layer]


def predict_projectives(t: BrauerTree) -> list[ProjectivePrediction]:
    out = []
    for e, (v1, v2) in enumerate(t.edges):
        strands = tuple(
            tuple(t.sigma(v, e, i + 1) for i in range(t.cycle_length(v) - 1))
            for v in (v1, v2)
        )
        out.append(ProjectivePrediction(e, e, strands, e))
    return out


def _cartan_from(preds: Sequence[ProjectivePrediction], n: int) -> np.ndarray:
    c = np.zeros((n, n), dtype=np.int64)
    for i, pred in enumerate(preds):
        for f in pred.factors():
            c[i, f] += 1
    return c


def predicted_cartan(t: BrauerTree) -> np.ndarray:
    return _cartan_from(predict_projectives(t), t.n_edges)


def to_algebra(t: BrauerTree, p: int = 2) -> BasisAlgebra:
    """Brauer tree algebra over F_p on the walk basis.

    Basis: an idempotent per edge, the proper walks w(e, v, l) for
    1 <= l < mu_v |E_v|, and one socle element per edge standing for both
    full walks.  w(e, v, l) starts at e and ends at sigma_v^l(e); products
    concatenate walks around the same vertex and vanish otherwise.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    index: dict[tuple, int] = {}
    for e in range(t.n_edges):
        index[("id", e)] = len(index)
    for e, ends in enumerate(t.edges):
        for v in ends:
            for length in range(1, t.cycle_length(v)):
                index[("walk", e, v, length)] = len(index)
    for e in range(t.n_edges):
        index[("soc", e)] = len(index)
    d = len(index)

    def walk(e: int, v: int, length: int):
        if length == 0:
            return ("id", e)
        full = t.cycle_length(v)
        if length == full:
            return ("soc", e)
        if length > full:
            return None
        return ("walk", e, v, length)

    def source_target(key) -> tuple[int, int]:
        if key[0] in ("id", "soc"):
            return key[1], key[1]
        _, e, v, length = key
        return e, t.sigma(v, e, length)

    def product(x, y):
        # x * y: first y, then x
        sy, ty = source_target(y)
        sx, tx = source_target(x)
        if sx != ty:
            return None
        if x[0] == "id":
            return y
        if y[0] == "id":
            return x
        if x[0] == "soc" or y[0] == "soc":
            return None
        _, _, vx, lx = x
        _, e, vy, ly = y
        if vx != vy:
            return None
        return walk(e, vy, ly + lx)

    table = np.zeros((d, d, d), dtype=np.int64)
    for x, i in index.items():
        for y, j in index.items():
            z = product(x, y)
            if z is not None:
                table[i, j, index[z]] = 1
    unit = np.zeros(d, dtype=np.int64)
    unit[: t.n_edges] = 1
    return BasisAlgebra(
        p=p,
        table=table,
        unit=unit,
        vertices=[(e,) for e in range(t.n_edges)],
        radical_generators=range(t.n_edges, d),
    )


def schur_basic_prediction(p: int) -> list[ProjectivePrediction]:
    """Projective series of the basic algebra of the Schur algebra S(p, p) mod p.

    Simples are indexed 0..p-1: a uniserial [S_0; S_1; S_0], diamonds around
    S_i for 0 < i < p-1, and a uniserial [S_{p-1}; S_{p-2}] of length two.
    """
    if p < 5 or not is_prime(p):
        raise ValueError("requires a prime p >= 5")
    preds = [ProjectivePrediction(0, 0, ((1,),), 0)]
    for i in range(1, p - 1):
        preds.append(ProjectivePrediction(i, i, ((i - 1,), (i + 1,)), i))
    preds.append(ProjectivePrediction(p - 1, p - 1, (), p - 2))
    return preds


def schur_basic_cartan(p: int) -> np.ndarray:
    return _cartan_from(schur_basic_prediction(p), p)
