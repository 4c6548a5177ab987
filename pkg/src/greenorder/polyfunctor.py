"""Concrete polynomial functors on free abelian groups.

Functors are described by a small grammar::

    id | const | tensor:n | sym:n | ext:n | lin:m:n | sum(spec, spec, ...)

``lin:m:n`` is the linearization R[Hom(Z^m, -)] / I^(n+1).  Dimensions at Z^k
are closed forms; cross effects come from inverting the binomial
decomposition F(Z^k) = F(0) + sum_j C(k, j) c_j.
"""

from __future__ import annotations

import itertools
import math
import re
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exactring import ExactMatrix, Ring, is_prime, nullspace_mod

__all__ = [
    "PolyFunctorSpec",
    "CrossEffectTable",
    "LemmaCheck",
    "parse_functor",
    "dim_at",
    "cross_effect_dims",
    "degree_of",
    "matrix_action",
    "check_p_alpha_vanishes",
    "check_mod_p_invariance",
    "hom_dim_projectivity_identity",
    "cross_effect_hom_identity",
    "projective_cover_bookkeeping",
    "tensor_end_dim",
]

KINDS = ("id", "const", "tensor", "sym", "ext", "lin", "sum")


@dataclass(frozen=True)
class PolyFunctorSpec:
    kind: str
    n: int = 0
    m: int = 1
    summands: tuple[PolyFunctorSpec, ...] = ()
    p: int | None = None  # None: values in Z, else in F_p

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown functor constructor {self.kind!r}")
        if self.n < 0:
            raise ValueError("degree parameter must be >= 0")
        if self.m < 1:
            raise ValueError("linearization rank m must be >= 1")
        if self.kind == "sum" and not self.summands:
            raise ValueError("sum needs at least one summand")
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def identity(cls) -> PolyFunctorSpec:
        return cls("id")

    @classmethod
    def constant(cls) -> PolyFunctorSpec:
        return cls("const")

    @classmethod
    def tensor(cls, n: int) -> PolyFunctorSpec:
        return cls("tensor", n)

    @classmethod
    def sym(cls, n: int) -> PolyFunctorSpec:
        return cls("sym", n)

    @classmethod
    def ext(cls, n: int) -> PolyFunctorSpec:
        return cls("ext", n)

    @classmethod
    def lin(cls, m: int, n: int) -> PolyFunctorSpec:
        return cls("lin", n, m)

    @classmethod
    def direct_sum(cls, *parts: PolyFunctorSpec) -> PolyFunctorSpec:
        return cls("sum", summands=tuple(parts))

    def over(self, p: int | None) -> PolyFunctorSpec:
        return PolyFunctorSpec(
            self.kind, self.n, self.m, tuple(s.over(p) for s in self.summands), p
        )

    def parameter_bound(self) -> int:
        if self.kind == "sum":
            return max(s.parameter_bound() for s in self.summands)
        return {"id": 1, "const": 0}.get(self.kind, self.n)

    def __str__(self) -> str:
        if self.kind in ("id", "const"):
            return self.kind
        if self.kind == "lin":
            return f"lin:{self.m}:{self.n}"
        if self.kind == "sum":
            return "sum(" + ",".join(str(s) for s in self.summands) + ")"
        return f"{self.kind}:{self.n}"


_TOKEN = re.compile(r"\s*([A-Za-z]+(?::\d+)*|\(|\)|,)")


def parse_functor(text: str, p: int | None = None) -> PolyFunctorSpec:
    """Parse the functor grammar; raises ValueError on malformed input."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ValueError(f"cannot parse functor at {text[pos:]!r}")
        tokens.append(match.group(1))
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def atom(tok: str) -> PolyFunctorSpec:
        name, *nums = tok.split(":")
        args = [int(x) for x in nums]
        arity = {"id": 0, "const": 0, "tensor": 1, "sym": 1, "ext": 1, "lin": 2}
        if name not in arity:
            raise ValueError(f"unknown functor constructor {name!r}")
        if len(args) != arity[name]:
            raise ValueError(f"{name} takes {arity[name]} parameter(s), got {len(args)}")
        if name == "lin":
            return PolyFunctorSpec.lin(*args)
        return PolyFunctorSpec(name, *args)

    def parse(i: int) -> tuple[PolyFunctorSpec, int]:
        if i >= len(tokens):
            raise ValueError("unexpected end of functor spec")
        tok = tokens[i]
        if tok == "sum":
            if i + 1 >= len(tokens) or tokens[i + 1] != "(":
                raise ValueError("expected '(' after sum")
            parts = []
            i += 2
            while True:
                part, i = parse(i)
                parts.append(part)
                if i >= len(tokens):
                    raise ValueError("unclosed sum(")
                if tokens[i] == ")":
                    return PolyFunctorSpec.direct_sum(*parts), i + 1
                if tokens[i] != ",":
                    raise ValueError(f"expected ',' or ')', got {tokens[i]!r}")
                i += 1
        if tok in "(),":
            raise ValueError(f"unexpected {tok!r}")
        return atom(tok), i + 1

    spec, end = parse(0)
    if end != len(tokens):
        raise ValueError(f"trailing input after functor spec: {tokens[end:]}")
    return spec.over(p)


################################################################################
# dimensions and cross effects


def dim_at(f: PolyFunctorSpec, k: int) -> int:
    """Rank of F(Z^k)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if f.kind == "id":
        return k
    if f.kind == "const":
        return 1
    if f.kind == "tensor":
        return k**f.n
    if f.kind == "sym":
        return math.comb(k + f.n - 1, f.n) if f.n else 1
    if f.kind == "ext":
        return math.comb(k, f.n)
    if f.kind == "lin":
        # truncated polynomial ring in mk augmentation variables
        return math.comb(f.m * k + f.n, f.n)
    return sum(dim_at(s, k) for s in f.summands)


@dataclass(frozen=True)
class CrossEffectTable:
    """c_j = dim F^(j-1)(Z|...|Z) for j = 1..J; ``offset`` is dim F(0)."""

    spec: PolyFunctorSpec
    offset: int
    values: tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        if j < 1:
            raise IndexError("cross effects are indexed from 1")
        return self.values[j - 1]

    def predicted_dim(self, k: int) -> int:
        return self.offset + sum(math.comb(k, j) * c for j, c in enumerate(self.values, 1))


def cross_effect_dims(f: PolyFunctorSpec, slots: int) -> CrossEffectTable:
    if slots < 1:
        raise ValueError("need at least one slot")
    dims = [dim_at(f, i) for i in range(slots + 1)]
    values = tuple(
        sum((-1) ** (j - i) * math.comb(j, i) * dims[i] for i in range(j + 1))
        for j in range(1, slots + 1)
    )
    table = CrossEffectTable(f, dims[0], values)
    for k in range(slots + 1):
        if table.predicted_dim(k) != dims[k]:
            raise AssertionError(f"binomial decomposition fails at k={k}")
    if any(c < 0 for c in values):
        raise AssertionError("negative cross effect")
    return table


def degree_of(f: PolyFunctorSpec, bound: int) -> int:
    """Largest j <= bound with c_j != 0 (0 if there is none)."""
    if bound < 1:
        return 0
    table = cross_effect_dims(f, bound)
    return max((j for j, c in enumerate(table.values, 1) if c), default=0)


################################################################################
# matrix actions


def _det(m: list[list[int]]) -> int:
    """Fraction-free (Bareiss) integer determinant."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _sym_action(a: list[list[int]], n: int) -> list[list[int]]:
    rows, cols = len(a), len(a[0]) if a else 0
    out_basis = list(itertools.combinations_with_replacement(range(rows), n))
    index = {mono: i for i, mono in enumerate(out_basis)}
    result = [[0] * math.comb(cols + n - 1, n) for _ in out_basis]
    for col, mono in enumerate(itertools.combinations_with_replacement(range(cols), n)):
        # expand prod_j (sum_r a[r][i_j] x_r)
        poly: Counter = Counter({(): 1})
        for i in mono:
            nxt: Counter = Counter()
            for word, coeff in poly.items():
                for r in range(rows):
                    if a[r][i]:
                        nxt[tuple(sorted((*word, r)))] += coeff * a[r][i]
            poly = nxt
        for word, coeff in poly.items():
            result[index[word]][col] += coeff
    return result


def _ext_action(a: list[list[int]], n: int) -> list[list[int]]:
    rows, cols = len(a), len(a[0]) if a else 0
    return [
        [_det([[a[r][c] for c in cs] for r in rs]) for cs in itertools.combinations(range(cols), n)]
        for rs in itertools.combinations(range(rows), n)
    ]


def _tensor_action(a: list[list[int]], n: int) -> np.ndarray:
    bound = max((abs(x) for row in a for x in row), default=0)
    # machine integers are exact while every n-fold product fits
    dtype = np.int64 if bound**n < 2**62 else object
    out = np.ones((1, 1), dtype=dtype)
    arr = np.array(a, dtype=dtype).reshape(len(a), len(a[0]) if a else 0)
    for _ in range(n):
        out = np.kron(out, arr)
    return out


def _integer_action(f: PolyFunctorSpec, a: list[list[int]]) -> list[list[int]] | np.ndarray:
    rows, cols = len(a), len(a[0]) if a else 0
    if f.kind == "id":
        return a
    if f.kind == "const":
        return [[1]]
    if f.kind == "tensor":
        return _tensor_action(a, f.n)
    if f.kind == "sym":
        return _sym_action(a, f.n)
    if f.kind == "ext":
        return _ext_action(a, f.n)
    if f.kind == "sum":
        blocks = [_integer_action(s, a) for s in f.summands]
        total_r = sum(len(b) for b in blocks)
        total_c = sum(dim_at(s, cols) for s in f.summands)
        out = [[0] * total_c for _ in range(total_r)]
        r0 = c0 = 0
        for s, b in zip(f.summands, blocks):
            for i, row in enumerate(b):
                out[r0 + i][c0 : c0 + len(row)] = [int(x) for x in row]
            r0 += dim_at(s, rows)
            c0 += dim_at(s, cols)
        return out
    raise ValueError(f"matrix action is not implemented for {f}")


def matrix_action(f: PolyFunctorSpec, a: Sequence[Sequence[int]]) -> ExactMatrix:
    """F(A) on the standard basis (tensor words, sorted monomials, sorted minors).

    A is an integer matrix of a map Z^cols -> Z^rows; the result is reduced
    mod p when the functor takes values in F_p.
    """
    rows = [[int(x) for x in r] for r in a]
    if not rows or not rows[0]:
        raise ValueError("need a non-empty integer matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    out = _as_array(_integer_action(f, rows)).tolist()
    ring = Ring() if f.p is None else Ring.fp(f.p)
    return ExactMatrix.from_rows(ring, out)


################################################################################
# the mod-p lemmas


@dataclass(frozen=True)
class LemmaCheck:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def _require_hypotheses(f: PolyFunctorSpec, p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if dim_at(f, 0) != 0:
        raise ValueError("hypothesis violated: F(0) != 0")
    if degree_of(f, p + f.parameter_bound()) >= p:
        raise ValueError("hypothesis violated: degree ≥ p")


def _as_array(m) -> np.ndarray:
    if isinstance(m, np.ndarray):
        return m
    arr = np.array(m, dtype=object)
    return arr.reshape(len(m), -1) if len(m) else arr.reshape(0, 0)


def _first_nonzero(m: np.ndarray, p: int) -> dict | None:
    hits = np.argwhere(m % p != 0)
    if not len(hits):
        return None
    i, j = (int(x) for x in hits[0])
    return {"row": i, "col": j, "value": int(m[i, j] % p)}


def check_p_alpha_vanishes(
    f: PolyFunctorSpec, a: Sequence[Sequence[int]], p: int
) -> LemmaCheck:
    """F(p A) vanishes mod p."""
    _require_hypotheses(f, p)
    scaled = [[p * int(x) for x in row] for row in a]
    witness = _first_nonzero(_as_array(_integer_action(f, scaled)), p)
    return LemmaCheck(witness is None, witness)


def check_mod_p_invariance(
    f: PolyFunctorSpec, a: Sequence[Sequence[int]], g: Sequence[Sequence[int]], p: int
) -> LemmaCheck:
    """F(A + p G) agrees with F(A) mod p."""
    _require_hypotheses(f, p)
    a = [[int(x) for x in row] for row in a]
    shifted = [[x + p * int(y) for x, y in zip(r, s)] for r, s in zip(a, g)]
    fa, fb = _as_array(_integer_action(f, a)), _as_array(_integer_action(f, shifted))
    witness = _first_nonzero(fb - fa, p)
    return LemmaCheck(witness is None, witness)


################################################################################
# Hom-dimension identities


def hom_dim_projectivity_identity(n: int, m: int, f: PolyFunctorSpec) -> bool:
    """dim F(Z^m) equals its binomial expansion in the cross effects of F."""
    if degree_of(f, n + f.parameter_bound()) > n:
        raise ValueError(f"degree of {f} exceeds {n}: identity not asserted")
    table = cross_effect_dims(f, max(n, 1))
    return dim_at(f, m) == table.predicted_dim(m)


def _hom_target(n: int, g: PolyFunctorSpec) -> int:
    if degree_of(g, n + g.parameter_bound()) < n:
        return 0
    if g.kind == "sum":
        # top cross effects add up over summands
        return sum(_hom_target(n, s) for s in g.summands)
    if g.kind == "id" and n == 1:
        return 1
    if g.kind in ("sym", "ext") and g.n == n:
        return 1
    if g.kind == "tensor" and g.n == n:
        return math.factorial(n)
    raise ValueError(f"no declared Hom-dimension target for {g} at n={n}")


def cross_effect_hom_identity(n: int, g: PolyFunctorSpec) -> bool:
    """The n-slot cross effect of G has the expected dimension."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if degree_of(g, n + g.parameter_bound()) > n:
        raise ValueError(f"degree of {g} exceeds {n}")
    return cross_effect_dims(g, n)[n] == _hom_target(n, g)


def projective_cover_bookkeeping(p: int, k: int) -> dict[str, int]:
    """Dimensions at Z^k of the non-semisimple summand M of lin:1:p and its heart L.

    The degree-i simple summands for 2 <= i < p are counted as Sym^i, and M
    has composition factors F_p (x) id, L, F_p (x) id.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 0:
        raise ValueError("k must be >= 0")
    dim_m = math.comb(k + p, p) - 1 - sum(math.comb(k + i - 1, i) for i in range(2, p))
    dim_l = dim_m - 2 * k
    if dim_m < 0 or dim_l < 0:
        raise AssertionError(f"negative dimension: dimM={dim_m}, dimL={dim_l}")
    return {"dimM": dim_m, "dimL": dim_l}


################################################################################
# Schur-Weyl commutant


def _primitive_root(p: int) -> int:
    return next(
        x for x in range(1, p)
        if len({pow(x, e, p) for e in range(1, p)}) == p - 1
    )


def _generators(k: int, p: int) -> list[np.ndarray]:
    """Matrices generating the monoid M_k(F_p)."""
    gens = []
    eye = np.eye(k, dtype=np.int64)
    if k >= 2:
        gens.append(eye[[1, 0, *range(2, k)]])  # transposition
        gens.append(eye[[*range(1, k), 0]])  # k-cycle
        t = eye.copy()
        t[0, 1] = 1
        gens.append(t)
    lam = _primitive_root(p)
    d = eye.copy()
    d[0, 0] = lam
    gens.append(d)
    z = eye.copy()
    z[k - 1, k - 1] = 0
    gens.append(z)
    return gens


def tensor_end_dim(n: int, k: int, p: int) -> int:
    """dim over F_p of the commutant of all A^(x)n, A in M_k(F_p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    if k < n:
        warnings.warn("pre-stable range: k < n", stacklevel=2)
    words = list(itertools.product(range(k), repeat=n))
    size = len(words)
    # commuting with diag(1_S)^(x)n for every S forces equal supports
    unknowns = [
        (r, c)
        for r, wr in enumerate(words)
        for c, wc in enumerate(words)
        if set(wr) == set(wc)
    ]
    space = np.eye(len(unknowns), dtype=np.int64)  # rows: current solution basis
    for a in _generators(k, p):
        t = np.ones((1, 1), dtype=np.int64)
        for _ in range(n):
            t = np.kron(t, a) % p
        eq = np.zeros((size * size, len(unknowns)), dtype=np.int64)
        for u, (r, c) in enumerate(unknowns):
            # (X T)[r, :] gets T[c, :]; (T X)[:, c] gets T[:, r]
            eq[r * size : (r + 1) * size, u] += t[c]
            eq[np.arange(size) * size + c, u] -= t[:, r]
        reduced = eq @ space.T % p
        reduced = reduced[np.any(reduced, axis=1)]
        if reduced.shape[0] == 0:
            continue
        kernel = nullspace_mod(reduced, p)
        space = kernel @ space % p
        if space.shape[0] == 0:
            break
    return int(space.shape[0])
