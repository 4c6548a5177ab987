"""Exact arithmetic over F_p and truncated p-adic integers Z/p^N.

Scalars are small immutable value types.  Matrices are dense and wrap read-only
numpy integer arrays; all heavy lifting is done by the module-level helpers
(``rref_mod``, ``nullspace_mod``, ``local_smith`` ...) which operate on plain
numpy arrays and are reused by the algebra engine.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

__all__ = [
    "AtLeast",
    "Ring",
    "FpScalar",
    "PadicScalar",
    "ExactMatrix",
    "is_prime",
    "padic_valuation",
    "mat_rank_fp",
    "mat_kernel_fp",
    "padic_elementary_divisors",
    "rref_mod",
    "rank_mod",
    "nullspace_mod",
    "solve_mod",
    "inv_mod",
    "local_smith",
    "int_valuation",
]


@functools.lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@functools.total_ordering
@dataclass(frozen=True)
class AtLeast:
    """A valuation known only to be at least ``bound`` (the working precision)."""

    bound: int

    def __str__(self) -> str:
        return f"≥{self.bound}"

    def __lt__(self, other: object) -> bool:
        if isinstance(other, AtLeast):
            return self.bound < other.bound
        if isinstance(other, int):
            return self.bound < other
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AtLeast) and other.bound == self.bound

    def __hash__(self) -> int:
        return hash(("AtLeast", self.bound))


Valuation = Union[int, AtLeast]


def int_valuation(value: int, p: int, precision: int) -> Valuation:
    """Valuation of a residue modulo ``p**precision``."""
    value %= p**precision
    if value == 0:
        return AtLeast(precision)
    v = 0
    while value % p == 0:
        value //= p
        v += 1
    return v


################################################################################
# rings and scalars


@dataclass(frozen=True)
class Ring:
    """Ring tag: Z when ``p`` is None, F_p when ``precision`` is None, else Z/p^N."""

    p: int | None = None
    precision: int | None = None

    def __post_init__(self) -> None:
        if self.p is None:
            if self.precision is not None:
                raise ValueError("precision given without a prime")
            return
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision is not None and self.precision < 1:
            raise ValueError("precision must be positive")

    @classmethod
    def fp(cls, p: int) -> Ring:
        return cls(p)

    @classmethod
    def padic(cls, p: int, precision: int) -> Ring:
        return cls(p, precision)

    @property
    def is_field(self) -> bool:
        return self.p is not None and self.precision is None

    @property
    def is_padic(self) -> bool:
        return self.precision is not None

    @property
    def modulus(self) -> int | None:
        if self.p is None:
            return None
        return self.p if self.precision is None else self.p**self.precision

    def __str__(self) -> str:
        if self.p is None:
            return "Z"
        if self.precision is None:
            return f"F_{self.p}"
        return f"Z/{self.p}^{self.precision}"


@dataclass(frozen=True)
class FpScalar:
    p: int
    value: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other: FpScalar) -> None:
        if not isinstance(other, FpScalar) or other.p != self.p:
            raise ValueError("operands live in different fields")

    def __add__(self, other: FpScalar) -> FpScalar:
        self._check(other)
        return FpScalar(self.p, self.value + other.value)

    def __sub__(self, other: FpScalar) -> FpScalar:
        self._check(other)
        return FpScalar(self.p, self.value - other.value)

    def __mul__(self, other: FpScalar) -> FpScalar:
        self._check(other)
        return FpScalar(self.p, self.value * other.value)

    def __neg__(self) -> FpScalar:
        return FpScalar(self.p, -self.value)

    def inverse(self) -> FpScalar:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpScalar(self.p, pow(self.value, -1, self.p))


@dataclass(frozen=True)
class PadicScalar:
    """An element of Z_p known modulo p^precision."""

    p: int
    precision: int
    value: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.precision < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "value", self.value % self.p**self.precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _check(self, other: PadicScalar) -> None:
        if not isinstance(other, PadicScalar) or other.p != self.p:
            raise ValueError("operands have different primes")
        if other.precision != self.precision:
            raise ValueError(
                f"precision mismatch: {self.precision} vs {other.precision}"
            )

    def __add__(self, other: PadicScalar) -> PadicScalar:
        self._check(other)
        return PadicScalar(self.p, self.precision, self.value + other.value)

    def __sub__(self, other: PadicScalar) -> PadicScalar:
        self._check(other)
        return PadicScalar(self.p, self.precision, self.value - other.value)

    def __mul__(self, other: PadicScalar) -> PadicScalar:
        self._check(other)
        return PadicScalar(self.p, self.precision, self.value * other.value)

    def __neg__(self) -> PadicScalar:
        return PadicScalar(self.p, self.precision, -self.value)

    def valuation(self) -> Valuation:
        return padic_valuation(self)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def reduce(self) -> FpScalar:
        return FpScalar(self.p, self.value)


def padic_valuation(x: PadicScalar) -> Valuation:
    """Largest v with p^v | x, or ``AtLeast(N)`` for the zero residue."""
    return int_valuation(x.value, x.p, x.precision)


################################################################################
# matrices


def _dtype_for(modulus: int | None):
    # int64 is safe while products of two residues fit in 63 bits
    if modulus is not None and modulus < 2**31:
        return np.int64
    return object


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    ring: Ring
    rows: int
    cols: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=object)
        if arr.size != self.rows * self.cols:
            raise ValueError(
                f"{arr.size} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        arr = arr.reshape(self.rows, self.cols)
        if self.ring.modulus is not None:
            arr = arr % self.ring.modulus
        arr = arr.astype(_dtype_for(self.ring.modulus))
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[int]]) -> ExactMatrix:
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        return cls(ring, n, m, np.array(rows, dtype=object).reshape(n, m))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> ExactMatrix:
        return cls(ring, n, n, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> ExactMatrix:
        return cls(ring, rows, cols, np.zeros((rows, cols), dtype=np.int64))

    @property
    def array(self) -> np.ndarray:
        return self.entries

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.entries.shape == other.entries.shape
            and bool(np.all(self.entries == other.entries))
        )

    def _same_ring(self, other: ExactMatrix) -> None:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._same_ring(other)
        return ExactMatrix(self.ring, self.rows, self.cols, self.entries + other.entries)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._same_ring(other)
        return ExactMatrix(self.ring, self.rows, self.cols, self.entries - other.entries)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._same_ring(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        prod = matmul_mod(self.entries, other.entries, self.ring.modulus)
        return ExactMatrix(self.ring, self.rows, other.cols, prod)

    def scale(self, c: int) -> ExactMatrix:
        return ExactMatrix(self.ring, self.rows, self.cols, self.entries * c)

    def reduce(self) -> ExactMatrix:
        """Image over F_p of a Z/p^N (or integer) matrix."""
        if self.ring.p is None:
            raise ValueError("no prime to reduce modulo")
        return ExactMatrix(Ring(self.ring.p), self.rows, self.cols, self.entries)


def matmul_mod(a: np.ndarray, b: np.ndarray, modulus: int | None) -> np.ndarray:
    if modulus is None:
        return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
    if modulus < 2**31 and a.shape[1] * (modulus - 1) ** 2 < 2**63:
        return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % modulus
    return (np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)) % modulus


################################################################################
# elimination over F_p (numpy arrays)


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Pivot rule: columns left to right, first row (lowest index) with a nonzero
    entry among the not-yet-used rows.
    """
    r = np.array(a, dtype=np.int64) % p
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = (r[row] * pow(int(r[row, col]), -1, p)) % p
        factors = r[:, col].copy()
        factors[row] = 0
        mask = factors != 0
        if mask.any():
            r[mask] = (r[mask] - np.outer(factors[mask], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank_mod(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_mod(a, p)[1])


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel {v : a v = 0} as the rows of the result."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref_mod(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def row_basis_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Nonzero rows of the rref: a canonical basis of the row space."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64)
    r, pivots = rref_mod(a, p)
    return r[: len(pivots)]


def solve_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a x = b over F_p (b may be a matrix), or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref_mod(aug, p)
    if any(pc >= n for pc in pivots):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return x[:, 0] if vector else x


def inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix is not square")
    r, pivots = rref_mod(np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1), p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular over F_p")
    return r[:, n:]


def mat_rank_fp(m: ExactMatrix) -> int:
    if not m.ring.is_field:
        raise ValueError("expected F_p matrix")
    return rank_mod(m.entries, m.ring.p)


def mat_kernel_fp(m: ExactMatrix) -> list[tuple[int, ...]]:
    if not m.ring.is_field:
        raise ValueError("expected F_p matrix")
    return [tuple(int(x) for x in v) for v in nullspace_mod(m.entries, m.ring.p)]


################################################################################
# local-ring elimination over Z/p^N


def local_smith(
    a: np.ndarray, p: int, precision: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, list[Valuation]]:
    """Smith form over Z/p^N: returns (U, D, V, exps) with U a V = D diagonal.

    At each step the pivot is the first entry (row-major scan over the
    remaining block) of minimal valuation; it divides everything left, so the
    row and column can be cleared with unit-free operations.  Entries whose
    valuation reaches N are indistinguishable from zero and reported as
    ``AtLeast(N)``.
    """
    q = p**precision
    d = np.array(a, dtype=object) % q
    rows, cols = d.shape
    u = np.eye(rows, dtype=object)
    v = np.eye(cols, dtype=object)
    exps: list[Valuation] = []
    for k in range(min(rows, cols)):
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                val = int_valuation(int(d[i, j]), p, precision)
                if isinstance(val, int) and (best is None or val < best[0]):
                    best = (val, i, j)
                    if val == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        val, i, j = best
        d[[k, i]] = d[[i, k]]
        u[[k, i]] = u[[i, k]]
        d[:, [k, j]] = d[:, [j, k]]
        v[:, [k, j]] = v[:, [j, k]]
        unit = int(d[k, k]) // p**val
        inv = pow(unit, -1, q)
        d[k] = (d[k] * inv) % q
        u[k] = (u[k] * inv) % q
        pv = p**val
        for i2 in range(rows):
            if i2 != k and d[i2, k] % q:
                f = int(d[i2, k]) // pv
                d[i2] = (d[i2] - f * d[k]) % q
                u[i2] = (u[i2] - f * u[k]) % q
        for j2 in range(cols):
            if j2 != k and d[k, j2] % q:
                f = int(d[k, j2]) // pv
                d[:, j2] = (d[:, j2] - f * d[:, k]) % q
                v[:, j2] = (v[:, j2] - f * v[:, k]) % q
        exps.append(val)
    exps.extend(AtLeast(precision) for _ in range(min(rows, cols) - len(exps)))
    return u, d, v, exps


def padic_elementary_divisors(m: ExactMatrix) -> list[Valuation]:
    """Exponents e_1 <= e_2 <= ... of the truncated Smith form of ``m``."""
    if not m.ring.is_padic:
        raise ValueError("expected Z/p^N matrix")
    *_, exps = local_smith(m.entries, m.ring.p, m.ring.precision)
    return sorted(exps)


def local_echelon(
    gens: np.ndarray, p: int, precision: int
) -> tuple[np.ndarray, list[int], list[int]]:
    """Row echelon form of a generator set of a Z_p-submodule of (Z/p^N)^n.

    Returns (rows, pivot columns, pivot valuations); each pivot is exactly
    p^v so coordinates can be read off by forward substitution.
    """
    q = p**precision
    r = np.array(gens, dtype=object) % q
    nrows, ncols = r.shape
    pivots: list[int] = []
    vals: list[int] = []
    row = 0
    # minimal valuation over the remaining block picks the pivot column too
    while row < nrows:
        best = None
        for j in range(ncols):
            if j in pivots:
                continue
            for i in range(row, nrows):
                val = int_valuation(int(r[i, j]), p, precision)
                if isinstance(val, int) and (best is None or val < best[0]):
                    best = (val, i, j)
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        val, i, j = best
        r[[row, i]] = r[[i, row]]
        unit = int(r[row, j]) // p**val
        r[row] = (r[row] * pow(unit, -1, q)) % q
        pv = p**val
        for i2 in range(nrows):
            if i2 != row and r[i2, j] % q:
                f = int(r[i2, j]) // pv
                r[i2] = (r[i2] - f * r[row]) % q
        pivots.append(j)
        vals.append(val)
        row += 1
    return r[:row], pivots, vals


def local_coordinates(
    echelon: tuple[np.ndarray, list[int], list[int]],
    vec: Sequence[int],
    p: int,
    precision: int,
) -> list[int]:
    """Coordinates of ``vec`` in an echelon basis; raises if it is not a member.

    Division by a pivot p^v loses v digits, so the coordinates are only exact
    modulo p^(N - max v).
    """
    rows, pivots, vals = echelon
    q = p**precision
    rest = np.array(vec, dtype=object) % q
    coords = []
    for row, j, val in zip(rows, pivots, vals):
        x = int(rest[j])
        if x % p**val:
            raise ValueError("vector is not in the lattice")
        c = x // p**val
        coords.append(c)
        rest = (rest - c * row) % q
    if any(int(x) % q for x in rest):
        raise ValueError("vector is not in the lattice")
    return coords
