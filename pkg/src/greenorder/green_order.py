"""The Green order Lambda^0 over Z_p as a congruence subring, at finite precision.

Elements are a leading scalar d_0, blocks [[a_j, b_j], [c_j, d_j]] for
j = 1..m and a trailing scalar a_{m+1}.  Membership requires

    p^x | c_j,    p^x | (d_j - a_{j-1})  with a_0 := d_0,    p^x | (a_{m+1} - a_m).

The diagonal entries therefore fall into m + 1 glued pairs
(d_0, d_1), (a_1, d_2), ..., (a_{m-1}, d_m), (a_m, a_{m+1}); each pair carries
one vertex idempotent.  Without the leading scalar d_1 stands alone.

Ambient coordinates list d_0 (if present), then a_j, b_j, c_j, d_j per block,
then a_{m+1}.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .algebra import (
    BasisAlgebra,
    LeftModule,
    check_algebra,
    endomorphism_ring_is_local,
    radical_series,
)
from .combinatorics import count_p_regular, count_partitions, hooks, non_hooks
from .exactring import (
    ExactMatrix,
    PadicScalar,
    Ring,
    is_prime,
    local_coordinates,
    local_echelon,
    local_smith,
    padic_elementary_divisors,
    AtLeast,
)

__all__ = [
    "GreenOrderSpec",
    "GreenOrderElement",
    "ColumnLattice",
    "member",
    "mul",
    "random_member",
    "rank",
    "rational_components",
    "reduce_mod_p",
    "projective_lattices",
    "kernel_lattices",
    "lattice_count",
    "commutative_factor_count",
]


@dataclass(frozen=True)
class GreenOrderSpec:
    p: int
    blocks: int
    exponent: int = 1
    precision: int = 6
    leading_scalar: bool = True

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.blocks < 1:
            raise ValueError("need at least one block")
        if self.exponent < 1:
            raise ValueError("congruence exponent must be >= 1")
        if self.precision <= self.exponent:
            raise ValueError("precision must exceed the congruence exponent")

    @classmethod
    def lambda0(cls, p: int, precision: int = 6) -> GreenOrderSpec:
        return cls(p, p - 1, 1, precision, True)

    @classmethod
    def schur_variant(cls, p: int, precision: int = 6) -> GreenOrderSpec:
        """Basic order of the Schur algebra: no leading scalar."""
        return cls(p, p - 1, 1, precision, False)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def step(self) -> int:
        return self.p**self.exponent

    @property
    def is_lambda0(self) -> bool:
        return self.leading_scalar and self.blocks == self.p - 1 and self.exponent == 1

    # ambient layout -------------------------------------------------------

    @property
    def ambient_dim(self) -> int:
        return 4 * self.blocks + 1 + int(self.leading_scalar)

    def block_offset(self, j: int) -> int:
        """Ambient index of a_j (1-based block j)."""
        return int(self.leading_scalar) + 4 * (j - 1)

    @property
    def trail_index(self) -> int:
        return self.ambient_dim - 1

    def components(self) -> list[tuple[int, ...]]:
        """Ambient indices of each Wedderburn component, in order."""
        comps = [(0,)] if self.leading_scalar else []
        for j in range(1, self.blocks + 1):
            o = self.block_offset(j)
            comps.append((o, o + 1, o + 2, o + 3))
        comps.append((self.trail_index,))
        return comps

    def glue_classes(self) -> list[tuple[int, ...]]:
        """Ambient diagonal positions glued together, one class per vertex."""
        a = lambda j: self.block_offset(j)  # noqa: E731
        d = lambda j: self.block_offset(j) + 3  # noqa: E731
        classes = [(0, d(1))] if self.leading_scalar else [(d(1),)]
        classes += [(a(j - 1), d(j)) for j in range(2, self.blocks + 1)]
        classes.append((a(self.blocks), self.trail_index))
        return classes


@dataclass(frozen=True)
class GreenOrderElement:
    lead: PadicScalar | None
    blocks: tuple[tuple[PadicScalar, PadicScalar, PadicScalar, PadicScalar], ...]
    trail: PadicScalar

    def scalars(self) -> list[PadicScalar]:
        out = [] if self.lead is None else [self.lead]
        for blk in self.blocks:
            out.extend(blk)
        out.append(self.trail)
        return out

    def to_vector(self) -> list[int]:
        return [s.value for s in self.scalars()]

    @classmethod
    def from_vector(cls, spec: GreenOrderSpec, vec: Sequence[int]) -> GreenOrderElement:
        if len(vec) != spec.ambient_dim:
            raise ValueError(f"expected {spec.ambient_dim} coordinates")
        s = [PadicScalar(spec.p, spec.precision, int(x)) for x in vec]
        lead = s[0] if spec.leading_scalar else None
        off = int(spec.leading_scalar)
        blocks = tuple(tuple(s[off + 4 * k : off + 4 * k + 4]) for k in range(spec.blocks))
        return cls(lead, blocks, s[-1])

    @classmethod
    def identity(cls, spec: GreenOrderSpec) -> GreenOrderElement:
        return cls.from_vector(spec, _identity_vector(spec))

    @classmethod
    def zero(cls, spec: GreenOrderSpec) -> GreenOrderElement:
        return cls.from_vector(spec, [0] * spec.ambient_dim)


def _identity_vector(spec: GreenOrderSpec) -> list[int]:
    v = [0] * spec.ambient_dim
    for cls_ in spec.glue_classes():
        for i in cls_:
            v[i] = 1
    return v


################################################################################
# ring operations


def _shape_ok(spec: GreenOrderSpec, e: GreenOrderElement) -> None:
    if (e.lead is None) == spec.leading_scalar or len(e.blocks) != spec.blocks:
        raise ValueError("element does not have the shape of the order")
    for s in e.scalars():
        if s.p != spec.p or s.precision != spec.precision:
            raise ValueError(
                f"precision mismatch: element at {s.p}^{s.precision}, "
                f"order at {spec.p}^{spec.precision}"
            )


def _names(spec: GreenOrderSpec) -> dict[int, str]:
    names = {0: "d_0"} if spec.leading_scalar else {}
    for j in range(1, spec.blocks + 1):
        o = spec.block_offset(j)
        for k, letter in enumerate("abcd"):
            names[o + k] = f"{letter}_{j}"
    names[spec.trail_index] = f"a_{spec.blocks + 1}"
    return names


def member(spec: GreenOrderSpec, e: GreenOrderElement) -> tuple[bool, list[str]]:
    """Check every defining congruence; the violations name the failing ones."""
    _shape_ok(spec, e)
    vec = e.to_vector()
    names = _names(spec)
    pp = "p" if spec.exponent == 1 else f"p^{spec.exponent}"
    violations = []
    for j in range(1, spec.blocks + 1):
        c = spec.block_offset(j) + 2
        if vec[c] % spec.step:
            violations.append(f"{pp}∤{names[c]}")
    for cls_ in spec.glue_classes():
        if len(cls_) == 2:
            first, second = cls_
            if (vec[second] - vec[first]) % spec.step:
                violations.append(f"{pp}∤({names[second]}-{names[first]})")
    return not violations, violations


def _ambient_mul(spec: GreenOrderSpec, x: Sequence[int], y: Sequence[int]) -> list[int]:
    q = spec.modulus
    out = [0] * spec.ambient_dim
    for comp in spec.components():
        if len(comp) == 1:
            (i,) = comp
            out[i] = (x[i] * y[i]) % q
        else:
            a, b, c, d = comp
            out[a] = (x[a] * y[a] + x[b] * y[c]) % q
            out[b] = (x[a] * y[b] + x[b] * y[d]) % q
            out[c] = (x[c] * y[a] + x[d] * y[c]) % q
            out[d] = (x[c] * y[b] + x[d] * y[d]) % q
    return out


def mul(spec: GreenOrderSpec, e1: GreenOrderElement, e2: GreenOrderElement) -> GreenOrderElement:
    for e in (e1, e2):
        ok, bad = member(spec, e)
        if not ok:
            raise ValueError(f"not a member: {', '.join(bad)}")
    return GreenOrderElement.from_vector(
        spec, _ambient_mul(spec, e1.to_vector(), e2.to_vector())
    )


def random_member(spec: GreenOrderSpec, rng: np.random.Generator) -> GreenOrderElement:
    """Sample the free parameters and solve the congruences for the rest."""
    q = spec.modulus

    def draw() -> int:
        return int(rng.integers(0, q))

    vec = [0] * spec.ambient_dim
    if spec.leading_scalar:
        vec[0] = draw()
    for j in range(1, spec.blocks + 1):
        o = spec.block_offset(j)
        vec[o] = draw()
        vec[o + 1] = draw()
        vec[o + 2] = spec.step * draw() % q
    for cls_ in spec.glue_classes():
        if len(cls_) == 1:
            vec[cls_[0]] = draw()
        else:
            first, second = cls_
            vec[second] = (vec[first] + spec.step * draw()) % q
    return GreenOrderElement.from_vector(spec, vec)


################################################################################
# lattice basis of the order


def order_basis(spec: GreenOrderSpec) -> list[list[int]]:
    """Z_p-basis in ambient coordinates: idempotents, glue differences, b's, c's."""
    n = spec.ambient_dim
    step = spec.step
    basis = []
    for cls_ in spec.glue_classes():
        v = [0] * n
        for i in cls_:
            v[i] = 1
        basis.append(v)
    for cls_ in spec.glue_classes():
        if len(cls_) == 2:
            v = [0] * n
            v[cls_[1]] = step
            basis.append(v)
    for j in range(1, spec.blocks + 1):
        v = [0] * n
        v[spec.block_offset(j) + 1] = 1
        basis.append(v)
    for j in range(1, spec.blocks + 1):
        v = [0] * n
        v[spec.block_offset(j) + 2] = step
        basis.append(v)
    return basis


def order_coordinates(spec: GreenOrderSpec, vec: Sequence[int]) -> list[int]:
    """Inverse of ``order_basis``; exact modulo p^(N - x)."""
    step = spec.step
    coords = []
    classes = spec.glue_classes()
    for cls_ in classes:
        coords.append(vec[cls_[0]])
    for cls_ in classes:
        if len(cls_) == 2:
            diff = vec[cls_[1]] - vec[cls_[0]]
            if diff % step:
                raise ValueError("vector is not in the order")
            coords.append(diff // step)
    for j in range(1, spec.blocks + 1):
        coords.append(vec[spec.block_offset(j) + 1])
    for j in range(1, spec.blocks + 1):
        c = vec[spec.block_offset(j) + 2]
        if c % step:
            raise ValueError("vector is not in the order")
        coords.append(c // step)
    return coords


def rank(spec: GreenOrderSpec) -> int:
    """Z_p-rank: 4m + 2 with the leading scalar, 4m + 1 without."""
    return len(order_basis(spec))


def rational_components(spec: GreenOrderSpec) -> int:
    """Number of simple factors of K (x) Lambda, via its central idempotents.

    The idempotents are the component identities; they live in the rational
    span, not in the order itself, so no congruence is imposed on them.
    """
    n = spec.ambient_dim
    central = []
    for comp in spec.components():
        z = [0] * n
        if len(comp) == 1:
            z[comp[0]] = 1
        else:
            z[comp[0]] = z[comp[3]] = 1
        central.append(z)
    basis = order_basis(spec)
    one = _identity_vector(spec)
    total = [0] * n
    for i, z in enumerate(central):
        if any(x % spec.modulus for x in z) is False:
            raise AssertionError("zero central idempotent")
        for k, w in enumerate(central):
            expected = z if i == k else [0] * n
            if _ambient_mul(spec, z, w) != expected:
                raise AssertionError("component idempotents are not orthogonal")
        for b in basis:
            if _ambient_mul(spec, z, b) != _ambient_mul(spec, b, z):
                raise AssertionError("component idempotent is not central")
        total = [(s + t) % spec.modulus for s, t in zip(total, z)]
    if total != one:
        raise AssertionError("component idempotents do not sum to 1")
    return len(central)


@functools.lru_cache(maxsize=None)
def reduce_mod_p(spec: GreenOrderSpec) -> BasisAlgebra:
    """F_p (x) Lambda on the reduction of ``order_basis``.

    Structure constants come from products of basis elements lifted to
    precision x + 1, which leaves one correct digit after dividing by p^x.
    """
    lift = replace(spec, precision=spec.exponent + 1)
    basis = order_basis(lift)
    d = len(basis)
    p = spec.p
    table = np.zeros((d, d, d), dtype=np.int64)
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            coords = order_coordinates(lift, _ambient_mul(lift, x, y))
            table[i, j] = [c % p for c in coords]
    n_vertices = len(spec.glue_classes())
    unit = np.zeros(d, dtype=np.int64)
    unit[:n_vertices] = 1
    alg = BasisAlgebra(
        p=p,
        table=table,
        unit=unit,
        vertices=[(i,) for i in range(n_vertices)],
        radical_generators=range(n_vertices, d),
    )
    report = check_algebra(alg)
    if not report.ok:
        raise ValueError("reduction is not a split basic algebra: " + "; ".join(report.failures))
    return alg


################################################################################
# lattices


@dataclass(frozen=True, eq=False)
class ColumnLattice:
    """A left Lambda-lattice inside the ambient product of matrix rings."""

    label: str
    spec: GreenOrderSpec
    generators: tuple[tuple[int, ...], ...] = field(repr=False)
    components: tuple[int, ...] = ()
    top: tuple[int, ...] | None = None

    @property
    def rank(self) -> int:
        return len(self.generators)

    def reduction(self) -> LeftModule:
        """M / pM as a module over ``reduce_mod_p(spec)``."""
        return _reduced_module(self.spec, self.generators)

    def component_divisors(self) -> dict[int, list]:
        """Elementary divisors of the generators projected to each component."""
        spec = self.spec
        out = {}
        ring = Ring.padic(spec.p, spec.precision)
        for k in self.components:
            idx = spec.components()[k]
            rows = [[g[i] for i in idx] for g in self.generators]
            exps = padic_elementary_divisors(ExactMatrix.from_rows(ring, rows))
            out[k] = [e for e in exps if not isinstance(e, AtLeast)]
        return out


def _echelon(spec: GreenOrderSpec, gens: Sequence[Sequence[int]]):
    return local_echelon(np.array(gens, dtype=object), spec.p, spec.precision)


def _support(spec: GreenOrderSpec, gens: Sequence[Sequence[int]]) -> tuple[int, ...]:
    q = spec.modulus
    return tuple(
        k
        for k, comp in enumerate(spec.components())
        if any(g[i] % q for g in gens for i in comp)
    )


def _make_lattice(spec: GreenOrderSpec, label: str, gens) -> ColumnLattice:
    rows, _, _ = _echelon(spec, gens)
    generators = tuple(tuple(int(x) for x in r) for r in rows)
    lat = ColumnLattice(label, spec, generators, _support(spec, generators))
    layers = radical_series(reduce_mod_p(spec), lat.reduction()).layers
    return replace(lat, top=layers[0] if layers else ())


def _reduced_module(spec: GreenOrderSpec, generators) -> LeftModule:
    p = spec.p
    ech = _echelon(spec, generators)
    r = len(ech[0])
    basis = order_basis(spec)
    action = np.zeros((len(basis), r, r), dtype=np.int64)
    for k, beta in enumerate(basis):
        for col, m in enumerate(ech[0]):
            image = _ambient_mul(spec, beta, [int(x) for x in m])
            coords = local_coordinates(ech, image, p, spec.precision)
            action[k, :, col] = [c % p for c in coords]
    return LeftModule(p, action)


def _projective_generators(spec: GreenOrderSpec, v: int) -> list[list[int]]:
    f = order_basis(spec)[v]
    return [_ambient_mul(spec, beta, f) for beta in order_basis(spec)]


def projective_lattices(spec: GreenOrderSpec) -> list[ColumnLattice]:
    """Lambda f_v for each vertex idempotent f_v."""
    return [
        _make_lattice(spec, f"P{v}", _projective_generators(spec, v))
        for v in range(len(spec.glue_classes()))
    ]


def hom_generator(spec: GreenOrderSpec, i: int, j: int) -> list[list[int]]:
    """Z_p-basis of f_i Lambda f_j, i.e. of Hom(P_i, P_j) acting on the right."""
    basis = order_basis(spec)
    fi, fj = basis[i], basis[j]
    gens = [_ambient_mul(spec, _ambient_mul(spec, fi, beta), fj) for beta in basis]
    rows, _, _ = _echelon(spec, gens)
    return [[int(x) for x in r] for r in rows]


def _kernel(spec: GreenOrderSpec, source: ColumnLattice, h: Sequence[int]) -> list[list[int]]:
    """Z_p-basis of {y in source : y h = 0}, via the Smith form of the map."""
    q = spec.modulus
    images = np.array(
        [_ambient_mul(spec, list(g), h) for g in source.generators], dtype=object
    )
    u, _, _, exps = local_smith(images, spec.p, spec.precision)
    n_rows = len(source.generators)
    free = [k for k in range(n_rows) if k >= len(exps) or isinstance(exps[k], AtLeast)]
    src = np.array(source.generators, dtype=object)
    kernel = [[int(x) % q for x in (u[k] @ src)] for k in free]
    for y in kernel:
        if any(x % q for x in _ambient_mul(spec, y, h)):
            raise AssertionError("kernel vector does not map to zero")
    return kernel


def kernel_lattices(spec: GreenOrderSpec) -> list[ColumnLattice]:
    """Kernels of the nonzero maps P_i -> P_{i+1} and P_i -> P_{i-1}."""
    if not spec.leading_scalar:
        raise ValueError("kernel census is implemented for Lambda^0 only")
    projectives = projective_lattices(spec)
    n = len(projectives)
    pairs = [(i, i + 1) for i in range(n - 1)] + [(i, i - 1) for i in range(1, n)]
    out = []
    for i, j in pairs:
        hom = hom_generator(spec, i, j)
        if len(hom) != 1:
            raise AssertionError(f"Hom(P{i}, P{j}) has rank {len(hom)}, expected 1")
        gens = _kernel(spec, projectives[i], hom[0])
        out.append(_make_lattice(spec, f"ker(P{i}->P{j})", gens))
    return out


def lattice_is_indecomposable(lat: ColumnLattice) -> bool:
    """Local endomorphism ring of M / pM, which forces End(M) to be local."""
    return endomorphism_ring_is_local(reduce_mod_p(lat.spec), lat.reduction())


################################################################################
# counting


@dataclass(frozen=True)
class LatticeCount:
    total: int
    projective: int
    nonprojective: int
    green_part: int
    rho: dict[int, int]


def lattice_count(p: int) -> LatticeCount:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rho = {k: count_partitions(k) for k in range(2, p)}
    extra = sum(rho.values())
    return LatticeCount(
        total=3 * p - 2 + extra,
        projective=p + extra,
        nonprojective=2 * (p - 1),
        green_part=3 * p - 2,
        rho=rho,
    )


@dataclass(frozen=True)
class CommutativeFactorCount:
    total: int
    low_degree: int
    non_hooks: int
    regular_reading: int
    hooks: int


def commutative_factor_count(p: int) -> CommutativeFactorCount:
    """Rank-one factors Z_p outside Lambda^0.

    One per partition of a degree 2..p-1 plus one per non-hook partition of
    p.  The low-degree part is also computed as (sum of p-regular partition
    counts of 1..p-1) - 1, and both must agree.
    """
    if p < 5 or not is_prime(p):
        raise ValueError("requires a prime p >= 5")
    low = sum(count_partitions(i) for i in range(2, p))
    regular = sum(count_p_regular(i, p) for i in range(1, p)) - 1
    if low != regular:
        raise AssertionError(f"partition readings disagree: {low} != {regular}")
    n_hooks = len(hooks(p))
    if n_hooks != p:
        raise AssertionError(f"{p} should have {p} hooks, found {n_hooks}")
    nh = len(non_hooks(p))
    return CommutativeFactorCount(low + nh, low, nh, regular, n_hooks)


def green_report(spec: GreenOrderSpec, trials: int = 1000, seed: int = 0) -> dict:
    """JSON-ready summary of the order (the ``green`` CLI report)."""
    from .algebra import cartan_matrix

    rng = np.random.default_rng(seed)
    failures = 0
    for _ in range(trials):
        x, y = random_member(spec, rng), random_member(spec, rng)
        if not member(spec, mul(spec, x, y))[0]:
            failures += 1
    reduced = reduce_mod_p(spec)
    counts = lattice_count(spec.p)
    try:
        comm = commutative_factor_count(spec.p).total
    except ValueError:
        comm = None
    return {
        "p": spec.p,
        "rank": rank(spec),
        "rational_components": rational_components(spec),
        "reduced_dim": reduced.dim,
        "cartan": cartan_matrix(reduced).tolist(),
        "lattice_count": {
            "total": counts.total,
            "projective": counts.projective,
            "nonprojective": counts.nonprojective,
        },
        "commutative_factors": comm,
        "closure_trials": trials,
        "closure_failures": failures,
    }
