import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from greenorder.algebra import cartan_matrix, check_algebra
from greenorder.brauer_tree import predicted_cartan, schur_basic_cartan, stem
from greenorder.exactring import PadicScalar
from greenorder.green_order import (
    GreenOrderElement,
    GreenOrderSpec,
    commutative_factor_count,
    green_report,
    kernel_lattices,
    lattice_count,
    lattice_is_indecomposable,
    member,
    mul,
    order_basis,
    order_coordinates,
    projective_lattices,
    random_member,
    rank,
    rational_components,
    reduce_mod_p,
)


def spec5(precision=4):
    return GreenOrderSpec.lambda0(5, precision)


class TestSpec:
    def test_invariants(self):
        with pytest.raises(ValueError):
            GreenOrderSpec(6, 2)
        with pytest.raises(ValueError):
            GreenOrderSpec(5, 0)
        with pytest.raises(ValueError):
            GreenOrderSpec(5, 4, exponent=2, precision=2)

    def test_glue_classes_pair_every_diagonal_entry(self):
        s = spec5()
        classes = s.glue_classes()
        assert len(classes) == 5
        diag = sorted(i for c in classes for i in c)
        expected = sorted([0, s.trail_index] + [s.block_offset(j) + k for j in range(1, 5) for k in (0, 3)])
        assert diag == expected


class TestMember:
    def test_identity(self):
        s = spec5()
        assert member(s, GreenOrderElement.identity(s)) == (True, [])

    def test_c_violation_named(self):
        s = spec5()
        vec = GreenOrderElement.identity(s).to_vector()
        vec[s.block_offset(1) + 2] = 1
        ok, bad = member(s, GreenOrderElement.from_vector(s, vec))
        assert not ok and bad == ["p∤c_1"]

    def test_glued_difference(self):
        s = spec5()
        vec = [0] * s.ambient_dim
        vec[s.block_offset(1) + 3] = 3
        vec[0] = 3 + 5
        assert member(s, GreenOrderElement.from_vector(s, vec))[0]
        vec[0] = 4
        ok, bad = member(s, GreenOrderElement.from_vector(s, vec))
        assert bad == ["p∤(d_1-d_0)"]

    def test_final_gluing(self):
        s = spec5()
        vec = [0] * s.ambient_dim
        vec[s.trail_index] = 1
        assert member(s, GreenOrderElement.from_vector(s, vec))[1] == ["p∤(a_5-a_4)"]

    def test_precision_mismatch(self):
        s = spec5()
        e = GreenOrderElement.identity(GreenOrderSpec.lambda0(5, 5))
        with pytest.raises(ValueError, match="precision mismatch"):
            member(s, e)


class TestMul:
    def test_identity_and_zero(self):
        s = spec5()
        e = random_member(s, np.random.default_rng(1))
        one, zero = GreenOrderElement.identity(s), GreenOrderElement.zero(s)
        assert mul(s, one, e) == e and mul(s, e, one) == e
        assert mul(s, e, zero) == zero

    def test_non_member_rejected(self):
        s = spec5()
        vec = [0] * s.ambient_dim
        vec[s.block_offset(2) + 2] = 1
        with pytest.raises(ValueError, match="not a member"):
            mul(s, GreenOrderElement.from_vector(s, vec), GreenOrderElement.identity(s))

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_closure(self, p):
        s = GreenOrderSpec.lambda0(p, 4)
        rng = np.random.default_rng(p)
        for _ in range(200):
            assert member(s, mul(s, random_member(s, rng), random_member(s, rng)))[0]

    def test_closure_with_exponent_two(self):
        s = GreenOrderSpec(5, 4, exponent=2, precision=5)
        rng = np.random.default_rng(0)
        for _ in range(100):
            assert member(s, mul(s, random_member(s, rng), random_member(s, rng)))[0]

    def test_scalars_keep_precision(self):
        s = spec5()
        e = random_member(s, np.random.default_rng(3))
        assert all(isinstance(x, PadicScalar) and x.precision == 4 for x in e.scalars())


@settings(max_examples=30)
@given(seed=st.integers(0, 2**20), p=st.sampled_from([3, 5]))
def test_basis_coordinates_round_trip(seed, p):
    s = GreenOrderSpec.lambda0(p, 4)
    e = random_member(s, np.random.default_rng(seed)).to_vector()
    coords = order_coordinates(s, e)
    back = np.array(coords, dtype=object) @ np.array(order_basis(s), dtype=object) % s.modulus
    assert back.tolist() == e


class TestCounts:
    def test_ranks(self):
        assert rank(spec5()) == 18
        assert rank(GreenOrderSpec.schur_variant(5)) == 17
        assert rank(GreenOrderSpec(5, 1)) == 6

    def test_rational_components(self):
        assert rational_components(spec5()) == 6
        assert rational_components(GreenOrderSpec.lambda0(7)) == 8
        assert rational_components(GreenOrderSpec.schur_variant(5)) == 5


class TestReduction:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_stem(self, p):
        a = reduce_mod_p(GreenOrderSpec.lambda0(p))
        assert check_algebra(a).ok
        assert a.dim == 4 * p - 2 == rank(GreenOrderSpec.lambda0(p))
        assert a.n_vertices == p
        assert np.array_equal(cartan_matrix(a), predicted_cartan(stem(p)))

    def test_schur_variant_matches_schur_prediction(self):
        a = reduce_mod_p(GreenOrderSpec.schur_variant(5))
        c = cartan_matrix(a)
        assert a.dim == 17
        assert np.array_equal(c[::-1, ::-1], schur_basic_cartan(5))


class TestLattices:
    @pytest.mark.parametrize("p,ranks", [(3, [3, 4, 3]), (5, [3, 4, 4, 4, 3])])
    def test_projective_ranks(self, p, ranks):
        lats = projective_lattices(GreenOrderSpec.lambda0(p))
        assert [lat.rank for lat in lats] == ranks
        assert sum(ranks) == 4 * p - 2

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_kernel_count(self, p):
        assert len(kernel_lattices(GreenOrderSpec.lambda0(p))) == 2 * (p - 1)

    def test_kernels_pairwise_distinguished(self):
        kers = kernel_lattices(GreenOrderSpec.lambda0(5, 4))
        keys = {(lat.components, lat.top) for lat in kers}
        assert len(keys) == 8

    @pytest.mark.parametrize("p", [3, 5])
    def test_kernels_indecomposable(self, p):
        assert all(lattice_is_indecomposable(lat) for lat in kernel_lattices(GreenOrderSpec.lambda0(p)))

    def test_kernels_are_not_projective(self):
        s = GreenOrderSpec.lambda0(5)
        proj = {(lat.rank, lat.components, lat.top) for lat in projective_lattices(s)}
        for lat in kernel_lattices(s):
            assert (lat.rank, lat.components, lat.top) not in proj

    def test_component_divisors_separate_column_types(self):
        kers = {lat.label: lat for lat in kernel_lattices(GreenOrderSpec.lambda0(5))}
        assert kers["ker(P1->P2)"].component_divisors() == {1: [1, 1]}
        assert kers["ker(P1->P0)"].component_divisors() == {2: [0, 1]}

    def test_schur_variant_has_no_kernel_census(self):
        with pytest.raises(ValueError):
            kernel_lattices(GreenOrderSpec.schur_variant(5))


class TestCounting:
    @pytest.mark.parametrize("p,total", [(2, 4), (3, 9), (5, 23)])
    def test_lattice_count(self, p, total):
        c = lattice_count(p)
        assert c.total == total
        assert c.nonprojective == 2 * (p - 1)
        assert c.projective + c.nonprojective == c.total

    def test_commutative_factors(self):
        c5 = commutative_factor_count(5)
        assert (c5.total, c5.low_degree, c5.non_hooks, c5.hooks) == (12, 10, 2, 5)
        assert commutative_factor_count(7).total == 36
        assert commutative_factor_count(11).low_degree == commutative_factor_count(11).regular_reading
        with pytest.raises(ValueError):
            commutative_factor_count(3)


def test_green_report_shape():
    doc = green_report(GreenOrderSpec.lambda0(5), trials=50, seed=2)
    assert set(doc) == {
        "p", "rank", "rational_components", "reduced_dim", "cartan", "lattice_count",
        "commutative_factors", "closure_trials", "closure_failures",
    }
    assert doc["lattice_count"] == {"total": 23, "projective": 15, "nonprojective": 8}
    assert doc["closure_failures"] == 0 and doc["commutative_factors"] == 12
