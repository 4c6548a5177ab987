import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from greenorder.polyfunctor import (
    PolyFunctorSpec as F,
    check_mod_p_invariance,
    check_p_alpha_vanishes,
    cross_effect_dims,
    cross_effect_hom_identity,
    degree_of,
    dim_at,
    hom_dim_projectivity_identity,
    matrix_action,
    parse_functor,
    projective_cover_bookkeeping,
    tensor_end_dim,
)

SPECS = [
    F.identity(), F.constant(), F.tensor(3), F.sym(2), F.sym(4), F.ext(2), F.ext(3),
    F.lin(1, 3), F.lin(2, 2), F.direct_sum(F.sym(2), F.ext(3)),
    F.direct_sum(F.constant(), F.tensor(2)),
]


def surjections(n, j):
    """Number of maps from an n-set onto a j-set, by brute force."""
    return sum(1 for f in itertools.product(range(j), repeat=n) if len(set(f)) == j)


class TestGrammar:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("id", F.identity()),
            ("const", F.constant()),
            ("tensor:3", F.tensor(3)),
            ("lin:2:4", F.lin(2, 4)),
            ("sum(sym:2, ext:3)", F.direct_sum(F.sym(2), F.ext(3))),
            ("sum(id,sum(const,tensor:2))", F.direct_sum(F.identity(), F.direct_sum(F.constant(), F.tensor(2)))),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_functor(text) == expected

    @pytest.mark.parametrize("spec", SPECS, ids=str)
    def test_str_round_trips(self, spec):
        assert parse_functor(str(spec)) == spec

    @pytest.mark.parametrize(
        "text", ["", "tensor", "tensor:1:2", "sym:-1", "lin:0:2", "sum()", "sum(id", "id id", "foo:2", "sum id"]
    )
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_functor(text)

    def test_base_ring(self):
        assert parse_functor("sym:2", 5).p == 5
        with pytest.raises(ValueError, match="not prime"):
            F.sym(2).over(6)


class TestDimensions:
    def test_examples(self):
        assert [dim_at(F.lin(1, n), 1) for n in range(11)] == list(range(1, 12))
        assert dim_at(F.sym(2), 2) == 3
        assert dim_at(F.lin(1, 5), 1) == 6
        assert dim_at(F.ext(3), 2) == 0
        assert dim_at(F.direct_sum(F.sym(2), F.ext(3)), 3) == 7

    def test_negative_k(self):
        with pytest.raises(ValueError):
            dim_at(F.identity(), -1)

    def test_linearization_in_one_variable_counts_truncated_monomials(self):
        # F[y_1..y_r]/(y)^{n+1} has one basis monomial per exponent vector of total degree <= n
        for r, n in [(1, 4), (2, 3), (3, 2)]:
            count = sum(1 for e in itertools.product(range(n + 1), repeat=r) if sum(e) <= n)
            assert dim_at(F.lin(r, n), 1) == count


class TestCrossEffects:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_top_values(self, n):
        assert cross_effect_dims(F.tensor(n), n)[n] == math.factorial(n)
        assert cross_effect_dims(F.sym(n), n)[n] == 1
        assert cross_effect_dims(F.ext(n), n)[n] == 1

    @pytest.mark.parametrize("n", range(1, 5))
    def test_tensor_cross_effects_are_surjection_counts(self, n):
        table = cross_effect_dims(F.tensor(n), 6)
        assert list(table.values) == [surjections(n, j) for j in range(1, 7)]

    @pytest.mark.parametrize("n", range(1, 5))
    def test_sym_cross_effects_are_compositions(self, n):
        # multisets of size n touching every one of j slots: C(n-1, j-1)
        table = cross_effect_dims(F.sym(n), 6)
        assert list(table.values) == [math.comb(n - 1, j - 1) for j in range(1, 7)]

    def test_constant_is_an_offset(self):
        table = cross_effect_dims(F.constant(), 4)
        assert table.offset == 1 and table.values == (0, 0, 0, 0)
        assert degree_of(F.constant(), 4) == 0

    @pytest.mark.parametrize("spec", SPECS, ids=str)
    def test_binomial_consistency(self, spec):
        table = cross_effect_dims(spec, 6)
        assert all(table.predicted_dim(k) == dim_at(spec, k) for k in range(7))
        assert all(c >= 0 for c in table.values)
        deg = degree_of(spec, 6)
        assert all(c == 0 for c in table.values[deg:])

    @pytest.mark.parametrize("f,g", [(F.sym(2), F.ext(3)), (F.tensor(2), F.lin(1, 3)), (F.constant(), F.identity())])
    def test_additivity(self, f, g):
        a, b = cross_effect_dims(f, 5), cross_effect_dims(g, 5)
        s = cross_effect_dims(F.direct_sum(f, g), 5)
        assert s.values == tuple(x + y for x, y in zip(a.values, b.values))
        assert s.offset == a.offset + b.offset

    def test_degrees(self):
        assert degree_of(F.lin(2, 3), 6) == 3
        assert degree_of(F.tensor(3), 6) == 3
        assert degree_of(F.direct_sum(F.sym(2), F.ext(3)), 6) == 3

    def test_index_from_one(self):
        with pytest.raises(IndexError):
            cross_effect_dims(F.identity(), 2)[0]
        with pytest.raises(ValueError):
            cross_effect_dims(F.identity(), 0)


class TestMatrixAction:
    def test_top_exterior_power_is_det(self):
        a = [[2, 1, 0], [1, 3, 4], [0, 5, 6]]
        assert matrix_action(F.ext(3), a).tolist() == [[round(np.linalg.det(np.array(a)))]]

    def test_tensor_of_identity(self):
        assert matrix_action(F.tensor(2), np.eye(3, dtype=int).tolist()).tolist() == np.eye(9, dtype=int).tolist()

    def test_sym2_of_swap(self):
        m = matrix_action(F.sym(2), [[0, 1], [1, 0]]).tolist()
        # basis x^2, xy, y^2
        assert m == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]

    def test_linearization_not_implemented(self):
        with pytest.raises(ValueError):
            matrix_action(F.lin(1, 2), [[1]])

    def test_reduced_over_fp(self):
        m = matrix_action(F.sym(2).over(5), [[3, 0], [0, 1]])
        assert m.tolist()[0][0] == 4

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**16), lam=st.integers(-3, 3),
           spec=st.sampled_from([F.identity(), F.tensor(2), F.sym(2), F.sym(3), F.ext(2), F.ext(3)]))
    def test_homogeneity(self, seed, lam, spec):
        rng = np.random.default_rng(seed)
        a = rng.integers(-4, 5, (3, 3))
        deg = degree_of(spec, 4)
        lhs = np.array(matrix_action(spec, (lam * a).tolist()).tolist(), dtype=object)
        rhs = np.array(matrix_action(spec, a.tolist()).tolist(), dtype=object) * lam**deg
        assert (lhs == rhs).all()

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**16), spec=st.sampled_from([F.tensor(2), F.sym(2), F.sym(3), F.ext(2)]))
    def test_functoriality(self, seed, spec):
        rng = np.random.default_rng(seed)
        a, b = rng.integers(-3, 4, (2, 3, 3))
        fab = matrix_action(spec, (a @ b).tolist())
        assert fab.tolist() == (matrix_action(spec, a.tolist()) @ matrix_action(spec, b.tolist())).tolist()


class TestModPLemmas:
    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_random_trials(self, p):
        rng = np.random.default_rng(p)
        specs = [F.identity(), F.tensor(2), F.sym(2), F.ext(2), F.direct_sum(F.identity(), F.sym(2))]
        specs += [F.sym(p - 1), F.ext(p - 1), F.tensor(p - 1)] if p <= 5 else [F.sym(4), F.ext(3)]
        for spec in specs:
            for _ in range(200):
                k = int(rng.integers(1, 4))
                a = rng.integers(-9, 10, (k, k)).tolist()
                g = rng.integers(-9, 10, (k, k)).tolist()
                assert check_p_alpha_vanishes(spec, a, p)
                assert check_mod_p_invariance(spec, a, g, p)

    def test_degree_guard(self):
        with pytest.raises(ValueError, match="degree ≥ p"):
            check_p_alpha_vanishes(F.sym(5), [[1]], 5)
        with pytest.raises(ValueError, match="degree ≥ p"):
            check_mod_p_invariance(F.tensor(3), [[1]], [[1]], 3)

    def test_constant_guard(self):
        with pytest.raises(ValueError, match="F\\(0\\) != 0"):
            check_p_alpha_vanishes(F.constant(), [[1]], 5)


class TestHomIdentities:
    def test_projectivity_examples(self):
        assert hom_dim_projectivity_identity(3, 2, F.sym(2))
        assert hom_dim_projectivity_identity(2, 5, F.constant())
        assert hom_dim_projectivity_identity(2, 3, F.tensor(2))
        with pytest.raises(ValueError):
            hom_dim_projectivity_identity(2, 2, F.tensor(3))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_cross_effect_targets(self, n):
        assert cross_effect_hom_identity(n, F.sym(n))
        assert cross_effect_hom_identity(n, F.tensor(n))
        assert cross_effect_hom_identity(n + 1, F.sym(n))

    def test_degree_exceeds(self):
        with pytest.raises(ValueError):
            cross_effect_hom_identity(2, F.tensor(3))


class TestBookkeeping:
    @pytest.mark.parametrize("p,k,dims", [(2, 2, (5, 1)), (5, 1, (2, 0)), (5, 2, (8, 4))])
    def test_values(self, p, k, dims):
        assert projective_cover_bookkeeping(p, k) == {"dimM": dims[0], "dimL": dims[1]}

    @pytest.mark.parametrize("k", range(6))
    def test_heart_at_p2_is_exterior_square(self, k):
        assert projective_cover_bookkeeping(2, k)["dimL"] == dim_at(F.ext(2), k)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_hockey_stick(self, p):
        for k in range(8):
            assert sum(dim_at(F.sym(i), k) for i in range(p)) == math.comb(k + p - 1, p - 1)

    def test_guards(self):
        with pytest.raises(ValueError):
            projective_cover_bookkeeping(4, 1)
        with pytest.raises(ValueError):
            projective_cover_bookkeeping(3, -1)


class TestCommutant:
    @pytest.mark.parametrize("p", [3, 5])
    def test_grid(self, p):
        for n in range(1, 4):
            for k in range(n, 5):
                if n == 3 and k == 4 and p == 5:
                    continue  # covered once below
                assert tensor_end_dim(n, k, p) == math.factorial(n), (n, k, p)

    def test_largest_case(self):
        assert tensor_end_dim(3, 4, 5) == 6

    def test_examples(self):
        assert tensor_end_dim(2, 2, 5) == 2
        assert tensor_end_dim(1, 4, 3) == 1

    def test_pre_stable_warning(self):
        with pytest.warns(UserWarning, match="pre-stable"):
            tensor_end_dim(3, 2, 5)

    def test_stable_range_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            tensor_end_dim(2, 2, 3)


def test_cross_effect_target_of_sums():
    assert cross_effect_hom_identity(1, F.identity())
    assert cross_effect_hom_identity(3, F.direct_sum(F.tensor(3), F.sym(3), F.ext(2)))
