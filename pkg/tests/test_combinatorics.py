import pytest
from sympy.functions.combinatorial.numbers import partition
from hypothesis import given, strategies as st

from greenorder.combinatorics import (
    count_p_regular,
    count_partitions,
    hooks,
    is_hook,
    is_p_regular,
    non_hooks,
    partitions,
)


@given(st.integers(0, 25))
def test_partition_count_matches_sympy(n):
    assert count_partitions(n) == partition(n)


@given(st.integers(1, 20))
def test_partitions_are_valid_and_distinct(n):
    parts = list(partitions(n))
    assert len(set(parts)) == len(parts)
    for lam in parts:
        assert sum(lam) == n
        assert list(lam) == sorted(lam, reverse=True)


@given(st.integers(1, 20), st.sampled_from([2, 3, 5, 7]))
def test_p_regular_equals_parts_not_divisible_by_p(n, p):
    # Glaisher: no part repeated p times <-> no part divisible by p
    other = sum(1 for lam in partitions(n) if all(part % p for part in lam))
    assert count_p_regular(n, p) == other


def test_small_values():
    assert [count_partitions(k) for k in range(2, 7)] == [2, 3, 5, 7, 11]
    assert [count_p_regular(n, 5) for n in range(1, 6)] == [1, 2, 3, 5, 6]
    assert not is_p_regular((1, 1, 1, 1, 1), 5)
    assert is_hook((3, 1, 1)) and not is_hook((2, 2))
    assert sorted(non_hooks(5)) == [(2, 2, 1), (3, 2)]
    assert len(hooks(7)) == 7


def test_negative():
    with pytest.raises(ValueError):
        list(partitions(-1))
