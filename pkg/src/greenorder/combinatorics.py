"""Partition enumeration: all partitions, p-regular ones, hooks."""

from __future__ import annotations

from typing import Iterator


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first, *rest)


def count_partitions(n: int) -> int:
    return sum(1 for _ in partitions(n))


def is_p_regular(partition: tuple[int, ...], p: int) -> bool:
    """No part occurs p or more times."""
    return all(partition.count(part) < p for part in set(partition))


def count_p_regular(n: int, p: int) -> int:
    return sum(1 for lam in partitions(n) if is_p_regular(lam, p))


def is_hook(partition: tuple[int, ...]) -> bool:
    return all(part == 1 for part in partition[1:])


def hooks(n: int) -> list[tuple[int, ...]]:
    return [lam for lam in partitions(n) if is_hook(lam)]


def non_hooks(n: int) -> list[tuple[int, ...]]:
    return [lam for lam in partitions(n) if not is_hook(lam)]
