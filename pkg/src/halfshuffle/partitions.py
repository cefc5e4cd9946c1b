"""Set-partition and non-crossing-partition oracles.

Brute-force ground truth for the cumulant transforms: enumerate all set
partitions (restricted growth strings) or the non-crossing ones, evaluate
partition-indexed block products, and invert them recursively.  Everything
is guarded to ground sets of at most ten points; Bell(10) = 115975 is still
desk scale, beyond that is not.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .words import GuardError, Word, ZERO, ONE, connected_components, subword

__all__ = [
    "MAX_GROUND_SET",
    "FAMILIES",
    "Partition",
    "enumerate_partitions",
    "enumerate_nc",
    "enumerate_nc_recursive",
    "is_noncrossing",
    "partition_moment",
    "partition_cumulant_inversion",
    "catalan",
    "bell",
]

MAX_GROUND_SET = 10
FAMILIES = ("nc", "all")


@dataclass(frozen=True)
class Partition:
    """Set partition of {1, ..., n}; blocks are ordered by minimal element."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: list[int] = []
        for block in self.blocks:
            if not block:
                raise ValueError("blocks must be nonempty")
            if tuple(sorted(block)) != block:
                raise ValueError(f"block {block} is not sorted")
            seen.extend(block)
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {self.blocks} do not partition 1..{self.n}")
        mins = [block[0] for block in self.blocks]
        if mins != sorted(mins):
            raise ValueError("blocks must be ordered by minimal element")

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, block)) + "}" for block in self.blocks)


def _guard(n: int) -> None:
    if not 1 <= n <= MAX_GROUND_SET:
        raise GuardError(f"ground set size must be in 1..{MAX_GROUND_SET}, got {n}")


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")


def _rgs(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n: a[0] = 0, a[i] <= max(a[:i]) + 1."""
    labels = [0] * n

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(labels)
            return
        for v in range(top + 2):
            labels[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def _blocks_from_rgs(rgs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    blocks: dict[int, list[int]] = {}
    for pos, label in enumerate(rgs, start=1):
        blocks.setdefault(label, []).append(pos)
    # label order equals order of first occurrence, so minima are increasing
    return tuple(tuple(blocks[label]) for label in sorted(blocks))


@functools.cache
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All set partitions of {1, ..., n}; Bell(n) of them, canonically sorted."""
    _guard(n)
    parts = [Partition(n, _blocks_from_rgs(r)) for r in _rgs(n)]
    parts.sort(key=lambda p: p.blocks)
    return tuple(parts)


def is_noncrossing(partition: Partition) -> bool:
    """Literal crossing test: no i < j < k < l with {i,k} and {j,l} split
    across two different blocks."""
    block_of = {}
    for idx, block in enumerate(partition.blocks):
        for x in block:
            block_of[x] = idx
    for i, j, k, l in itertools.combinations(range(1, partition.n + 1), 4):
        if block_of[i] == block_of[k] != block_of[j] == block_of[l]:
            return False
    return True


def _nc_blocks(elements: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Non-crossing partitions of an ordered ground set, by first-block gaps.

    The block of the least element is chosen freely; the rest splits into the
    runs between its members, each partitioned independently.
    """
    if not elements:
        yield ()
        return
    first, rest = elements[0], elements[1:]
    for mask in range(1 << len(rest)):
        block = (first,) + tuple(rest[i] for i in range(len(rest)) if (mask >> i) & 1)
        gaps = connected_components(block, elements)
        for combo in itertools.product(*(tuple(_nc_blocks(gap)) for gap in gaps)):
            blocks = [block]
            for gap_blocks in combo:
                blocks.extend(gap_blocks)
            blocks.sort(key=lambda b: b[0])
            yield tuple(blocks)


@functools.cache
def enumerate_nc_recursive(n: int) -> tuple[Partition, ...]:
    """Non-crossing partitions via first-block gap decomposition."""
    _guard(n)
    parts = [Partition(n, blocks) for blocks in _nc_blocks(tuple(range(1, n + 1)))]
    parts.sort(key=lambda p: p.blocks)
    return tuple(parts)


@functools.cache
def enumerate_nc(n: int) -> tuple[Partition, ...]:
    """All non-crossing partitions of {1, ..., n}; Catalan(n) of them.

    Filters the full partition list through the literal crossing test up to
    n = 8; larger ground sets use the gap recursion for speed (the two paths
    are checked against each other in the test suite).
    """
    _guard(n)
    if n <= 8:
        return tuple(p for p in enumerate_partitions(n) if is_noncrossing(p))
    return enumerate_nc_recursive(n)


def _family(n: int, family: str) -> tuple[Partition, ...]:
    _check_family(family)
    return enumerate_nc(n) if family == "nc" else enumerate_partitions(n)


def partition_moment(values: Mapping[Word, Fraction], word: Word, family: str) -> Fraction:
    """Sum over the partition family of the block products of ``values``.

    Each block contributes the value of the subword of ``word`` at its
    positions; missing values are an error.
    """
    total = ZERO
    for partition in _family(word.degree, family):
        product = ONE
        for block in partition.blocks:
            piece = subword(word, block)
            try:
                product *= values[piece]
            except KeyError:
                raise ValueError(f"no value provided for subword {piece!r}") from None
            if not product:
                break
        total += product
    return total


def partition_cumulant_inversion(
    phi: Mapping[Word, Fraction], word: Word, family: str
) -> Fraction:
    """The unique block-product inverse: the value at ``word`` making the
    partition sum reproduce ``phi``, computed by recursion on the degree."""
    _check_family(family)
    memo: dict[Word, Fraction] = {}

    def kappa(w: Word) -> Fraction:
        cached = memo.get(w)
        if cached is not None:
            return cached
        try:
            total = phi[w]
        except KeyError:
            raise ValueError(f"no value provided for subword {w!r}") from None
        for partition in _family(w.degree, family):
            if partition.num_blocks == 1:
                continue
            product = ONE
            for block in partition.blocks:
                product *= kappa(subword(w, block))
                if not product:
                    break
            total -= product
        memo[w] = total
        return total

    return kappa(word)


@functools.cache
def catalan(n: int) -> int:
    """Catalan numbers by the convolution recurrence; catalan(0) = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


@functools.cache
def bell(n: int) -> int:
    """Bell numbers by the binomial recurrence; bell(0) = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    return sum(math.comb(n - 1, i) * bell(i) for i in range(n))
