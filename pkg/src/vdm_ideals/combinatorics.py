"""Exact integer combinatorics: Stirling numbers, binomials, the
``p_count`` statistic and set-partition enumeration.

All counts are Python ints, so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import DomainError


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``{1, ..., n}`` into nonempty blocks.

    Blocks are sorted tuples, ordered by their minima (canonical form).
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"ground set size must be positive, got {self.n}")
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if any(not b for b in blocks):
            raise DomainError("blocks must be nonempty")
        blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(1, self.n + 1)):
            raise DomainError(f"blocks {blocks} do not partition 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def representative(self, i: int) -> int:
        """Minimum of the block containing ``i``."""
        for b in self.blocks:
            if i in b:
                return b[0]
        raise DomainError(f"{i} is not in 1..{self.n}")

    def representatives(self) -> tuple[int, ...]:
        """Block minimum for each of 1..n, as a tuple indexed from 0."""
        rep = [0] * self.n
        for b in self.blocks:
            for x in b:
                rep[x - 1] = b[0]
        return tuple(rep)

    def growth_string(self) -> tuple[int, ...]:
        """Restricted growth string: entry i is the block index of i+1."""
        label = [0] * self.n
        for idx, b in enumerate(self.blocks):
            for x in b:
                label[x - 1] = idx
        return tuple(label)

    def __str__(self):
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def _check_nk(n: int, k: int) -> None:
    if n < 1 or k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    # row[k] = S(n, k) for k = 0..n
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1) + (0,)
    return (0,) + tuple(prev[k - 1] + k * prev[k] for k in range(1, n + 1))


def stirling2(n: int, k: int) -> int:
    """Number of partitions of an n-set into k nonempty blocks."""
    _check_nk(n, k)
    return _stirling_row(n)[k]


def binomial(m: int, r: int) -> int:
    if m < 0:
        raise DomainError(f"binomial needs m >= 0, got {m}")
    if r < 0 or r > m:
        return 0
    return math.comb(m, r)


@lru_cache(maxsize=None)
def _p_dp(m: int, i: int, j: int) -> int:
    # ways to write (i, j) with parts of weight 1..m
    if i == 0:
        return 1 if j == 0 else 0
    if m == 0 or j < i or j > i * m:
        return 0
    # a_m copies of weight m, the rest uses weights 1..m-1
    return sum(_p_dp(m - 1, i - a, j - m * a) for a in range(0, min(i, j // m) + 1))


def p_count(m: int, i: int, j: int) -> int:
    """Count of ``(a_1, ..., a_m)`` in N^m with ``sum a_t = i`` and
    ``sum t * a_t = j``.

    This is the dimension of the degree-j part of the i-th symmetric
    power of a space with basis in degrees 1..m. For ``i = 0`` the
    value is 1 if ``j = 0`` and 0 otherwise.
    """
    if m < 1 or i < 0 or j < 0:
        raise DomainError(f"p_count needs m >= 1, i >= 0, j >= 0; got {m}, {i}, {j}")
    return _p_dp(m, i, j)


def _growth_strings(n: int, k: int) -> Iterator[list[int]]:
    # lexicographic restricted growth strings with exactly k distinct labels
    s = [0] * n

    def rec(pos: int, top: int):
        # top = current max label; labels still needed = k - 1 - top
        if pos == n:
            if top == k - 1:
                yield list(s)
            return
        if n - pos < k - 1 - top:
            return
        for v in range(0, min(top + 1, k - 1) + 1):
            s[pos] = v
            yield from rec(pos + 1, max(top, v))

    s[0] = 0
    if n == 1:
        if k == 1:
            yield [0]
        return
    yield from rec(1, 0)


def enumerate_partitions(n: int, k: int) -> list[SetPartition]:
    """All partitions of ``{1..n}`` into exactly k blocks, ordered by
    restricted growth string (lexicographic)."""
    _check_nk(n, k)
    out = []
    for s in _growth_strings(n, k):
        blocks: list[list[int]] = [[] for _ in range(k)]
        for idx, label in enumerate(s):
            blocks[label].append(idx + 1)
        out.append(SetPartition(n, tuple(tuple(b) for b in blocks)))
    return out
