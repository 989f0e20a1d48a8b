from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from vdm_ideals.combinatorics import (
    SetPartition,
    binomial,
    enumerate_partitions,
    p_count,
    stirling2,
)
from vdm_ideals.errors import DomainError


def brute_partitions(n, k):
    """All set partitions of 1..n into k blocks, via every labelling."""
    seen = set()
    for labels in product(range(k), repeat=n):
        if len(set(labels)) != k:
            continue
        blocks = frozenset(
            frozenset(i + 1 for i in range(n) if labels[i] == b) for b in range(k)
        )
        seen.add(blocks)
    return seen


def brute_p_count(m, i, j):
    return sum(
        1
        for a in product(range(i + 1), repeat=m)
        if sum(a) == i and sum((t + 1) * x for t, x in enumerate(a)) == j
    )


@pytest.mark.parametrize("n", range(1, 9))
def test_stirling_first_column_is_one(n):
    assert stirling2(n, 1) == 1
    assert stirling2(n, n) == 1


def test_stirling_next_to_diagonal_is_binomial():
    assert stirling2(4, 3) == 6 == binomial(4, 2)
    for n in range(2, 12):
        assert stirling2(n, n - 1) == comb(n, 2)


def test_stirling_values_against_enumeration():
    # frozen from brute_partitions
    expected = {(6, 2): 31, (6, 3): 90, (7, 3): 301, (5, 2): 15, (4, 2): 7}
    for (n, k), value in expected.items():
        assert len(brute_partitions(n, k)) == value
        assert stirling2(n, k) == value


@pytest.mark.parametrize("n,k", [(0, 1), (3, 0), (3, 4), (-1, -1)])
def test_stirling_domain(n, k):
    with pytest.raises(DomainError):
        stirling2(n, k)


def test_stirling_recurrence():
    for n in range(3, 13):
        for k in range(2, n):
            assert stirling2(n, k) == stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def test_stirling_is_exact_for_large_arguments():
    # S(60, 30) is far beyond 64 bits
    assert stirling2(60, 30) > 2**64
    assert stirling2(60, 30) == stirling2(59, 29) + 30 * stirling2(59, 30)


def test_binomial():
    assert binomial(5, 2) == 10
    assert binomial(7, 0) == 1
    assert binomial(0, 0) == 1
    assert binomial(5, 7) == 0
    assert binomial(5, -1) == 0
    with pytest.raises(DomainError):
        binomial(-1, 0)


def test_p_count_zero_row():
    for m in range(1, 5):
        assert p_count(m, 0, 0) == 1
        assert all(p_count(m, 0, j) == 0 for j in range(1, 6))


def test_p_count_example():
    # (0,2,0) and (1,0,1)
    assert brute_p_count(3, 2, 4) == 2
    assert p_count(3, 2, 4) == 2


def test_p_count_matches_brute_force():
    for m in range(1, 5):
        for i in range(0, 5):
            for j in range(0, i * m + 3):
                assert p_count(m, i, j) == brute_p_count(m, i, j), (m, i, j)


def test_p_count_two_is_zero_or_one():
    assert {p_count(2, i, j) for i in range(10) for j in range(25)} == {0, 1}


@pytest.mark.parametrize("m", range(1, 6))
@pytest.mark.parametrize("i", range(1, 6))
def test_p_count_support_and_row_sum(m, i):
    row = {j: p_count(m, i, j) for j in range(0, i * m + 4)}
    assert all((v != 0) == (i <= j <= i * m) for j, v in row.items())
    assert sum(row.values()) == binomial(m + i - 1, i)


def test_p_count_domain():
    with pytest.raises(DomainError):
        p_count(0, 1, 1)
    with pytest.raises(DomainError):
        p_count(2, -1, 0)


def test_enumerate_partitions_small():
    parts = enumerate_partitions(3, 2)
    assert {str(p) for p in parts} == {"{1}{2,3}", "{1,2}{3}", "{1,3}{2}"}
    # restricted growth strings 001, 010, 011
    assert [p.growth_string() for p in parts] == [(0, 0, 1), (0, 1, 0), (0, 1, 1)]


def test_enumerate_partitions_forced_cases():
    assert [str(p) for p in enumerate_partitions(4, 4)] == ["{1}{2}{3}{4}"]
    assert [str(p) for p in enumerate_partitions(4, 1)] == ["{1,2,3,4}"]
    assert len(enumerate_partitions(5, 2)) == 15
    assert [str(p) for p in enumerate_partitions(1, 1)] == ["{1}"]


def test_enumerate_partitions_counts_and_order():
    for n in range(1, 10):
        for k in range(1, n + 1):
            parts = enumerate_partitions(n, k)
            assert len(parts) == stirling2(n, k)
            strings = [p.growth_string() for p in parts]
            assert strings == sorted(strings)
            assert len(set(strings)) == len(strings)


def test_enumerate_partitions_agrees_with_brute_force():
    for n in range(1, 7):
        for k in range(1, n + 1):
            ours = {frozenset(frozenset(b) for b in p.blocks) for p in enumerate_partitions(n, k)}
            assert ours == brute_partitions(n, k)


def test_set_partition_canonical_form():
    p = SetPartition(4, ((3, 2), (4, 1)))
    assert p.blocks == ((1, 4), (2, 3))
    assert p.representatives() == (1, 2, 2, 1)
    assert p.k == 2


@pytest.mark.parametrize(
    "blocks",
    [((1, 2), (2, 3)), ((1,), (3,)), ((1, 2, 3), ()), ((0, 1), (2, 3))],
)
def test_set_partition_rejects_bad_blocks(blocks):
    with pytest.raises(DomainError):
        SetPartition(3, blocks)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_partitions_are_valid(nk):
    n, k = nk
    for p in enumerate_partitions(n, k):
        assert p.k == k
        assert sorted(x for b in p.blocks for x in b) == list(range(1, n + 1))
        assert [b[0] for b in p.blocks] == sorted(b[0] for b in p.blocks)
