"""Test cases for the partitions module."""
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monres.errors import ParameterError
from monres.partitions import (
    StrictPartition,
    canonical_partition,
    closed_form_d2,
    compositions,
    count_by_weight,
    remark_identity_check,
    satisfies_window,
    strict_partitions,
    weight_counts,
    weight_table,
)


def test_canonical_partition() -> None:
    partition = canonical_partition([1, 2, 4, 5, 7], 2)
    assert partition.blocks == ((1, 2), (4, 5), (7,))
    assert partition.weight == (2, 2, 1)
    assert partition.length == 3


def test_canonical_partition_wide_window() -> None:
    assert canonical_partition([7, 1, 4], 4).blocks == ((1, 4, 7),)


def test_canonical_partition_rejects() -> None:
    with pytest.raises(ParameterError):
        canonical_partition([], 2)
    with pytest.raises(ParameterError):
        canonical_partition([1], 0)


def test_strict_partition_validation() -> None:
    with pytest.raises(ParameterError):
        StrictPartition(((1, 3), (2,)))
    with pytest.raises(ParameterError):
        StrictPartition(((),))


def test_compositions() -> None:
    assert list(compositions(3)) == [(3,), (1, 2), (2, 1), (1, 1, 1)]
    assert list(compositions(0)) == []


def test_weight_counts() -> None:
    assert weight_counts(3, 2) == {(1,): 3, (2,): 2, (1, 1): 1, (3,): 1}


def test_count_by_weight() -> None:
    assert count_by_weight(3, 2, [1, 1]) == 1
    assert count_by_weight(3, 2, [2, 2]) == 0
    with pytest.raises(ParameterError):
        count_by_weight(3, 2, [0, 1])


def test_closed_form_d2() -> None:
    assert closed_form_d2(5, 3, 2) == comb(3, 2)
    with pytest.raises(ParameterError):
        closed_form_d2(3, 2, 3)


def test_weight_counts_match_closed_form_up_to_twelve() -> None:
    for t in range(1, 13):
        counts = weight_counts(t, 2)
        for m in range(1, t + 1):
            for weight in compositions(m):
                assert counts.get(weight, 0) == closed_form_d2(t, m, len(weight))
            assert remark_identity_check(t, m)


def test_weight_table() -> None:
    frame = weight_table(3, 2)
    assert list(frame.columns) == ["weight", "length", "size", "count", "closed_form"]
    assert frame["count"].sum() == 7
    assert (frame["count"] == frame["closed_form"]).all()


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(1, 12), min_size=1, max_size=8), st.integers(1, 4))
def test_canonical_is_the_only_window_partition(subset, d) -> None:
    canonical = canonical_partition(sorted(subset), d)
    assert satisfies_window(canonical, d)
    matching = [p for p in strict_partitions(sorted(subset)) if satisfies_window(p, d)]
    assert matching == [canonical]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(1, 4))
def test_counts_sum_to_all_nonempty_subsets(t, d) -> None:
    assert sum(weight_counts(t, d).values()) == 2**t - 1
