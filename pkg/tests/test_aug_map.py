"""Ordered augmented map against linear-scan and sorted-array oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaselib.aug_map import (
    MAX_VALUES,
    MIN_VALUES,
    SUM_VALUES,
    AugOrderedMap,
    Monoid,
    PivotMultiMap,
)
from phaselib.errors import DuplicateKeyError, UnsortedInputError


def scan_fold(entries, aug, lo, hi, include_lo=True, include_hi=True):
    acc = aug.identity
    for k, v in entries:
        if lo is not None and (k < lo or (k == lo and not include_lo)):
            continue
        if hi is not None and (k > hi or (k == hi and not include_hi)):
            continue
        acc = aug.combine(acc, aug.base(k, v))
    return acc


def test_empty_map_identity():
    m = AugOrderedMap.empty(SUM_VALUES)
    assert m.range_sum() == 0
    assert m.range_sum(-5, 5) == 0
    assert m.flatten() == []


def test_build_and_full_sum():
    m = AugOrderedMap.build([(1, 10), (2, 20), (3, 30)], SUM_VALUES)
    assert m.range_sum(1, 3) == 60
    assert m.range_sum(2, 3) == 50
    assert m.range_sum(2, 2) == 20
    assert m.range_sum(2, 2, include_hi=False) == 0


def test_range_no_entries_in_range():
    m = AugOrderedMap.build([(1, 5), (4, 7)], SUM_VALUES)
    assert m.range_sum(2, 3) == 0


def test_inverted_range_is_identity():
    m = AugOrderedMap.build([(1, 5), (4, 7)], MAX_VALUES)
    assert m.range_sum(4, 1) == MAX_VALUES.identity


def test_build_rejects_unsorted_and_duplicates():
    with pytest.raises(UnsortedInputError):
        AugOrderedMap.build([(2, 1), (1, 1)], SUM_VALUES)
    with pytest.raises(DuplicateKeyError):
        AugOrderedMap.build([(1, 1), (1, 2)], SUM_VALUES)


def test_rangesum_exhaustive_small_maps():
    rng = np.random.default_rng(0)
    for n in range(0, 65, 7):
        keys = np.sort(rng.choice(200, size=n, replace=False))
        vals = rng.integers(-50, 50, n)
        entries = list(zip(keys.tolist(), vals.tolist()))
        for aug in (SUM_VALUES, MAX_VALUES, MIN_VALUES):
            m = AugOrderedMap.build(entries, aug)
            bounds = [None] + keys.tolist()
            for lo in bounds:
                for hi in bounds:
                    assert m.range_sum(lo, hi) == scan_fold(entries, aug, lo, hi)


def test_rangesum_max_200_random_entries():
    rng = np.random.default_rng(1)
    keys = np.sort(rng.choice(10_000, size=200, replace=False))
    vals = rng.integers(0, 1000, 200)
    entries = list(zip(keys.tolist(), vals.tolist()))
    m = AugOrderedMap.build(entries, MAX_VALUES)
    for _ in range(1000):
        lo, hi = sorted(rng.integers(0, 10_000, 2).tolist())
        assert m.range_sum(lo, hi) == scan_fold(entries, MAX_VALUES, lo, hi)


def test_custom_monoid_generic_path():
    # concatenation monoid: associative, not commutative, no numpy fast path
    aug = Monoid("", lambda a, b: a + b, lambda k, v: v)
    entries = [(i, chr(ord("a") + i)) for i in range(9)]
    m = AugOrderedMap.build(entries, aug)
    assert m.range_sum(2, 5) == "cdef"
    assert m.range_sum() == "abcdefghi"


@given(
    st.lists(st.tuples(st.integers(-40, 40), st.integers(-5, 5)), max_size=40),
    st.integers(-45, 45),
)
def test_split_partitions_everything(pairs, split_key):
    dedup = {}
    for k, v in pairs:
        dedup[k] = v
    entries = sorted(dedup.items())
    m = AugOrderedMap.build(entries, SUM_VALUES)
    left, right = m.split_at(split_key)
    assert all(k <= split_key for k, _ in left.flatten())
    assert all(k > split_key for k, _ in right.flatten())
    assert left.flatten() + right.flatten() == entries
    # the original window still answers queries after the split
    assert m.range_sum() == sum(v for _, v in entries)


def test_split_empty():
    left, right = AugOrderedMap.empty(SUM_VALUES).split_at(3)
    assert left.flatten() == [] and right.flatten() == []


def test_split_boundary_inclusive_left():
    m = AugOrderedMap.build([(1, 1), (2, 1), (3, 1), (4, 1)], SUM_VALUES)
    left, right = m.split_at(2)
    assert [k for k, _ in left.flatten()] == [1, 2]
    assert [k for k, _ in right.flatten()] == [3, 4]


def test_multi_insert_into_empty_sorts():
    m = AugOrderedMap.empty(SUM_VALUES)
    m2 = m.multi_insert([(3, 1), (1, 2), (2, 3)])
    assert m2.flatten() == [(1, 2), (2, 3), (3, 1)]


def test_multi_delete_all_keys():
    m = AugOrderedMap.build([(1, 1), (2, 2)], SUM_VALUES)
    assert m.multi_delete([1, 2]).flatten() == []
    assert m.multi_delete([99]).flatten() == m.flatten()


def test_multi_update_reports_missing():
    m = AugOrderedMap.build([(1, 1), (2, 2)], SUM_VALUES)
    m2, summary = m.multi_update([(1, 10), (9, 9)])
    assert summary.applied == 1 and summary.missing == (9,)
    assert m2.get(1) == 10 and m2.get(2) == 2
    assert m2.range_sum() == 12


def test_update_after_split_does_not_corrupt_sibling():
    m = AugOrderedMap.build([(i, i) for i in range(8)], SUM_VALUES)
    left, right = m.split_at(3)
    left2, _ = left.multi_update([(0, 100)])
    assert left2.get(0) == 100
    assert left.get(0) == 0  # shared backing copied on write
    assert right.range_sum() == 4 + 5 + 6 + 7


@given(
    st.lists(
        st.tuples(st.sampled_from("ido"), st.integers(0, 25), st.integers(-9, 9)),
        max_size=40,
    )
)
@settings(max_examples=80)
def test_interleaved_script_matches_sorted_array_replay(script):
    m = AugOrderedMap.empty(SUM_VALUES)
    ref: dict = {}
    for op, k, v in script:
        if op == "i":
            m = m.multi_insert([(k, v)])
            ref[k] = v
        elif op == "d":
            m = m.multi_delete([k])
            ref.pop(k, None)
        else:
            m, _ = m.multi_update([(k, v)])
            if k in ref:
                ref[k] = v
    assert m.flatten() == sorted(ref.items())


def test_batch_ops_thread_count_independent():
    rng = np.random.default_rng(4)
    keys = np.sort(rng.choice(100_000, 5000, replace=False)).astype(float)
    vals = rng.integers(0, 10**6, 5000).astype(float)
    m = AugOrderedMap.build(list(zip(keys.tolist(), vals.tolist())), MAX_VALUES)
    his = rng.choice(keys, 700)
    ref = m.range_sum_batch(his, threads=1)
    for t in (2, 8):
        assert np.array_equal(m.range_sum_batch(his, threads=t), ref)


def test_range_sum_batch_matches_scalar():
    rng = np.random.default_rng(5)
    keys = np.sort(rng.choice(3000, 300, replace=False)).astype(float)
    vals = rng.integers(0, 100, 300).astype(float)
    entries = list(zip(keys.tolist(), vals.tolist()))
    m = AugOrderedMap.build(entries, MAX_VALUES)
    his = rng.integers(0, 3000, 200).astype(float)
    batch = m.range_sum_batch(his)
    for h, b in zip(his.tolist(), batch.tolist()):
        scalar = m.range_sum(None, h)
        if scalar == MAX_VALUES.identity:
            assert b == -np.inf  # numpy identity of the float max reduction
        else:
            assert scalar == b


def test_monoid_laws_randomized():
    rng = np.random.default_rng(6)
    for aug in (SUM_VALUES, MAX_VALUES, MIN_VALUES):
        vals = rng.integers(-1000, 1000, 30).tolist()
        for a in vals[:10]:
            assert aug.combine(aug.identity, a) == a
            assert aug.combine(a, aug.identity) == a
        for a, b, c in zip(vals, vals[10:], vals[20:]):
            assert aug.combine(aug.combine(a, b), c) == aug.combine(a, aug.combine(b, c))


# -- pivot multimap ------------------------------------------------------------


def test_multifind_empty():
    assert list(PivotMultiMap().multi_find([0, 1, 2])) == []


def test_multifind_basic():
    pm = PivotMultiMap()
    pm.multi_insert([(0, 1), (0, 2), (5, 3)])
    assert list(pm.multi_find([0])) == [1, 2]
    assert list(pm.multi_find([0, 5])) == [1, 2, 3]
    assert list(pm.multi_find([7])) == []


def test_multimap_rejects_duplicate_pairs():
    pm = PivotMultiMap()
    pm.multi_insert([(1, 2)])
    with pytest.raises(DuplicateKeyError):
        pm.multi_insert([(1, 2)])


def test_multimap_delete_then_reinsert():
    pm = PivotMultiMap()
    pm.multi_insert([(1, 2), (1, 3)])
    pm.multi_delete([(1, 2)])
    assert list(pm.multi_find([1])) == [3]
    pm.multi_insert([(1, 2)])
    assert sorted(pm.multi_find([1])) == [2, 3]


@given(
    st.lists(st.tuples(st.integers(0, 8), st.integers(0, 30)), max_size=50, unique=True),
    st.lists(st.integers(0, 8), max_size=5),
)
def test_multifind_matches_hash_multimap(pairs, query):
    pm = PivotMultiMap()
    pm.multi_insert(pairs)
    ref: dict = {}
    for p, o in pairs:
        ref.setdefault(p, []).append(o)
    expect = []
    for p in sorted(set(query)):
        expect.extend(ref.get(p, []))
    assert list(pm.multi_find(query)) == expect
