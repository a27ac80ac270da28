"""Sorted ordered map with monoid augmentation, plus a pivot multimap.

The map stores (key, value) entries sorted strictly by key and keeps an
implicit segment tree of augmented values so any key range can report its
monoid fold in O(log n).  `split_at` returns two windows over the shared
backing store (copy-on-write), so repeated frontier splits cost O(log n)
each.  Batch mutations produce a fresh backing.

For the built-in numeric monoids (sum/min/max over values) the tree is a
numpy array and batch queries/updates are vectorized; arbitrary monoids
fall back to a Python object tree with identical semantics.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from ._parallel import map_chunks
from .errors import DuplicateKeyError, UnsortedInputError

NEG_INF = float("-inf")
POS_INF = float("inf")


@dataclass(frozen=True)
class Monoid:
    """Augmentation: identity element, associative combine, per-entry base.

    `kind` may name one of the built-in reductions ("sum", "max", "min")
    whose base is plain value extraction; it unlocks the vectorized path.
    """

    identity: Any
    combine: Callable[[Any, Any], Any]
    base: Callable[[Any, Any], Any]
    kind: str | None = None


SUM_VALUES = Monoid(0, lambda a, b: a + b, lambda k, v: v, kind="sum")
MAX_VALUES = Monoid(NEG_INF, max, lambda k, v: v, kind="max")
MIN_VALUES = Monoid(POS_INF, min, lambda k, v: v, kind="min")

_NP_IDENTITY = {
    ("sum", "i"): 0,
    ("sum", "f"): 0.0,
    ("max", "i"): np.iinfo(np.int64).min,
    ("max", "f"): -np.inf,
    ("min", "i"): np.iinfo(np.int64).max,
    ("min", "f"): np.inf,
}
_NP_OP = {"sum": np.add, "max": np.maximum, "min": np.minimum}


def _is_number(x) -> bool:
    return isinstance(x, (int, float, np.integer, np.floating)) and not isinstance(x, bool)


class _Backing:
    """Storage shared by map windows: sorted keys, values, aggregate tree.

    The tree is the implicit 2n-array segment tree (leaves at n..2n-1);
    it is valid for any n and associative, not necessarily commutative,
    combines as long as left/right accumulators are folded in order.
    """

    def __init__(self, keys: list, values: list, aug: Monoid):
        self.keys = keys
        self.values = values
        self.aug = aug
        self.shared = False
        n = len(keys)
        self.fast = (
            aug.kind in _NP_OP
            and all(_is_number(k) for k in keys)
            and all(_is_number(v) for v in values)
        )
        if self.fast:
            vals = np.asarray(values) if n else np.asarray([], dtype=np.int64)
            keys_arr = np.asarray(keys) if n else np.asarray([], dtype=np.int64)
            if vals.dtype.kind not in "if" or keys_arr.dtype.kind not in "if":
                self.fast = False
        if self.fast:
            self.np_keys = keys_arr.astype(np.float64 if keys_arr.dtype.kind == "f" else np.int64)
            dt = "f" if vals.dtype.kind == "f" else "i"
            self.np_identity = _NP_IDENTITY[(aug.kind, dt)]
            dtype = np.float64 if dt == "f" else np.int64
            tree = np.full(max(2 * n, 1), self.np_identity, dtype=dtype)
            if n:
                tree[n:] = vals.astype(dtype)
                op = _NP_OP[aug.kind]
                hi = n
                while hi > 1:
                    lo = (hi + 1) // 2  # children of [lo, hi) are all >= hi
                    a = np.arange(lo, hi)
                    tree[a] = op(tree[2 * a], tree[2 * a + 1])
                    hi = lo
            self.tree = tree
        else:
            tree: list = [aug.identity] * max(2 * n, 1)
            for i in range(n):
                tree[n + i] = aug.base(keys[i], values[i])
            for i in range(n - 1, 0, -1):
                tree[i] = aug.combine(tree[2 * i], tree[2 * i + 1])
            self.tree = tree

    def recompute_leaf(self, i: int):
        n = len(self.keys)
        combine = _NP_OP[self.aug.kind] if self.fast else self.aug.combine
        self.tree[n + i] = (
            self.values[i] if self.fast else self.aug.base(self.keys[i], self.values[i])
        )
        p = (n + i) >> 1
        while p >= 1:
            self.tree[p] = combine(self.tree[2 * p], self.tree[2 * p + 1])
            p >>= 1

    def fold(self, l: int, r: int):
        """Monoid fold over entries [l, r), left to right."""
        aug = self.aug
        n = len(self.keys)
        if l >= r:
            return aug.identity
        if self.fast:
            op = _NP_OP[aug.kind]
            acc = self.np_identity
            l += n
            r += n
            while l < r:
                if l & 1:
                    acc = op(acc, self.tree[l])
                    l += 1
                if r & 1:
                    r -= 1
                    acc = op(acc, self.tree[r])
                l >>= 1
                r >>= 1
            return acc.item() if hasattr(acc, "item") else acc
        resl = aug.identity
        resr = aug.identity
        l += n
        r += n
        while l < r:
            if l & 1:
                resl = aug.combine(resl, self.tree[l])
                l += 1
            if r & 1:
                r -= 1
                resr = aug.combine(self.tree[r], resr)
            l >>= 1
            r >>= 1
        return aug.combine(resl, resr)

    def fold_prefix_batch(self, rs: np.ndarray) -> np.ndarray:
        """Vectorized fold over [0, r) for each r in rs (fast path only)."""
        n = len(self.keys)
        op = _NP_OP[self.aug.kind]
        acc = np.full(len(rs), self.np_identity, dtype=self.tree.dtype)
        l = np.full(len(rs), n, dtype=np.int64)
        r = np.asarray(rs, dtype=np.int64) + n
        while True:
            active = l < r
            if not active.any():
                break
            take_l = active & ((l & 1) == 1)
            if take_l.any():
                acc[take_l] = op(acc[take_l], self.tree[l[take_l]])
                l[take_l] += 1
            take_r = active & ((r & 1) == 1)
            if take_r.any():
                r[take_r] -= 1
                acc[take_r] = op(acc[take_r], self.tree[r[take_r]])
            l[active] >>= 1
            r[active] >>= 1
        return acc

    def update_leaves_batch(self, idxs: np.ndarray, vals: np.ndarray):
        """Vectorized point updates with bottom-up ancestor recompute."""
        n = len(self.keys)
        vals = np.asarray(vals)
        self.tree[idxs + n] = vals.astype(self.tree.dtype)
        for i, v in zip(idxs.tolist(), vals.tolist()):
            self.values[i] = v
        op = _NP_OP[self.aug.kind]
        # all ancestors, recomputed one depth at a time (parent of a node
        # with bit length b has bit length b-1, so waves are independent)
        levels = int(2 * n).bit_length()
        anc = (idxs + n)[:, None] >> np.arange(1, levels + 1, dtype=np.int64)[None, :]
        anc = np.unique(anc)
        anc = anc[anc >= 1]
        if not len(anc):
            return
        bl = np.floor(np.log2(anc.astype(np.float64))).astype(np.int64)
        for b in np.unique(bl)[::-1]:
            grp = anc[bl == b]
            self.tree[grp] = op(self.tree[2 * grp], self.tree[2 * grp + 1])


@dataclass
class UpdateSummary:
    applied: int
    missing: tuple = ()


class AugOrderedMap:
    """Window [lo, hi) over a shared backing; the public sorted-map API."""

    def __init__(self, backing: _Backing, lo: int, hi: int):
        self._b = backing
        self._lo = lo
        self._hi = hi

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, entries: Sequence[tuple], aug: Monoid) -> "AugOrderedMap":
        """Build from a key-sorted sequence of (key, value); keys unique."""
        entries = list(entries)
        keys = [k for k, _ in entries]
        for a, b in zip(keys, keys[1:]):
            if a == b:
                raise DuplicateKeyError(f"duplicate key {a!r}")
            if b < a:
                raise UnsortedInputError(f"keys out of order at {b!r}")
        values = [v for _, v in entries]
        return cls(_Backing(keys, values, aug), 0, len(keys))

    @classmethod
    def empty(cls, aug: Monoid) -> "AugOrderedMap":
        return cls(_Backing([], [], aug), 0, 0)

    # -- inspection --------------------------------------------------------

    def __len__(self) -> int:
        return self._hi - self._lo

    @property
    def aug(self) -> Monoid:
        return self._b.aug

    def flatten(self) -> list[tuple]:
        return list(zip(self._b.keys[self._lo:self._hi], self._b.values[self._lo:self._hi]))

    def keys(self) -> list:
        return self._b.keys[self._lo:self._hi]

    def get(self, key, default=None):
        i = bisect_left(self._b.keys, key, self._lo, self._hi)
        if i < self._hi and self._b.keys[i] == key:
            return self._b.values[i]
        return default

    def min_key(self):
        return self._b.keys[self._lo] if len(self) else None

    # -- queries -----------------------------------------------------------

    def _bounds(self, lo, hi, include_lo: bool, include_hi: bool) -> tuple[int, int]:
        if lo is None:
            l = self._lo
        else:
            cut = bisect_left if include_lo else bisect_right
            l = cut(self._b.keys, lo, self._lo, self._hi)
        if hi is None:
            r = self._hi
        else:
            cut = bisect_right if include_hi else bisect_left
            r = cut(self._b.keys, hi, self._lo, self._hi)
        return l, r

    def range_sum(self, lo=None, hi=None, include_lo: bool = True, include_hi: bool = True):
        """Monoid fold over entries with key in the range; identity if empty.

        Endpoint openness is chosen per call; an inverted range (lo > hi)
        selects nothing and returns the identity, by convention.
        """
        l, r = self._bounds(lo, hi, include_lo, include_hi)
        return self._b.fold(l, r) if l < r else self._b.aug.identity

    def range_sum_batch(self, his: Sequence, include_hi: bool = True, threads: int = 1) -> np.ndarray:
        """Vectorized range_sum(None, hi) for many hi (numeric, unsplit maps).

        Returns raw numpy aggregates; an empty range yields the numpy
        identity of the reduction (not the Python-level identity).
        """
        if not self._b.fast:
            raise TypeError("batch queries require a numeric sum/min/max map")
        if self._lo != 0 or self._hi != len(self._b.keys):
            raise TypeError("batch queries require an unsplit map")
        his = np.asarray(his)
        side = "right" if include_hi else "left"
        rs = np.searchsorted(self._b.np_keys, his, side=side)
        out = np.empty(len(rs), dtype=self._b.tree.dtype)

        def run(lo: int, hi: int):
            out[lo:hi] = self._b.fold_prefix_batch(rs[lo:hi])

        map_chunks(run, len(rs), threads=threads)
        return out

    # -- split -------------------------------------------------------------

    def split_at(self, key) -> tuple["AugOrderedMap", "AugOrderedMap"]:
        """Partition into (keys <= key, keys > key) without copying entries."""
        mid = bisect_right(self._b.keys, key, self._lo, self._hi)
        self._b.shared = True
        return (
            AugOrderedMap(self._b, self._lo, mid),
            AugOrderedMap(self._b, mid, self._hi),
        )

    # -- batch mutations ---------------------------------------------------

    @staticmethod
    def _check_batch_keys(batch_keys: list):
        seen = sorted(batch_keys)
        for a, b in zip(seen, seen[1:]):
            if a == b:
                raise DuplicateKeyError(f"duplicate key {a!r} in batch")

    def multi_insert(self, batch: Iterable[tuple]) -> "AugOrderedMap":
        """Insert (key, value) pairs; an existing key has its value replaced."""
        batch = sorted(batch, key=lambda kv: kv[0])
        self._check_batch_keys([k for k, _ in batch])
        keys = self.keys()
        values = self._b.values[self._lo:self._hi]
        out_k: list = []
        out_v: list = []
        i = j = 0
        while i < len(keys) and j < len(batch):
            if batch[j][0] < keys[i]:
                out_k.append(batch[j][0])
                out_v.append(batch[j][1])
                j += 1
            elif keys[i] < batch[j][0]:
                out_k.append(keys[i])
                out_v.append(values[i])
                i += 1
            else:
                out_k.append(batch[j][0])
                out_v.append(batch[j][1])
                i += 1
                j += 1
        out_k.extend(keys[i:])
        out_v.extend(values[i:])
        out_k.extend(k for k, _ in batch[j:])
        out_v.extend(v for _, v in batch[j:])
        return AugOrderedMap(_Backing(out_k, out_v, self._b.aug), 0, len(out_k))

    def multi_delete(self, batch_keys: Iterable) -> "AugOrderedMap":
        """Delete a batch of keys; absent keys are no-ops."""
        drop = set(batch_keys)
        out_k: list = []
        out_v: list = []
        for i in range(self._lo, self._hi):
            if self._b.keys[i] not in drop:
                out_k.append(self._b.keys[i])
                out_v.append(self._b.values[i])
        return AugOrderedMap(_Backing(out_k, out_v, self._b.aug), 0, len(out_k))

    def multi_update(self, batch: Iterable[tuple]) -> tuple["AugOrderedMap", UpdateSummary]:
        """Set values of existing keys; absent keys are reported, not applied."""
        batch = list(batch)
        self._check_batch_keys([k for k, _ in batch])
        target = self
        if self._b.shared or self._lo != 0 or self._hi != len(self._b.keys):
            target = AugOrderedMap(
                _Backing(self.keys(), self._b.values[self._lo:self._hi], self._b.aug),
                0,
                len(self),
            )
        missing = []
        applied = 0
        b = target._b
        fast_idx: list[int] = []
        fast_val: list = []
        for k, v in batch:
            i = bisect_left(b.keys, k)
            if i < len(b.keys) and b.keys[i] == k:
                if b.fast:
                    fast_idx.append(i)
                    fast_val.append(v)
                else:
                    b.values[i] = v
                    b.recompute_leaf(i)
                applied += 1
            else:
                missing.append(k)
        if fast_idx:
            b.update_leaves_batch(np.asarray(fast_idx, dtype=np.int64), np.asarray(fast_val))
        return target, UpdateSummary(applied, tuple(missing))

    def multi_update_batch(self, idxs: np.ndarray, vals: np.ndarray):
        """In-place positional value update (numeric, unshared maps)."""
        if not self._b.fast:
            raise TypeError("batch updates require a numeric sum/min/max map")
        if self._b.shared or self._lo != 0 or self._hi != len(self._b.keys):
            raise TypeError("batch updates require an unsplit, unshared map")
        self._b.update_leaves_batch(np.asarray(idxs, dtype=np.int64), vals)

    def key_positions(self, keys: Sequence) -> np.ndarray:
        """Window positions of the given keys (numeric maps); -1 when absent."""
        if not self._b.fast:
            raise TypeError("requires a numeric map")
        win = self._b.np_keys[self._lo:self._hi]
        arr = np.asarray(keys)
        pos = np.searchsorted(win, arr)
        ok = (pos < len(win)) & (win[np.minimum(pos, max(len(win) - 1, 0))] == arr)
        return np.where(ok, pos, -1)


class PivotMultiMap:
    """Multiset of (pivot-id, object-id) pairs indexed by pivot.

    Duplicate pivots are expected; duplicate (pivot, object) pairs are
    rejected when built with strict=True (callers of the bulk path that
    guarantee uniqueness themselves can skip the bookkeeping).
    `multi_find` walks the queried pivots in sorted order and returns
    each one's live objects in insertion order, so the output is
    deterministic given the structure's state.
    """

    def __init__(self, strict: bool = True):
        self._buckets: dict[int, list[np.ndarray]] = {}
        self._pairs: set[int] | None = set() if strict else None
        self._size = 0

    @staticmethod
    def _pack(pivot: int, obj: int) -> int:
        return (pivot << 32) | obj

    def __len__(self) -> int:
        return self._size

    def multi_insert(self, pairs: Iterable[tuple[int, int]]):
        pairs = list(pairs)
        if pairs:
            self.multi_insert_arrays(
                np.array([p for p, _ in pairs], dtype=np.int64),
                np.array([o for _, o in pairs], dtype=np.int64),
            )

    def multi_insert_arrays(self, pivots: np.ndarray, objs: np.ndarray):
        """Bulk insert, grouped per pivot, preserving order within a pivot."""
        if self._pairs is not None:
            packed = (pivots.astype(np.int64) << 32) | objs.astype(np.int64)
            new = set(packed.tolist())
            if len(new) < len(packed) or new & self._pairs:
                raise DuplicateKeyError("duplicate (pivot, object) pair in insert")
            self._pairs |= new
        order = np.argsort(pivots, kind="stable")
        sp = pivots[order]
        so = objs[order].astype(np.int64)
        starts = np.flatnonzero(np.r_[True, sp[1:] != sp[:-1]])
        ends = np.r_[starts[1:], len(sp)]
        buckets = self._buckets
        for s, e in zip(starts.tolist(), ends.tolist()):
            buckets.setdefault(int(sp[s]), []).append(so[s:e])
        self._size += len(sp)

    def multi_delete(self, pairs: Iterable[tuple[int, int]]):
        """Remove pairs that are present; absent pairs are no-ops."""
        if self._pairs is None:
            raise DuplicateKeyError("deletion requires a strict multimap")
        for pivot, obj in pairs:
            packed = self._pack(pivot, obj)
            if packed not in self._pairs:
                continue
            self._pairs.discard(packed)
            self._size -= 1
            bucket = self._buckets.get(pivot, [])
            kept = [o for arr in bucket for o in arr.tolist() if o != obj]
            if kept:
                self._buckets[pivot] = [np.array(kept, dtype=np.int64)]
            else:
                self._buckets.pop(pivot, None)

    def multi_find(self, pivots: Iterable[int]) -> np.ndarray:
        chunks: list[np.ndarray] = []
        for pivot in sorted(set(int(p) for p in pivots)):
            bucket = self._buckets.get(pivot)
            if bucket:
                chunks.extend(bucket)
        if not chunks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(chunks)
