"""Weighted activity selection: sequential DP oracle, range-split rounds
(Type 1), pivot wake-up rounds (Type 2), and the unweighted pivot-forest
rank computation.

Activities are processed in end-time order.  An activity is compatible
with an earlier one exactly when the earlier one ends no later than this
one starts (touching endpoints are compatible), so round r of either
parallel variant processes precisely the activities of dependence depth
r, and both produce the same values as the sequential recurrence.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .aug_map import MAX_VALUES, NEG_INF, AugOrderedMap, PivotMultiMap
from .errors import InvalidInputError
from .gen import Activity
from .phase_core import PhaseProblem, PhaseTrace, run_phases


@dataclass
class ActivityResult:
    dp: list          # best total weight of a compatible set ending at i
    rank: list[int]   # dependence depth of activity i
    best: float
    rounds_used: int
    pivot: list[int] | None = None  # type 2: input index of the pivot, -1 if none


def _prepare(acts) -> tuple[list[Activity], np.ndarray]:
    """Sort by (end, input position); also return input->sorted positions."""
    acts = [a if isinstance(a, Activity) else Activity(*a) for a in acts]
    for a in acts:
        if not a.end > a.start:
            raise InvalidInputError(f"activity {a} must end after it starts")
        if a.weight < 0:
            raise InvalidInputError("weights must be non-negative")
    order = sorted(range(len(acts)), key=lambda i: (acts[i].end, i))
    inv = np.argsort(np.asarray(order, dtype=np.int64))
    return [acts[i] for i in order], inv


def _unsort(values, inv: np.ndarray) -> list:
    return [values[inv[j]] for j in range(len(values))]


class _DpStore:
    """Max-value-of-compatible-predecessors store keyed by end time.

    All activities are present from the start with a sentinel excluded
    from the range max (an all-sentinel range reports "no predecessor").
    Distinct numeric end keys get the vectorized map; ties fall back to
    (end, index) tuple keys.
    """

    def __init__(self, sacts, threads: int = 1):
        self.n = len(sacts)
        self.threads = threads
        ends = np.array([a.end for a in sacts])
        self.fast = len(np.unique(ends)) == self.n
        if self.fast:
            order = np.argsort(ends, kind="stable")
            self.map = AugOrderedMap.build(
                [(float(ends[i]), NEG_INF) for i in order], MAX_VALUES
            )
            self.ends = ends.astype(np.float64)
        else:
            self.map = AugOrderedMap.build(
                [((a.end, i), NEG_INF) for i, a in enumerate(sacts)], MAX_VALUES
            )
            self.keys = [(a.end, i) for i, a in enumerate(sacts)]

    def best_before(self, sacts, ids) -> np.ndarray:
        """Max stored value among activities ending at or before each start."""
        if self.fast:
            starts = np.array([sacts[i].start for i in ids], dtype=np.float64)
            return np.maximum(
                self.map.range_sum_batch(starts, threads=self.threads), 0
            )
        out = np.empty(len(ids))
        for j, i in enumerate(ids):
            got = self.map.range_sum(None, (sacts[i].start, self.n))
            out[j] = got if got != NEG_INF else 0
        return out

    def publish(self, ids, values):
        if self.fast:
            pos = self.map.key_positions(self.ends[np.asarray(ids, dtype=np.int64)])
            self.map.multi_update_batch(pos, np.asarray(values, dtype=np.float64))
        else:
            self.map, _ = self.map.multi_update(
                [(self.keys[i], float(v)) for i, v in zip(ids, values)]
            )


def seq_activity_dp(acts) -> ActivityResult:
    """Exact optimum by the end-ordered recurrence, one activity at a time;
    the predecessor max comes from the ordered-map range query."""
    sacts, inv = _prepare(acts)
    n = len(sacts)
    store = _DpStore(sacts)
    rank_store = _DpStore(sacts)
    dp = [0.0] * n
    rank = [0] * n
    for i, a in enumerate(sacts):
        dp[i] = a.weight + float(store.best_before(sacts, [i])[0])
        rank[i] = 1 + int(rank_store.best_before(sacts, [i])[0])
        store.publish([i], [dp[i]])
        rank_store.publish([i], [rank[i]])
    return ActivityResult(
        _unsort(dp, inv), _unsort(rank, inv), max(dp, default=0), max(rank, default=0)
    )


def _run_rounds(sacts, inv, frontier_fn, state, tag, store, threads):
    n = len(sacts)
    dp = np.zeros(n)

    def process(fr, st):
        ids = np.asarray(fr, dtype=np.int64)
        weights = np.array([sacts[i].weight for i in ids])
        vals = weights + store.best_before(sacts, ids)
        dp[ids] = vals
        store.publish(ids, vals)
        st["after_publish"](fr)
        return {"processed": len(fr), "dp_updates": len(fr)}

    problem = PhaseProblem(n, frontier_fn, process, state, tag)
    _, trace = run_phases(problem)
    rank = [0] * n
    for rec in trace.rounds:
        for i in rec.frontier:
            rank[i] = rec.index
    dp_list = dp.tolist()
    result = ActivityResult(
        _unsort(dp_list, inv),
        _unsort(rank, inv),
        max(dp_list, default=0),
        trace.rounds_used,
    )
    return result, trace


def type1_activity(acts, threads: int = 1) -> tuple[ActivityResult, PhaseTrace]:
    """Range-split rounds: each round takes every unprocessed activity
    starting strictly before the earliest unprocessed end time (an
    activity starting exactly then is compatible and waits)."""
    sacts, inv = _prepare(acts)
    n = len(sacts)
    if n == 0:
        return ActivityResult([], [], 0, 0), PhaseTrace()
    starts = np.array([a.start for a in sacts])
    ends = np.array([a.end for a in sacts])
    start_order = np.lexsort((np.arange(n), starts)).astype(np.int64)
    starts_in_order = starts[start_order]
    # unprocessed activities always form a suffix in start order, so the
    # earliest unprocessed end is a precomputed suffix minimum
    suffix_min_end = np.minimum.accumulate(ends[start_order][::-1])[::-1].copy()
    state = {"ptr": 0, "after_publish": lambda fr: None}

    def frontier(_r, st):
        ptr = st["ptr"]
        if ptr >= n:
            return []
        e_min = suffix_min_end[ptr]
        hi = int(np.searchsorted(starts_in_order, e_min, side="left"))
        st["ptr"] = hi
        return np.sort(start_order[ptr:hi]).tolist()

    store = _DpStore(sacts, threads=threads)
    return _run_rounds(sacts, inv, frontier, state, "activity-type1", store, threads)


def find_pivots(sacts) -> list[int]:
    """For each activity the compatible predecessor with the latest start
    (ties by index), -1 if none: binary search on end-ordered prefixes
    plus a running prefix argmax of starts."""
    n = len(sacts)
    ends = [a.end for a in sacts]
    prefix_arg: list[int] = [-1] * (n + 1)
    arg = -1
    for i, a in enumerate(sacts):
        if arg < 0 or (a.start, i) > (sacts[arg].start, arg):
            arg = i
        prefix_arg[i + 1] = arg
    pivots = [-1] * n
    for i, a in enumerate(sacts):
        k = bisect_right(ends, a.start)
        if k > 0:
            pivots[i] = prefix_arg[k]
    return pivots


def type2_activity(acts, threads: int = 1) -> tuple[ActivityResult, PhaseTrace]:
    """Pivot wake-up rounds: every activity waits on its latest-starting
    compatible predecessor and runs exactly one round after it."""
    sacts, inv = _prepare(acts)
    n = len(sacts)
    if n == 0:
        return ActivityResult([], [], 0, 0, pivot=[]), PhaseTrace()
    pivots = find_pivots(sacts)
    pm = PivotMultiMap()
    pm.multi_insert((p, i) for i, p in enumerate(pivots) if p >= 0)
    roots = sorted(i for i, p in enumerate(pivots) if p < 0)

    state: dict = {"next": roots}

    def frontier(_r, st):
        out = st["next"]
        st["next"] = []
        return out

    def after_publish(fr):
        state["next"] = sorted(int(x) for x in pm.multi_find(fr))

    state["after_publish"] = after_publish
    store = _DpStore(sacts, threads=threads)
    result, trace = _run_rounds(sacts, inv, frontier, state, "activity-type2", store, threads)
    order = np.argsort(inv)  # sorted position -> input index
    result.pivot = [
        -1 if pivots[inv[j]] < 0 else int(order[pivots[inv[j]]]) for j in range(n)
    ]
    return result, trace


def unweighted_activity_rank(acts) -> list[int]:
    """Depth of each activity in the pivot forest by level propagation:
    roots first, then their children, and so on."""
    sacts, inv = _prepare(acts)
    n = len(sacts)
    pivots = find_pivots(sacts)
    children: list[list[int]] = [[] for _ in range(n)]
    level = []
    for i, piv in enumerate(pivots):
        if piv < 0:
            level.append(i)
        else:
            children[piv].append(i)
    rank = [0] * n
    depth = 1
    while level:
        nxt: list[int] = []
        for i in level:
            rank[i] = depth
            nxt.extend(children[i])
        level = nxt
        depth += 1
    return _unsort(rank, inv)
