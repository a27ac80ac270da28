"""Longest increasing subsequence: sequential oracle, pivot-wake-up
round-parallel algorithm over the 2D dominance index, the hammer-game
reduction, and the standalone pivot-chain process.

The parallel algorithm assigns every element the virtual origin as its
initial pivot.  Each round wakes the elements whose pivot finalized last
round and runs one dominance query per element over its strict
lower-left region: if no unfinished element remains there, the element
is ready and its value is one plus the region's max; otherwise the
query's randomized witness becomes the new pivot.  Ready elements are
finalized together at the round barrier, so all queries within a round
see one snapshot, and an element of rank r is finalized exactly in
round r.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from ._rng import CounterRng
from .aug_map import PivotMultiMap
from .errors import InvalidInputError
from .phase_core import PhaseProblem, PhaseTrace, run_phases
from .range2d import RangeIndex2D, compress_values


@dataclass
class LisResult:
    dp: list[int]
    lis_length: int
    rounds_used: int
    wakeup_attempts: list[int] = field(default_factory=list)
    sequence: list[int] = field(default_factory=list)  # indices of one optimal LIS
    pivot_log: list[tuple[int, int]] = field(default_factory=list)

    @property
    def mean_attempts(self) -> float:
        return float(np.mean(self.wakeup_attempts)) if self.wakeup_attempts else 0.0

    @property
    def max_attempts(self) -> int:
        return int(max(self.wakeup_attempts)) if self.wakeup_attempts else 0


def seq_lis(a) -> LisResult:
    """Patience-style O(n log n) pass; dp[i] = strict LIS length ending at i."""
    tails: list = []
    dp = []
    for v in a:
        pos = bisect_left(tails, v)
        if pos == len(tails):
            tails.append(v)
        else:
            tails[pos] = v
        dp.append(pos + 1)
    best = max(dp, default=0)
    return LisResult(dp, best, best)


@dataclass
class _ParLisState:
    index: RangeIndex2D
    pivots: PivotMultiMap
    ys: np.ndarray
    weights: np.ndarray | None
    dp: np.ndarray
    pred: np.ndarray
    attempts: np.ndarray
    finished: np.ndarray
    frontier: list[int]
    pivot_log: list[tuple[int, int]]
    record_pivots: bool
    ready_ids: np.ndarray | None = None
    round_wakeups: int = 0


def _wake_frontier(_round_index: int, st: _ParLisState) -> list[int]:
    todo = np.asarray(st.pivots.multi_find(st.frontier), dtype=np.int64)
    if len(todo):
        todo = todo[~st.finished[todo]]  # wake-ups on finished objects are no-ops
    st.round_wakeups = int(len(todo))
    if not len(todo):
        st.ready_ids = np.zeros(0, dtype=np.int64)
        return []
    st.attempts[todo - 1] += 1
    # first pass: readiness + replacement pivots; the max is only needed for
    # the ready subset, fetched in a second pass over the same snapshot
    unf, _npts, _dpmax, _amax, wit = st.index.query_points_batch(
        todo - 1, want_witness=True, need_max=False
    )
    ready = unf == 0
    ready_ids = todo[ready]
    if len(ready_ids):
        dpmax, argmax_pid = st.index.query_points_max(ready_ids - 1)
        if st.weights is not None:
            # finalized values are stored shifted by +1 so a zero-weight
            # chain stays distinguishable from "nothing finalized"
            st.dp[ready_ids - 1] = np.maximum(dpmax - 1, 0) + st.weights[ready_ids - 1]
        else:
            st.dp[ready_ids - 1] = dpmax + 1
            st.pred[ready_ids - 1] = np.where(argmax_pid >= 0, argmax_pid + 1, 0)
    failed_ids = todo[~ready]
    if len(failed_ids):
        new_pivots = wit[~ready] + 1  # witness pid -> 1-based element index
        st.pivots.multi_insert_arrays(new_pivots, failed_ids)
        if st.record_pivots:
            st.pivot_log.extend(zip(new_pivots.tolist(), failed_ids.tolist()))
    st.ready_ids = ready_ids
    return np.sort(ready_ids).tolist()  # canonical round order


def _finalize_frontier(frontier, st: _ParLisState) -> dict[str, int]:
    ready_ids = st.ready_ids
    stored = st.dp[ready_ids - 1] if st.weights is None else st.dp[ready_ids - 1] + 1
    st.index.finalize_batch(ready_ids, stored)
    st.finished[ready_ids] = True
    st.frontier = list(frontier)
    return {"wakeups": st.round_wakeups}


def par_lis(
    a,
    seed: int = 0,
    pivot_mode: str = "random",
    weights=None,
    record_pivots: bool = False,
    engine: str = "kernel",
) -> tuple[LisResult, PhaseTrace]:
    """Round-parallel LIS via pivot wake-ups; uniform random witnesses by
    default, the rightmost-point heuristic behind pivot_mode="rightmost".

    With `weights` (non-negative ints) computes the best total weight of a
    strictly increasing subsequence ending at each element; rounds still
    follow the unweighted rank.

    engine="kernel" runs the compiled fused loop; engine="rounds" drives
    the index through the generic phase loop.  Both produce identical
    results and traces (tested); the kernel exists because adversarial
    ranks force thousands of tiny rounds.
    """
    n = len(a)
    if n == 0:
        return LisResult([], 0, 0, []), PhaseTrace()
    if pivot_mode not in ("random", "rightmost"):
        raise InvalidInputError(f"unknown pivot mode {pivot_mode!r}")
    if engine not in ("kernel", "rounds"):
        raise InvalidInputError(f"unknown engine {engine!r}")
    weighted = weights is not None
    if weighted:
        weights = np.asarray(weights, dtype=np.int64)
        if (weights < 0).any():
            raise InvalidInputError("weights must be non-negative")

    ys = compress_values(a)
    xs = np.arange(1, n + 1, dtype=np.int64)  # 1-based; 0 is the virtual origin
    index = RangeIndex2D(
        xs,
        ys,
        seed=seed,
        witness_mode="rightmost" if pivot_mode == "rightmost" else "hashed",
        track_argmax=not weighted,
        # big runs skip the arbitrary-query cascade unless the rightmost
        # heuristic needs it for its in-node descent
        keep_cascade=n <= (1 << 17) or pivot_mode == "rightmost",
    )
    if engine == "kernel":
        return _par_lis_kernel(a, n, index, ys, weights, pivot_mode, seed, record_pivots)

    # uniqueness holds by construction (one live pair per element), so the
    # engine skips the multimap's pair-set bookkeeping
    pivots = PivotMultiMap(strict=False)
    pivots.multi_insert_arrays(np.zeros(n, dtype=np.int64), xs)

    st = _ParLisState(
        index=index,
        pivots=pivots,
        ys=ys,
        weights=weights if weighted else None,
        dp=np.zeros(n, dtype=np.int64),
        pred=np.zeros(n, dtype=np.int64),
        attempts=np.zeros(n, dtype=np.int64),
        finished=np.zeros(n + 1, dtype=bool),
        frontier=[0],
        pivot_log=[],
        record_pivots=record_pivots,
    )
    problem = PhaseProblem(n, _wake_frontier, _finalize_frontier, st, "lis")
    _, trace = run_phases(problem)

    result = LisResult(
        st.dp.tolist(),
        int(st.dp.max()),
        trace.rounds_used,
        st.attempts.tolist(),
        pivot_log=st.pivot_log,
    )
    if not weighted:
        result.sequence = reconstruct_lis(st.dp, st.pred)
    return result, trace


def _par_lis_kernel(a, n, index, ys, weights, pivot_mode, seed, record_pivots):
    from ._lis_kernel import POP_TABLE, run_lis_rounds

    weighted = weights is not None
    dp = np.zeros(n, dtype=np.int64)
    pred = np.zeros(n, dtype=np.int64)
    attempts = np.zeros(n, dtype=np.int64)
    round_of = np.zeros(n, dtype=np.int64)
    round_sizes = np.zeros(n + 2, dtype=np.int64)
    round_wakeups = np.zeros(n + 2, dtype=np.int64)
    log_cap = 4 * n + 64 if record_pivots else 1
    log_piv = np.empty(log_cap, dtype=np.int64)
    log_obj = np.empty(log_cap, dtype=np.int64)
    while True:
        if index._dirty:
            index._rebuild()  # the kernel expects current block prefixes
        rounds, log_len, overflow = run_lis_rounds(
            n,
            index.logp,
            index.levels,
            index.wpl,
            index.block_levels,
            index.p,
            index.pt_pair_off,
            index.pair_level,
            index.pair_end,
            index.pair_wslot,
            index.pair_bslot,
            index.pair_mask,
            index.words,
            index.bcnt,
            index.bpref,
            index.fmax_dp,
            index.fmax_arg,
            index.lvl_pts,
            index.lvl_slot,
            index.lvl_lcs if index.lvl_lcs is not None else np.zeros(1, dtype=np.int32),
            POP_TABLE,
            ys,
            weights if weighted else np.zeros(1, dtype=np.int64),
            weighted,
            index.track_argmax,
            pivot_mode == "rightmost",
            seed & ((1 << 64) - 1),
            dp,
            pred,
            attempts,
            round_of,
            round_sizes,
            round_wakeups,
            log_piv,
            log_obj,
            record_pivots,
        )
        if not overflow:
            break
        # rare: regrow the pivot log and rerun (the kernel is deterministic)
        log_cap *= 4
        log_piv = np.empty(log_cap, dtype=np.int64)
        log_obj = np.empty(log_cap, dtype=np.int64)
        index = RangeIndex2D(
            np.arange(1, n + 1, dtype=np.int64),
            ys,
            seed=seed,
            witness_mode=index.witness_mode,
            track_argmax=index.track_argmax,
            keep_cascade=False,
        )
        dp[:] = 0
        pred[:] = 0
        attempts[:] = 0
        round_of[:] = 0

    index.finished[:] = True
    index.dpv[:] = dp if not weighted else dp + 1
    index.epoch = int(rounds)
    index._dirty = False

    trace = PhaseTrace()
    order = np.argsort(round_of, kind="stable")  # ids ascending within rounds
    pos = 0
    for r in range(1, int(rounds) + 1):
        size = int(round_sizes[r])
        frontier = (order[pos:pos + size] + 1).tolist()
        trace.add_round(frontier, {"wakeups": int(round_wakeups[r])})
        pos += size
    result = LisResult(
        dp.tolist(),
        int(dp.max()),
        trace.rounds_used,
        attempts.tolist(),
        pivot_log=list(zip(log_piv[:log_len].tolist(), log_obj[:log_len].tolist())),
    )
    if not weighted:
        result.sequence = reconstruct_lis(dp, pred)
    return result, trace


def reconstruct_lis(dp, pred) -> list[int]:
    """Walk stored argmax witnesses backward from a global maximum; returns
    0-based indices of one optimal strictly increasing subsequence."""
    dp = np.asarray(dp)
    if not len(dp):
        return []
    cur = int(dp.argmax()) + 1
    out = []
    while cur != 0:
        out.append(cur - 1)
        cur = int(pred[cur - 1])
    return out[::-1]


def is_valid_lis(a, indices, expect_len: int) -> bool:
    if len(indices) != expect_len:
        return False
    return all(i < j and a[i] < a[j] for i, j in zip(indices, indices[1:]))


# -- hammer game reduction ----------------------------------------------------


@dataclass(frozen=True)
class Mole:
    t: int
    p: int


def seq_moles(moles) -> list[int]:
    """Quadratic reference: best chain ending at each mole under
    |p_j - p_i| <= |t_j - t_i|, moles sorted by time."""
    n = len(moles)
    dp = [1] * n
    for i in range(n):
        for j in range(i):
            if abs(moles[j].p - moles[i].p) <= abs(moles[j].t - moles[i].t):
                dp[i] = max(dp[i], dp[j] + 1)
    return dp


def max_moles(moles, seed: int = 0) -> tuple[int, LisResult, PhaseTrace]:
    """Max moles hittable by a speed-1 hammer, via the pivot-wake-up engine.

    Rotating (t, p) to (t+p, t-p) turns reachability into coordinatewise
    dominance; the condition is non-strict, so ties are compressed with
    the earlier mole below the later one, making <= coincide with < on
    the compressed axes.  Summing the rotated coordinates shows dominance
    already implies time order.
    """
    n = len(moles)
    if n == 0:
        return 0, LisResult([], 0, 0, []), PhaseTrace()
    ts = np.asarray([m.t for m in moles], dtype=np.int64)
    ps = np.asarray([m.p for m in moles], dtype=np.int64)
    if n > 1 and (np.diff(ts) < 0).any():
        raise InvalidInputError("moles must be sorted by time")
    u = ts + ps
    v = ts - ps
    cu = np.empty(n, dtype=np.int64)
    cu[np.lexsort((np.arange(n), u))] = np.arange(n)
    cv = np.empty(n, dtype=np.int64)
    cv[np.lexsort((np.arange(n), v))] = np.arange(n)
    scan = np.lexsort((cv, cu))
    res, trace = par_lis(cv[scan].tolist(), seed=seed)
    dp_in_input = [0] * n
    for pos, mole_idx in enumerate(scan.tolist()):
        dp_in_input[mole_idx] = res.dp[pos]
    res.dp = dp_in_input
    res.sequence = []
    return res.lis_length, res, trace


# -- pivot-chain process -------------------------------------------------------


def simulate_pivot_chains(n: int, trials: int, seed: int = 0) -> float:
    """Mean length of the chain x_0 = 1, x_{i+1} uniform on [x_i, n], run
    until the chain first hits n; this process upper-bounds the number of
    wake-up attempts of one element."""
    rng = CounterRng(seed, stream=n)
    total = 0
    draw = 0
    for _ in range(trials):
        x = 1
        k = 0
        while x != n:
            x = x + rng.int_below(draw, n - x + 1)
            draw += 1
            k += 1
        total += k
    return total / trials


def harmonic_chain_prediction(n: int) -> float:
    """Exact expected chain length: 1 + H_{n-1} (0 when n = 1)."""
    if n <= 1:
        return 0.0
    return 1.0 + float(np.sum(1.0 / np.arange(1, n, dtype=np.float64)))
