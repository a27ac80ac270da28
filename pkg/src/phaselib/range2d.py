"""Static-point 2D dominance index with incremental value finalization.

For a fixed point set, a dominance query over the open lower-left
quadrant (x < qx and y < qy) reports the triple

    (number of unfinished points, max finalized value, witness index)

where the witness is sampled uniformly among the region's unfinished
points while any exist, and is the argmax point once none do.  Points
are finalized in batches between query phases; a value transitions
exactly once.

Layout: the x-order is padded to a power of two and cut dyadically; each
node stores its points in y-order, so a query decomposes into at most
one (node, y-cut) pair per level, visited in ascending x order.  The
algorithms driving this index query at the points' own coordinates, so
every point's decomposition is precomputed at build time; queries at
arbitrary coordinates descend the tree through cascaded left-child
counts instead.

Per canonical pair, the unfinished count reads one per-node block-prefix
entry (rebuilt lazily after a finalize batch: one popcount pass plus a
reshaped cumsum per level) and the popcount of one masked word of live
bits; the finalized max reads a per-node Fenwick prefix-max.  A round of
the bulk-synchronous callers therefore costs a handful of vector passes
regardless of how many rounds the run needs.

Witness sampling picks the t-th unfinished region point; a uniform t is
equivalent to descending the tree choosing children with probability
proportional to their unfinished counts.  In "hashed" mode t comes from
a counter hash of (seed, finalize epoch, query point), making runs
reproducible and thread-count independent; "random" mode swaps in a
seeded RNG so repeated identical queries resample (used by the
uniformity tests); "rightmost" picks t = count, i.e. the unfinished
region point with the largest x.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._build_kernel import build_levels
from ._rng import GOLDEN, mix64_np
from .errors import AlreadyFinalizedError, DuplicateKeyError, InvalidInputError

UNFINISHED = math.inf
EMPTY = -math.inf

_U64 = np.uint64
_ONE = _U64(1)
_FULL = _U64(0xFFFFFFFFFFFFFFFF)


@dataclass(frozen=True)
class Point2D:
    x: int
    y: int
    dp: float = UNFINISHED


@dataclass(frozen=True)
class LisAggregate:
    n_unfinished: int
    dp_max: float  # UNFINISHED while any point unfinished, EMPTY if region empty
    witness_x: int | None


def compress_values(values) -> np.ndarray:
    """Map values to distinct ints preserving strict order; on ties the
    earlier index gets the larger compressed value, so equal inputs stay
    mutually incompatible under strict dominance."""
    values = np.asarray(values)
    n = len(values)
    order = np.lexsort((-np.arange(n), values))
    out = np.empty(n, dtype=np.int64)
    out[order] = np.arange(n, dtype=np.int64)
    return out


def _exclusive_cumsum(v: np.ndarray) -> np.ndarray:
    out = np.empty(len(v) + 1, dtype=np.int64)
    out[0] = 0
    np.cumsum(v, out=out[1:])
    return out


class RangeIndex2D:
    def __init__(
        self,
        xs,
        ys,
        dp=None,
        seed: int = 0,
        witness_mode: str = "hashed",
        track_argmax: bool = True,
        keep_cascade: bool = True,
    ):
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        n = len(xs)
        if len(np.unique(xs)) != n:
            raise DuplicateKeyError("point x coordinates must be distinct")
        if len(np.unique(ys)) != n:
            raise InvalidInputError("point y coordinates must be distinct (compress first)")
        if witness_mode not in ("hashed", "random", "rightmost"):
            raise InvalidInputError(f"unknown witness mode {witness_mode!r}")
        self.n = n
        self.seed = seed
        self.witness_mode = witness_mode
        self.track_argmax = track_argmax
        self.epoch = 0
        self._rng = np.random.default_rng(seed) if witness_mode == "random" else None

        order_x = np.argsort(xs, kind="stable")
        self.xs_sorted = xs[order_x]
        self.pid_by_pos = order_x.astype(np.int64)
        self.pos_of_pid = np.empty(n, dtype=np.int64)
        self.pos_of_pid[order_x] = np.arange(n)
        self.x_of_pid = xs
        self.y_of_pid = ys

        self.dpv = np.zeros(n, dtype=np.int64)  # 0 = unfinished
        self.finished = np.zeros(n, dtype=bool)

        self.logp = max(n - 1, 0).bit_length()
        p = 1 << self.logp
        self.p = p
        self.levels = self.logp + 1
        self.wpl = max(p >> 6, 1)  # words per level
        # levels whose nodes are 64-aligned and span whole blocks
        self.block_levels = max(self.logp - 5, 0)

        # pad the x-order with points that never fall inside a query region
        y_by_pos = np.empty(p, dtype=np.int64)
        y_by_pos[:n] = ys[order_x]
        if p > n:
            y_by_pos[n:] = (ys.max() if n else 0) + 1 + np.arange(p - n)
        order_y_pos = np.argsort(y_by_pos, kind="stable")
        self.ys_sorted = y_by_pos[order_y_pos][:n]
        yrank_of_pos = np.empty(p, dtype=np.int64)
        yrank_of_pos[order_y_pos] = np.arange(p)

        (
            self.lvl_pts,
            self.lvl_slot,
            lcs_store,
            self.words,
            self.bcnt,
            self.pt_pair_off,
            self.pair_level,
            self.pair_end,
            self.pair_wslot,
            self.pair_bslot,
            self.pair_mask,
        ) = build_levels(
            n,
            p,
            self.logp,
            self.levels,
            self.wpl,
            self.block_levels,
            order_y_pos.astype(np.int64),
            yrank_of_pos,
            keep_cascade,
        )
        self.lvl_lcs = lcs_store if keep_cascade else None
        self.bpref = np.zeros(self.levels * self.wpl, dtype=np.int64)
        # per-node Fenwick prefix-max, value and argmax id split for locality;
        # comparisons order by (value, id), matching a packed (value<<32|id)
        self.fmax_dp = np.zeros(self.levels * p, dtype=np.int32)
        self.fmax_arg = np.zeros(self.levels * p, dtype=np.int32)
        self._dirty = True

        if dp is not None:
            dp = np.asarray(dp, dtype=np.float64)
            mask = dp != UNFINISHED
            if mask.any():
                self.finalize_batch(xs[mask], dp[mask].astype(np.int64))
                self.epoch = 0

    # -- snapshot of block prefixes ---------------------------------------------

    def _rebuild(self):
        W = self.wpl
        for d in range(self.block_levels):
            blocks = 1 << (self.logp - d - 6)  # blocks per node at this level
            np.cumsum(
                self.bcnt[d * W:(d + 1) * W].reshape(-1, blocks),
                axis=1,
                out=self.bpref[d * W:(d + 1) * W].reshape(-1, blocks),
            )
        self._dirty = False

    @classmethod
    def from_points(cls, points, seed: int = 0, **kw) -> "RangeIndex2D":
        return cls(
            [pt.x for pt in points],
            [pt.y for pt in points],
            dp=[pt.dp for pt in points],
            seed=seed,
            **kw,
        )

    # -- pair primitives ----------------------------------------------------------

    def _pairs_geometry(self, lvl, end):
        shift = self.logp - lvl
        node_start = (end - 1) >> shift << shift
        return node_start, end - node_start  # start, prefix length k >= 1

    def _pairs_counts_static(self, pidx) -> np.ndarray:
        """Unfinished count over each pair's node prefix (precomputed slots)."""
        out = np.bitwise_count(self.words[self.pair_wslot[pidx]] & self.pair_mask[pidx]).astype(np.int64)
        bslot = self.pair_bslot[pidx]
        has = bslot >= 0
        if has.any():
            out += np.where(has, self.bpref[np.maximum(bslot, 0)], 0)
        return out

    def _pairs_counts(self, lvl, end) -> np.ndarray:
        """Unfinished count over node prefixes given (level, end) directly."""
        lvl = np.asarray(lvl, dtype=np.int64)
        end = np.asarray(end, dtype=np.int64)
        node_start, _k = self._pairs_geometry(lvl, end)
        W = self.wpl
        last_block = (end - 1) >> 6
        lowbit = np.maximum(node_start - (last_block << 6), 0).astype(_U64)
        highbit = (end - (last_block << 6)).astype(_U64)  # 1..64
        mask = np.where(highbit >= 64, _FULL, (_ONE << highbit) - _ONE)
        mask &= ~((_ONE << lowbit) - _ONE)
        out = np.bitwise_count(self.words[lvl * W + last_block] & mask).astype(np.int64)
        prev = last_block - 1
        has_prev = (lvl < self.block_levels) & (prev >= (node_start >> 6))
        if has_prev.any():
            out += np.where(has_prev, self.bpref[lvl * W + np.maximum(prev, 0)], 0)
        return out

    def _pairs_max(self, lvl, end) -> np.ndarray:
        """Fenwick prefix-max of finalized values over node prefixes, packed
        as (value << 32) | argmax-id."""
        node_start, k = self._pairs_geometry(lvl, end)
        base = lvl * self.p + node_start
        i = k.copy()
        out = np.zeros(len(lvl), dtype=np.int64)
        while True:
            live = i > 0
            if not live.any():
                break
            flat = base[live] + i[live] - 1
            cand = (self.fmax_dp[flat].astype(np.int64) << 32) | self.fmax_arg[flat]
            out[live] = np.maximum(out[live], cand)
            i = np.where(live, i & (i - 1), i)
        return out

    # -- grouped query core ---------------------------------------------------------

    def _grouped_query(self, cnts, lvl, end, hx, hy, want_witness, need_max=True, pidx=None):
        """Aggregate contiguous per-query pair groups (ascending-x order).

        cnts[i] = number of pairs of query i; returns the five output
        arrays shared by both query entry points.
        """
        if self._dirty:
            self._rebuild()
        m = len(cnts)
        lvl = np.asarray(lvl, dtype=np.int64)
        end = np.asarray(end, dtype=np.int64)
        out_witness = np.full(m, -1, dtype=np.int64)
        none_pid = np.full(m, -1, dtype=np.int64)
        if not len(lvl):
            z = np.zeros(m, dtype=np.int64)
            return z, z.copy(), z.copy(), none_pid, out_witness

        pcnt = self._pairs_counts_static(pidx) if pidx is not None else self._pairs_counts(lvl, end)
        _ns, pk = self._pairs_geometry(lvl, end)

        bounds = _exclusive_cumsum(cnts)
        cs_cnt = np.cumsum(pcnt)
        cs_cnt0 = np.concatenate(([0], cs_cnt))
        out_unf = cs_cnt0[bounds[1:]] - cs_cnt0[bounds[:-1]]
        cs_k0 = _exclusive_cumsum(pk)
        out_npts = cs_k0[bounds[1:]] - cs_k0[bounds[:-1]]

        out_packed = np.zeros(m, dtype=np.int64)
        if need_max:
            nonempty = np.flatnonzero(cnts > 0)
            if len(nonempty):
                pm = self._pairs_max(lvl, end)
                out_packed[nonempty] = np.maximum.reduceat(pm, bounds[:-1][nonempty])
        dp_max_raw = out_packed >> 32
        if self.track_argmax:
            argmax_pid = np.where(out_packed > 0, out_packed & 0xFFFFFFFF, -1)
        else:
            argmax_pid = none_pid

        if want_witness and (out_unf > 0).any():
            self._sample_witnesses(
                hx, hy, bounds, lvl, end, pcnt, cs_cnt, out_unf, out_witness
            )
        return out_unf, out_npts, dp_max_raw, argmax_pid, out_witness

    def _hash_targets(self, qx: np.ndarray, qy: np.ndarray) -> np.ndarray:
        h = np.full(len(qx), self.seed & ((1 << 64) - 1), dtype=_U64)
        for w in (
            np.full(len(qx), self.epoch, dtype=_U64),
            qx.astype(np.int64).view(_U64),
            qy.astype(np.int64).view(_U64),
        ):
            h = mix64_np(h + _U64(GOLDEN) + w)
        return h

    def _sample_witnesses(self, hx, hy, bounds, lvl, end, pcnt, cs_cnt, totals, out_witness):
        m = len(totals)
        t = np.zeros(m, dtype=np.int64)
        pos = totals > 0
        if self.witness_mode == "rightmost":
            t[pos] = totals[pos]
        elif self.witness_mode == "random":
            t[pos] = self._rng.integers(1, totals[pos] + 1)
        else:
            h = self._hash_targets(np.asarray(hx, dtype=np.int64), np.asarray(hy, dtype=np.int64))
            t[pos] = 1 + (h[pos] % totals[pos].astype(_U64)).astype(np.int64)

        qrows = np.flatnonzero(pos)
        seg_base = np.concatenate(([0], cs_cnt))[bounds[:-1]][qrows]
        target = seg_base + t[qrows]
        chosen = np.searchsorted(cs_cnt, target, side="left")
        rem = target - (cs_cnt[chosen] - pcnt[chosen])
        clvl = lvl[chosen]
        cend = end[chosen]
        if self.witness_mode == "rightmost":
            # t = total lands in the last live pair; take its max-x point
            pos_leaf = self._rightmost_in_pairs(clvl, cend)
            out_witness[qrows] = self.pid_by_pos[pos_leaf]
            return
        W = self.wpl

        node_start, _k = self._pairs_geometry(clvl, cend)
        first_block = node_start >> 6
        last_block = (cend - 1) >> 6
        # bisect the first block whose within-node cumulative count reaches
        # rem; only levels with 64-aligned nodes have more than one block
        lo = first_block - 1
        hi = last_block.copy()
        while True:
            openb = hi - lo > 1
            if not openb.any():
                break
            mid = (lo + hi) >> 1
            c = np.where(openb, self.bpref[clvl * W + np.maximum(mid, 0)], 0)
            ge = openb & (c >= rem)
            hi = np.where(ge, mid, hi)
            lo = np.where(openb & ~ge, mid, lo)
        before = np.zeros(len(chosen), dtype=np.int64)
        has_prev = (clvl < self.block_levels) & (hi - 1 >= first_block)
        if has_prev.any():
            before = np.where(has_prev, self.bpref[clvl * W + np.maximum(hi - 1, 0)], 0)

        lowbit = np.maximum(node_start - (hi << 6), 0).astype(_U64)
        at_end = hi == last_block
        highbit = np.where(at_end, (cend - (hi << 6)).astype(_U64), _U64(64))
        mask = np.where(highbit >= 64, _FULL, (_ONE << highbit) - _ONE)
        mask &= ~((_ONE << lowbit) - _ONE)
        word = self.words[clvl * W + hi] & mask

        need = rem - before
        bit = np.zeros(len(chosen), dtype=np.int64)
        for half in (32, 16, 8, 4, 2, 1):
            lowmask = (_ONE << _U64(half)) - _ONE
            low = np.bitwise_count(word & lowmask).astype(np.int64)
            go_high = need > low
            word = np.where(go_high, word >> _U64(half), word & lowmask)
            bit += np.where(go_high, half, 0)
            need -= np.where(go_high, low, 0)
        slot = (hi << 6) + bit
        xpos = self.lvl_pts[clvl * self.p + slot]
        out_witness[qrows] = self.pid_by_pos[xpos]

    def _rightmost_in_pairs(self, clvl, cend):
        """Max x-position unfinished point within each pair's node prefix,
        by descending the cascade preferring live right children."""
        if self.lvl_lcs is None:
            raise InvalidInputError("rightmost witnesses need the query cascade")
        p = self.p
        lvl = clvl.astype(np.int64).copy()
        end = cend.astype(np.int64).copy()
        while True:
            shift = self.logp - lvl
            live = shift > 0
            if not live.any():
                break
            shift_l = np.maximum(shift, 1)
            node_start = (end - 1) >> shift_l << shift_l
            idx = node_start >> shift_l
            k = end - node_start
            lc = np.where(live, self.lvl_lcs[lvl * p + node_start + k - 1], 0)
            kr = k - lc
            right_end = (2 * idx + 1 << (shift_l - 1)) + kr
            cnt_r = np.zeros(len(lvl), dtype=np.int64)
            probe = live & (kr > 0)
            if probe.any():
                cnt_r[probe] = self._pairs_counts((lvl + 1)[probe], right_end[probe])
            go_right = live & (cnt_r > 0)
            go_left = live & ~go_right
            end = np.where(go_right, right_end, end)
            end = np.where(go_left, (2 * idx << (shift_l - 1)) + lc, end)
            lvl = np.where(live, lvl + 1, lvl)
        return end - 1  # leaf prefix of length 1 at its own position

    # -- public queries --------------------------------------------------------------

    def query_points_batch(self, pids, want_witness: bool = True, need_max: bool = True):
        """Dominance aggregates at the points' own coordinates, i.e. over the
        region strictly left of and below each queried point, served from
        the precomputed decompositions."""
        pids = np.asarray(pids, dtype=np.int64)
        qpos = self.pos_of_pid[pids]
        off0 = self.pt_pair_off[qpos]
        cnts = self.pt_pair_off[qpos + 1] - off0
        total = int(cnts.sum())
        pidx = np.repeat(off0 - _exclusive_cumsum(cnts)[:-1], cnts) + np.arange(total)
        return self._grouped_query(
            cnts,
            self.pair_level[pidx],
            self.pair_end[pidx],
            self.x_of_pid[pids],
            self.y_of_pid[pids],
            want_witness,
            need_max,
            pidx=pidx,
        )

    def query_points_max(self, pids):
        """Max finalized value over each point's own region only; returns
        (dp_max_raw, argmax_pid) without counts or witnesses."""
        pids = np.asarray(pids, dtype=np.int64)
        qpos = self.pos_of_pid[pids]
        off0 = self.pt_pair_off[qpos]
        cnts = self.pt_pair_off[qpos + 1] - off0
        total = int(cnts.sum())
        m = len(pids)
        out_packed = np.zeros(m, dtype=np.int64)
        if total:
            pidx = np.repeat(off0 - _exclusive_cumsum(cnts)[:-1], cnts) + np.arange(total)
            pm = self._pairs_max(
                self.pair_level[pidx].astype(np.int64), self.pair_end[pidx].astype(np.int64)
            )
            bounds = _exclusive_cumsum(cnts)
            nonempty = np.flatnonzero(cnts > 0)
            if len(nonempty):
                out_packed[nonempty] = np.maximum.reduceat(pm, bounds[:-1][nonempty])
        if self.track_argmax:
            return out_packed >> 32, np.where(out_packed > 0, out_packed & 0xFFFFFFFF, -1)
        return out_packed >> 32, np.full(m, -1, dtype=np.int64)

    def dominance_query_batch(self, qxs, qys, want_witness: bool = True):
        """Aggregates over {points : x < qx, y < qy} at arbitrary coordinates
        (descends the cascade; requires keep_cascade)."""
        if self.lvl_lcs is None:
            raise InvalidInputError("index was built without the query cascade")
        qxs = np.asarray(qxs, dtype=np.int64)
        qys = np.asarray(qys, dtype=np.int64)
        m = len(qxs)
        if self.n == 0 or m == 0:
            z = np.zeros(m, dtype=np.int64)
            return z, z.copy(), z.copy(), np.full(m, -1, np.int64), np.full(m, -1, np.int64)
        px = np.searchsorted(self.xs_sorted, qxs, side="left")
        k0 = np.searchsorted(self.ys_sorted, qys, side="left")

        blocks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        live = (px > 0) & (k0 > 0)
        cq = np.flatnonzero(live)
        cidx = np.zeros(len(cq), dtype=np.int64)
        cpx = px[live]
        ck = k0[live]
        p = self.p
        for d in range(self.levels):
            if not len(cq):
                break
            shift = self.logp - d
            hib = (cidx + 1) << shift
            full = cpx >= hib
            if full.any():
                blocks.append((cq[full], np.full(int(full.sum()), d, np.int64),
                               (cidx[full] << shift) + ck[full]))
            go = ~full
            cq, cidx, cpx, ck = cq[go], cidx[go], cpx[go], ck[go]
            if not len(cq) or shift == 0:
                break
            mid = (cidx << shift) + (1 << (shift - 1))
            lc = self.lvl_lcs[d * p + (cidx << shift) + ck - 1]
            go_left = cpx <= mid
            emit = ~go_left & (lc > 0)
            if emit.any():
                blocks.append((cq[emit], np.full(int(emit.sum()), d + 1, np.int64),
                               (cidx[emit] << shift) + lc[emit]))
            nidx = np.where(go_left, 2 * cidx, 2 * cidx + 1)
            nk = np.where(go_left, lc, ck - lc)
            keep = nk > 0
            cq, cidx, cpx, ck = cq[keep], nidx[keep], cpx[keep], nk[keep]

        if blocks:
            eq = np.concatenate([b[0] for b in blocks])
            ed = np.concatenate([b[1] for b in blocks])
            ee = np.concatenate([b[2] for b in blocks])
            order = np.argsort(eq, kind="stable")
            eq, ed, ee = eq[order], ed[order], ee[order]
        else:
            eq = np.zeros(0, dtype=np.int64)
            ed = eq.copy()
            ee = eq.copy()
        cnts = np.bincount(eq, minlength=m)[:m] if len(eq) else np.zeros(m, np.int64)
        return self._grouped_query(cnts, ed, ee, qxs, qys, want_witness)

    def dominance_query(self, qx: int, qy: int) -> LisAggregate:
        """Aggregate over the strict lower-left open quadrant of (qx, qy)."""
        unf, npts, dpmax, argmax_pid, wit = self.dominance_query_batch(
            np.array([qx]), np.array([qy])
        )
        if unf[0] > 0:
            return LisAggregate(int(unf[0]), UNFINISHED, int(self.x_of_pid[wit[0]]))
        if npts[0] == 0:
            return LisAggregate(0, EMPTY, None)
        return LisAggregate(0, float(dpmax[0]), int(self.x_of_pid[argmax_pid[0]]))

    # -- updates ------------------------------------------------------------------

    def finalize_batch(self, xs, dps):
        """Set dp for currently-unfinished points; a point transitions once.

        An empty batch is a pure no-op (aggregates and epoch unchanged).
        """
        xs = np.asarray(xs, dtype=np.int64)
        dps = np.asarray(dps, dtype=np.int64)
        if not len(xs):
            return
        pos = np.searchsorted(self.xs_sorted, xs)
        bad = (pos >= self.n) | (self.xs_sorted[np.minimum(pos, max(self.n - 1, 0))] != xs)
        if bad.any():
            raise InvalidInputError(f"unknown point x={int(xs[bad.argmax()])}")
        if len(np.unique(pos)) != len(pos):
            raise DuplicateKeyError("duplicate x in finalize batch")
        pids = self.pid_by_pos[pos]
        if self.finished[pids].any():
            raise AlreadyFinalizedError("point already finalized")
        if (dps <= 0).any():
            raise InvalidInputError("dp values must be positive integers")
        if (dps >= (1 << 31)).any():
            raise InvalidInputError("finalized values must fit 32 bits")
        self.finished[pids] = True
        self.dpv[pids] = dps

        L, p, W = self.levels, self.p, self.wpl
        b = len(pos)
        lvls = np.repeat(np.arange(L, dtype=np.int64), b)
        slots = self.lvl_slot[(np.arange(L, dtype=np.int64)[:, None] * p + pos[None, :]).reshape(-1)].astype(np.int64)
        wslots = lvls * W + (slots >> 6)
        np.bitwise_and.at(self.words, wslots, ~(_ONE << slots.astype(_U64) % _U64(64)))
        np.add.at(self.bcnt, wslots, -1)
        vdp = np.tile(dps, L)
        varg = np.tile(pids if self.track_argmax else np.zeros(b, dtype=np.int64), L)
        packed = (vdp << 32) | varg
        shift = self.logp - lvls
        width = np.int64(1) << shift
        node_start = slots >> shift << shift
        base = lvls * p + node_start
        i = slots - node_start + 1
        while True:
            live = i <= width
            if not live.any():
                break
            idx = base[live] + i[live] - 1
            # update paths of different points can meet in one wave, so
            # resolve duplicate cells before scattering
            cells, inv = np.unique(idx, return_inverse=True)
            best = np.zeros(len(cells), dtype=np.int64)
            np.maximum.at(best, inv, packed[live])
            cur = (self.fmax_dp[cells].astype(np.int64) << 32) | self.fmax_arg[cells]
            win = np.maximum(cur, best)
            self.fmax_dp[cells] = (win >> 32).astype(np.int32)
            self.fmax_arg[cells] = (win & 0xFFFFFFFF).astype(np.int32)
            i = np.where(live, i + (i & -i), i)
        self._dirty = True
        self.epoch += 1

    def finalize(self, updates):
        """Finalize a list of (x, dp) pairs."""
        if not updates:
            return
        xs = np.array([x for x, _ in updates], dtype=np.int64)
        dps = np.array([v for _, v in updates], dtype=np.int64)
        self.finalize_batch(xs, dps)

    def aggregate_state(self) -> list[np.ndarray]:
        """Copies of all internal aggregate arrays (for no-op assertions)."""
        if self._dirty:
            self._rebuild()
        return [self.words.copy(), self.bpref.copy(), self.fmax_dp.copy(), self.fmax_arg.copy()]
