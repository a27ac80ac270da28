"""Compiled constructor for the dominance index's per-level arrays.

Produces exactly the structures the query paths expect: per-level
y-ordered point lists with cascaded left-child counts, live-bit words
with per-word counts, and every point's canonical pair decomposition
(ascending x within each point) plus the pairs' static lookup slots.
"""
from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64


@njit(cache=True, nogil=True)
def build_levels(n, p, logp, levels, wpl, block_levels, order_y_pos, yrank, keep_cascade):
    lvl_pts = np.empty(levels * p, dtype=np.int32)
    lvl_slot = np.empty(levels * p, dtype=np.int32)
    lcs_store = np.empty(levels * p if keep_cascade else 1, dtype=np.int32)
    words = np.zeros(levels * wpl, dtype=U64)
    bcnt = np.zeros(levels * wpl, dtype=np.int64)

    pts = np.empty(p, dtype=np.int32)
    nxt_pts = np.empty(p, dtype=np.int32)
    lcs = np.empty(p, dtype=np.int32)
    slot = np.empty(p, dtype=np.int32)

    # descent state of the per-point precompute (own position, node, y-cut)
    dq = np.empty(n, dtype=np.int64)
    didx = np.empty(n, dtype=np.int64)
    dk = np.empty(n, dtype=np.int64)
    live = 0
    for i in range(n):
        if i > 0 and yrank[i] > 0:
            dq[live] = i
            didx[live] = 0
            dk[live] = yrank[i]
            live += 1

    pair_cnt = np.zeros(n, dtype=np.int64)
    # capacity: at most two pair emissions per element per level
    cap = max(2 * live * levels, 1)
    eq = np.empty(cap, dtype=np.int64)
    ed = np.empty(cap, dtype=np.int8)
    ee = np.empty(cap, dtype=np.int64)
    ecount = 0

    for i in range(p):
        pts[i] = order_y_pos[i]

    for d in range(levels):
        shift = logp - d
        base = d * p
        for i in range(p):
            lvl_pts[base + i] = pts[i]
            slot[pts[i]] = i
        for i in range(p):
            lvl_slot[base + i] = slot[i]
        wbase = d * wpl
        for i in range(n):
            s = np.int64(slot[i])
            words[wbase + (s >> 6)] |= U64(1) << U64(s & 63)
            bcnt[wbase + (s >> 6)] += 1
        if shift > 0:
            width = np.int64(1) << shift
            acc = np.int32(0)
            for j in range(p):
                if j & (width - 1) == 0:
                    acc = 0
                if ((pts[j] >> (shift - 1)) & 1) == 0:
                    acc += 1
                lcs[j] = acc
            if keep_cascade:
                for j in range(p):
                    lcs_store[base + j] = lcs[j]
        elif keep_cascade:
            for j in range(p):
                lcs_store[base + j] = 0

        # one descent step for all live points
        w = 0
        for t in range(live):
            q = dq[t]
            idx = didx[t]
            k = dk[t]
            hi = (idx + 1) << shift
            if q >= hi:
                eq[ecount] = q
                ed[ecount] = d
                ee[ecount] = (idx << shift) + k
                ecount += 1
                pair_cnt[q] += 1
                continue
            if shift == 0:
                continue
            mid = (idx << shift) + (np.int64(1) << (shift - 1))
            lc = np.int64(lcs[(idx << shift) + k - 1])
            if q <= mid:
                if lc > 0:
                    dq[w] = q
                    didx[w] = 2 * idx
                    dk[w] = lc
                    w += 1
            else:
                if lc > 0:
                    eq[ecount] = q
                    ed[ecount] = d + 1
                    ee[ecount] = (idx << shift) + lc
                    ecount += 1
                    pair_cnt[q] += 1
                if k - lc > 0:
                    dq[w] = q
                    didx[w] = 2 * idx + 1
                    dk[w] = k - lc
                    w += 1
        live = w

        if shift > 0:
            width = np.int64(1) << shift
            for j in range(p):
                seg = j & ~(width - 1)
                lt = np.int64(lcs[seg + width - 1])
                if ((pts[j] >> (shift - 1)) & 1) == 0:
                    dest = seg + np.int64(lcs[j]) - 1
                else:
                    dest = seg + lt + (j - seg) - np.int64(lcs[j])
                nxt_pts[dest] = pts[j]
            tmp = pts
            pts = nxt_pts
            nxt_pts = tmp

    # group the emissions into per-point CSR, preserving emission order
    # (ascending x per point since levels were visited root-down)
    off = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        off[i + 1] = off[i] + pair_cnt[i]
    total = off[n]
    fill = off.copy()
    pair_level = np.empty(total, dtype=np.int8)
    pair_end = np.empty(total, dtype=np.int32)
    for e in range(ecount):
        q = eq[e]
        j = fill[q]
        pair_level[j] = ed[e]
        pair_end[j] = ee[e]
        fill[q] = j + 1

    # static lookup slots and partial-word masks per pair
    pair_wslot = np.empty(total, dtype=np.int32)
    pair_bslot = np.empty(total, dtype=np.int32)
    pair_mask = np.empty(total, dtype=U64)
    for j in range(total):
        lvl = np.int64(pair_level[j])
        end = np.int64(pair_end[j])
        shift = logp - lvl
        ns = (end - 1) >> shift << shift
        lb = (end - 1) >> 6
        low = ns - (lb << 6)
        if low < 0:
            low = 0
        high = end - (lb << 6)
        if high >= 64:
            mask = U64(0xFFFFFFFFFFFFFFFF)
        else:
            mask = (U64(1) << U64(high)) - U64(1)
        mask = mask & ~((U64(1) << U64(low)) - U64(1))
        pair_mask[j] = mask
        pair_wslot[j] = lvl * wpl + lb
        if lvl < block_levels and lb - 1 >= (ns >> 6):
            pair_bslot[j] = lvl * wpl + lb - 1
        else:
            pair_bslot[j] = -1

    return (
        lvl_pts,
        lvl_slot,
        lcs_store,
        words,
        bcnt,
        off,
        pair_level,
        pair_end,
        pair_wslot,
        pair_bslot,
        pair_mask,
    )
