"""Single-source shortest paths: binary-heap reference and the windowed
round variant that settles every tentative distance within the minimum
edge weight of the current minimum.

A relaxation increases a distance by at least the minimum edge weight
w*, so no vertex with tentative distance below d_min + w* can improve:
the whole window settles at once, each vertex relaxes its out-edges
exactly once, and the number of rounds is bounded by ceil(max distance /
w*) + 1.  Integer inputs stay in exact integer arithmetic; float inputs
follow plain float64 semantics with no tolerance.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .aug_map import MIN_VALUES, AugOrderedMap
from .errors import InvalidInputError
from .phase_core import PhaseProblem, PhaseTrace, run_phases

INF = float("inf")


@dataclass
class WeightedGraph:
    n: int
    offsets: np.ndarray  # int64, length n+1
    targets: np.ndarray  # int64
    weights: np.ndarray  # int64 or float64, all positive

    @property
    def m(self) -> int:
        return len(self.targets)

    @property
    def w_star(self):
        return self.weights.min() if len(self.weights) else None

    @property
    def w_max(self):
        return self.weights.max() if len(self.weights) else None

    @classmethod
    def from_edges(cls, n: int, edges) -> "WeightedGraph":
        """edges: iterable of (u, v, w) directed triples."""
        edges = list(edges)
        us = np.array([e[0] for e in edges], dtype=np.int64)
        vs = np.array([e[1] for e in edges], dtype=np.int64)
        ws = [e[2] for e in edges]
        integral = all(isinstance(w, (int, np.integer)) or float(w).is_integer() for w in ws)
        warr = np.array(ws, dtype=np.int64 if integral else np.float64)
        if len(warr) and warr.min() <= 0:
            raise InvalidInputError("edge weights must be positive")
        if len(us) and (us.min() < 0 or us.max() >= n or vs.min() < 0 or vs.max() >= n):
            raise InvalidInputError("edge endpoint out of range")
        order = np.argsort(us, kind="stable")
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.add.at(offsets, us + 1, 1)
        np.cumsum(offsets, out=offsets)
        return cls(n, offsets, vs[order], warr[order])

    def out_edges(self, u: int):
        lo, hi = self.offsets[u], self.offsets[u + 1]
        return zip(self.targets[lo:hi].tolist(), self.weights[lo:hi].tolist())


@dataclass
class SsspResult:
    dist: list
    rounds_used: int
    relaxation_count: int


def seq_dijkstra(g: WeightedGraph, src: int) -> SsspResult:
    dist = [INF] * g.n
    dist[src] = 0
    heap = [(0, src)]
    done = [False] * g.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.out_edges(u):
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return SsspResult(dist, 0, 0)


def bellman_ford(g: WeightedGraph, src: int) -> list:
    dist = [INF] * g.n
    dist[src] = 0
    for _ in range(g.n):
        changed = False
        for u in range(g.n):
            if dist[u] == INF:
                continue
            for v, w in g.out_edges(u):
                if dist[u] + w < dist[v]:
                    dist[v] = dist[u] + w
                    changed = True
        if not changed:
            break
    return dist


def windowed_sssp(g: WeightedGraph, src: int) -> tuple[SsspResult, PhaseTrace]:
    """Settle all unsettled vertices with tentative distance strictly below
    d_min + w*; relax their out-edges once; repeat.

    Tentative distances live in an ordered map keyed (distance, vertex);
    an improvement is a delete + reinsert inside the round's batch.
    """
    if len(g.weights) and g.weights.min() <= 0:
        raise InvalidInputError("edge weights must be positive")
    w_star = g.w_star
    integral = g.weights.dtype.kind == "i" if len(g.weights) else True
    zero = 0 if integral else 0.0
    dist = [INF] * g.n
    dist[src] = zero
    settled = [False] * g.n

    tent = AugOrderedMap.build([((zero, src), src)], MIN_VALUES)
    relaxations = 0
    # the loop runs manually: the object count (reachable vertices) is only
    # discovered as the frontier expands
    trace = PhaseTrace()
    while len(tent):
        d_min = tent.min_key()[0]
        if w_star is not None:
            window, tent = tent.split_at((d_min + w_star, -1))
        else:
            window, tent = tent, AugOrderedMap.empty(MIN_VALUES)
        entries = window.flatten()
        for (_d, v), _ in entries:
            settled[v] = True
        batch_updates: dict[int, object] = {}
        relaxed = 0
        for (d, v), _ in entries:
            for t, w in g.out_edges(v):
                relaxed += 1
                nd = d + w
                if not settled[t] and nd < dist[t] and nd < batch_updates.get(t, INF):
                    batch_updates[t] = nd
        dels = []
        ins = []
        for t, nd in batch_updates.items():
            if dist[t] != INF:
                dels.append((dist[t], t))
            dist[t] = nd
            ins.append(((nd, t), t))
        tent = tent.multi_delete(dels).multi_insert(ins)
        relaxations += relaxed
        trace.add_round(
            sorted(v for (_d, v), _ in entries),
            {"relaxations": relaxed, "settled": len(entries)},
        )
    return SsspResult(dist, trace.rounds_used, relaxations), trace


def recheck_relaxations(g: WeightedGraph, dist) -> int:
    """Number of edges that could still improve a distance (0 when done)."""
    bad = 0
    for u in range(g.n):
        if dist[u] == INF:
            continue
        for v, w in g.out_edges(u):
            if dist[u] + w < dist[v]:
                bad += 1
    return bad
