"""Greedy maximal independent set by priority, sequentially and as the
asynchronous flag-tree algorithm.

Each vertex owns a complete binary tree of single-shot flags, one leaf
per higher-priority neighbor.  Removing a neighbor marks its leaf and
climbs: a successful set of the parent flag means the sibling subtree is
still live, so the climb stops; a failed set means the sibling finished
earlier, so the subtree is complete and the climb continues.  A failed
set at the root means every blocker is gone and the owner joins the set
the moment that happens.  Execution is a work queue drained by any
number of threads; the resulting statuses depend only on the priorities.

Flags use an implicit heap layout: a tree with L leaves stores them at
positions L..2L-1 with internal nodes 1..L-1; a single-leaf tree has no
internal nodes and the leaf mark itself carries root-failure meaning.
All single-shot transitions go through dict.setdefault, which is atomic
under the interpreter lock, with a unique token telling the winner from
latecomers; a thread that loses a race therefore observes the winner's
earlier writes.
"""
from __future__ import annotations

import itertools
import threading
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._rng import CounterRng
from .errors import InvalidInputError


@dataclass
class UndirectedGraph:
    n: int
    adj: list[list[int]]  # sorted neighbor lists, symmetric, no self-loops

    @classmethod
    def from_edges(cls, n: int, edges) -> "UndirectedGraph":
        seen = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v, *rest in edges:
            u, v = int(u), int(v)
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, [sorted(s) for s in adj])

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2


SELECTED = 1
REMOVED = 2


@dataclass
class MisResult:
    status: list[int]  # SELECTED or REMOVED per vertex
    tas_attempts: int = 0
    leaf_marks: int = 0
    wake_count: list[int] = field(default_factory=list)

    def selected(self) -> list[int]:
        return [v for v, s in enumerate(self.status) if s == SELECTED]


def assign_random_priorities(n: int, seed: int = 0) -> list[int]:
    """Uniformly random permutation of 1..n, deterministic in the seed."""
    rng = CounterRng(seed, stream=6)
    return (rng.permutation(n) + 1).tolist()


def seq_greedy_mis(g: UndirectedGraph, priorities) -> MisResult:
    """Process vertices from highest to lowest priority; select unless a
    neighbor is already selected."""
    n = g.n
    if sorted(priorities) != list(range(1, n + 1)):
        raise InvalidInputError("priorities must be a permutation of 1..n")
    status = [0] * n
    order = sorted(range(n), key=lambda v: -priorities[v])
    for v in order:
        if status[v] == 0:
            status[v] = SELECTED
            for u in g.adj[v]:
                if status[u] == 0:
                    status[u] = REMOVED
    return MisResult(status)


def check_independent_maximal(g: UndirectedGraph, selected: set[int]) -> bool:
    for v in selected:
        if any(u in selected for u in g.adj[v]):
            return False
    for v in range(g.n):
        if v not in selected and not any(u in selected for u in g.adj[v]):
            return False
    return True


class _Flags:
    """Single-shot flags over dict.setdefault (atomic under the GIL)."""

    def __init__(self):
        self._won: dict[int, int] = {}
        self._token = itertools.count(1)

    def test_and_set(self, key: int) -> bool:
        tok = next(self._token)
        return self._won.setdefault(key, tok) == tok

    def is_set(self, key: int) -> bool:
        return key in self._won

    def count(self) -> int:
        return len(self._won)


@dataclass
class _TasLayout:
    owner_off: np.ndarray     # vertex -> base id of its tree's node space
    leaf_count: np.ndarray
    blockers: list[list[int]]         # higher-priority neighbors, sorted
    containing: list[list[tuple[int, int]]]  # u -> [(owner, leaf slot)]

    @classmethod
    def build(cls, g: UndirectedGraph, priorities) -> "_TasLayout":
        n = g.n
        blockers = [
            [u for u in g.adj[v] if priorities[u] > priorities[v]] for v in range(n)
        ]
        leaf_count = np.array([len(b) for b in blockers], dtype=np.int64)
        # node ids: tree of L leaves occupies [off, off + 2L) with internal
        # nodes at off+1..off+L-1 and leaves at off+L..off+2L-1
        sizes = np.where(leaf_count > 0, 2 * leaf_count, 0)
        owner_off = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(sizes, out=owner_off[1:])
        containing: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for v in range(n):
            for slot, u in enumerate(blockers[v]):
                containing[u].append((v, slot))
        return cls(owner_off[:-1], leaf_count, blockers, containing)


def par_greedy_mis(
    g: UndirectedGraph, priorities, threads: int = 1, seed: int = 0
) -> MisResult:
    """Asynchronous greedy MIS; statuses match seq_greedy_mis for every
    schedule.  `threads` drains the shared work queue concurrently."""
    n = g.n
    if sorted(priorities) != list(range(1, n + 1)):
        raise InvalidInputError("priorities must be a permutation of 1..n")
    layout = _TasLayout.build(g, priorities)
    flags = _Flags()        # tree node flags, single-shot
    woken = _Flags()        # one wake per vertex
    removed = _Flags()      # first remover owns the tree notifications
    status = [0] * n
    tas_attempts = itertools.count()
    leaf_marks = itertools.count()
    queue: deque[int] = deque()
    outstanding = [0]
    count_lock = threading.Lock()
    drained = threading.Event()

    def wake(v: int):
        if not woken.test_and_set(v):
            return
        if removed.is_set(v):
            return  # woken by its last blocker but removed meanwhile
        with count_lock:
            outstanding[0] += 1
        queue.append(v)

    def remove(u: int):
        if not removed.test_and_set(u):
            return
        if status[u] == 0:
            status[u] = REMOVED
        # notify every tree that lists u as a blocker
        for owner, slot in layout.containing[u]:
            if removed.is_set(owner):
                continue  # the owner's tree no longer matters
            off = int(layout.owner_off[owner])
            L = int(layout.leaf_count[owner])
            next(leaf_marks)
            flags.test_and_set(off + L + slot)  # mark the leaf
            if L == 1:
                wake(owner)  # no internal nodes: the leaf acts as the root
                continue
            local = (L + slot) >> 1
            while True:
                next(tas_attempts)
                if flags.test_and_set(off + local):
                    break  # won: the sibling subtree is still live
                if local == 1:
                    wake(owner)  # failed at the root: all blockers gone
                    break
                local >>= 1

    def process(v: int):
        if not removed.is_set(v):
            status[v] = SELECTED
            for u in g.adj[v]:
                remove(u)
        with count_lock:
            outstanding[0] -= 1
            if outstanding[0] == 0:
                drained.set()

    for v in range(n):
        if layout.leaf_count[v] == 0:
            wake(v)

    if n and outstanding[0] == 0:
        drained.set()
    if threads <= 1:
        while queue:
            process(queue.popleft())
    else:
        def worker():
            while not drained.is_set():
                try:
                    v = queue.popleft()
                except IndexError:
                    drained.wait(0.0005)
                    continue
                process(v)

        ts = [threading.Thread(target=worker) for _ in range(threads)]
        for t in ts:
            t.start()
        for t in ts:
            t.join()

    return MisResult(
        status,
        tas_attempts=next(tas_attempts),
        leaf_marks=next(leaf_marks),
        wake_count=[1 if woken.is_set(v) else 0 for v in range(n)],
    )
