"""Optimal prefix-tree construction, sequentially and in merge rounds.

The round variant computes the sum f_m of the two smallest current
frequencies, takes every object strictly below f_m (dropping the largest
when that count is odd), pairs them in ascending order, and merges the
pairs simultaneously.  Each round is a valid prefix of some greedy
execution - pair i's sum is at least f_m, and all frontier members are
below it - so the weighted path length matches the greedy exactly; the
tree shape may differ on ties.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .aug_map import MIN_VALUES, AugOrderedMap
from .errors import InvalidInputError
from .phase_core import PhaseTrace


@dataclass
class HuffmanTree:
    freq: list[int]          # node frequencies; leaves first, internals appended
    left: list[int]          # -1 for leaves
    right: list[int]
    root: int
    n_leaves: int

    @property
    def height(self) -> int:
        if self.n_leaves == 1:
            return 0
        depth = [0] * len(self.freq)
        for v in range(self.root, self.n_leaves - 1, -1):
            depth[self.left[v]] = depth[v] + 1
            depth[self.right[v]] = depth[v] + 1
        return max(depth[:self.n_leaves])

    @property
    def wpl(self) -> int:
        """Weighted path length: sum of frequency * leaf depth."""
        if self.n_leaves == 1:
            return 0
        depth = [0] * len(self.freq)
        for v in range(self.root, self.n_leaves - 1, -1):
            depth[self.left[v]] = depth[v] + 1
            depth[self.right[v]] = depth[v] + 1
        return sum(self.freq[i] * depth[i] for i in range(self.n_leaves))

    def check_conservation(self) -> bool:
        for v in range(self.n_leaves, len(self.freq)):
            if self.freq[v] != self.freq[self.left[v]] + self.freq[self.right[v]]:
                return False
        return self.freq[self.root] == sum(self.freq[:self.n_leaves])


def _validate(freqs):
    if len(freqs) == 0:
        raise InvalidInputError("need at least one frequency")
    if any(f < 1 for f in freqs):
        raise InvalidInputError("frequencies must be positive integers")


def seq_huffman(freqs) -> HuffmanTree:
    """Classic greedy: repeatedly merge the two smallest, ties broken by
    (frequency, creation order)."""
    _validate(freqs)
    n = len(freqs)
    freq = [int(f) for f in freqs]
    left = [-1] * n
    right = [-1] * n
    heap = [(freq[i], i) for i in range(n)]
    heapq.heapify(heap)
    while len(heap) > 1:
        fa, a = heapq.heappop(heap)
        fb, b = heapq.heappop(heap)
        freq.append(fa + fb)
        left.append(a)
        right.append(b)
        heapq.heappush(heap, (fa + fb, len(freq) - 1))
    return HuffmanTree(freq, left, right, len(freq) - 1, n)


def phase_huffman(freqs) -> tuple[HuffmanTree, PhaseTrace]:
    """Merge rounds over a working set ordered by (frequency, creation id)."""
    _validate(freqs)
    n = len(freqs)
    freq = [int(f) for f in freqs]
    left = [-1] * n
    right = [-1] * n
    trace = PhaseTrace()
    if n == 1:
        return HuffmanTree(freq, left, right, 0, 1), trace
    working = AugOrderedMap.build(
        sorted(((int(f), i), i) for i, f in enumerate(freqs)), MIN_VALUES
    )
    while len(working) > 1:
        entries = working.flatten()
        f_m = entries[0][0][0] + entries[1][0][0]
        frontier = [e for e in entries if e[0][0] < f_m]
        if len(frontier) % 2:
            frontier.pop()  # odd count: the largest member waits a round
        assert len(frontier) >= 2  # the two smallest are always below f_m
        created = []
        for j in range(0, len(frontier), 2):
            (fa, _), a = frontier[j]
            (fb, _), b = frontier[j + 1]
            freq.append(fa + fb)
            left.append(a)
            right.append(b)
            created.append(len(freq) - 1)
        working = working.multi_delete([e[0] for e in frontier])
        working = working.multi_insert([((freq[v], v), v) for v in created])
        trace.add_round(created, {"merges": len(created), "threshold": f_m})
    root = working.flatten()[0][1]
    return HuffmanTree(freq, left, right, root, n), trace


def relaxed_rank(tree: HuffmanTree) -> dict[int, int]:
    """Rank i for nodes whose frequency lies in [f*_i, f*_{i+1}), where the
    f* are the frequencies along the path from a minimum-frequency leaf to
    the root; every node's construction round is bounded by this rank."""
    if tree.n_leaves == 1:
        return {0: 0}
    parent = [-1] * len(tree.freq)
    for v in range(tree.n_leaves, len(tree.freq)):
        parent[tree.left[v]] = v
        parent[tree.right[v]] = v
    a0 = min(range(tree.n_leaves), key=lambda i: (tree.freq[i], i))
    path = [tree.freq[a0]]
    v = a0
    while parent[v] != -1:
        v = parent[v]
        path.append(tree.freq[v])
    ranks: dict[int, int] = {}
    for node in range(len(tree.freq)):
        f = tree.freq[node]
        i = 0
        while i + 1 < len(path) and path[i + 1] <= f:
            i += 1
        ranks[node] = i
    return ranks
