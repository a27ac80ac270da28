"""Generic rank-driven round loop and the brute-force rank oracle.

Round i processes exactly the objects whose dependence depth is i; the
loop is bulk-synchronous: state changes made while processing round i are
visible before round i+1's frontier is computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .errors import CycleError, StalledError


@dataclass
class RoundRecord:
    index: int
    frontier: tuple
    counters: dict[str, int] = field(default_factory=dict)


@dataclass
class PhaseTrace:
    """Per-round record of frontier membership and counters."""

    rounds: list[RoundRecord] = field(default_factory=list)

    def add_round(self, frontier: Sequence, counters: Mapping[str, int] | None = None):
        self.rounds.append(
            RoundRecord(len(self.rounds) + 1, tuple(frontier), dict(counters or {}))
        )

    @property
    def rounds_used(self) -> int:
        return len(self.rounds)

    def frontier_sizes(self) -> list[int]:
        return [len(r.frontier) for r in self.rounds]

    def total(self, counter: str) -> int:
        return sum(r.counters.get(counter, 0) for r in self.rounds)

    @property
    def wakeup_attempts(self) -> int:
        return self.total("wakeups")

    @property
    def tas_attempts(self) -> int:
        return self.total("tas_attempts")

    @property
    def relaxations(self) -> int:
        return self.total("relaxations")

    def round_of(self) -> dict:
        """object id -> round index in which it was processed."""
        out: dict = {}
        for r in self.rounds:
            for obj in r.frontier:
                out[obj] = r.index
        return out

    def to_csv_rows(self) -> list[str]:
        names = sorted({k for r in self.rounds for k in r.counters})
        header = "round,frontier_size" + ("," + ",".join(names) if names else "")
        rows = [header]
        for r in self.rounds:
            cells = [str(r.index), str(len(r.frontier))]
            cells += [str(r.counters.get(k, 0)) for k in names]
            rows.append(",".join(cells))
        return rows


@dataclass
class PhaseProblem:
    """A problem wired into the round loop.

    frontier_fn(round_index, state) returns the object ids to process this
    round; frontiers must be disjoint and cover all objects.  process_fn
    mutates the shared state and returns counter increments for the trace.
    """

    object_count: int
    frontier_fn: Callable[[int, Any], Sequence]
    process_fn: Callable[[Sequence, Any], Mapping[str, int] | None]
    state: Any = None
    description: str = ""


def run_phases(problem: PhaseProblem) -> tuple[Any, PhaseTrace]:
    trace = PhaseTrace()
    done = 0
    rnd = 0
    while done < problem.object_count:
        rnd += 1
        frontier = problem.frontier_fn(rnd, problem.state)
        if not len(frontier):
            raise StalledError(
                f"{problem.description or 'phase loop'}: empty frontier in round {rnd} "
                f"with {problem.object_count - done} objects unprocessed"
            )
        counters = problem.process_fn(frontier, problem.state)
        trace.add_round(frontier, counters)
        done += len(frontier)
    return problem.state, trace


@dataclass
class DependenceGraphOracle:
    """Explicit predecessor lists, test scale only."""

    n: int
    preds: list[list[int]]


def oracle_rank(dg: DependenceGraphOracle) -> list[int]:
    """Longest-path depth of every object: 1 + max over predecessor ranks.

    Runs a topological sweep; a cycle raises CycleError.
    """
    n = dg.n
    succs: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for x in range(n):
        for y in dg.preds[x]:
            succs[y].append(x)
            indeg[x] += 1
    rank = [1] * n
    queue = [x for x in range(n) if indeg[x] == 0]
    seen = 0
    while queue:
        nxt: list[int] = []
        for y in queue:
            seen += 1
            for x in succs[y]:
                if rank[y] + 1 > rank[x]:
                    rank[x] = rank[y] + 1
                indeg[x] -= 1
                if indeg[x] == 0:
                    nxt.append(x)
        queue = nxt
    if seen != n:
        raise CycleError("dependence structure contains a cycle")
    return rank
