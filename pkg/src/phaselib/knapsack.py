"""Unbounded knapsack as a phase-parallel DP over weight states.

State j depends on states j - w_i; the lightest item weight w* bounds how
far back a dependence reaches, so the states of round r are the window
[(r-1)w*, r*w*) and every value they read comes from an earlier round.
Values are plain Python ints, so totals cannot overflow.
"""
from __future__ import annotations

from dataclasses import dataclass

from ._parallel import map_chunks
from .errors import InvalidInputError
from .phase_core import PhaseProblem, PhaseTrace, run_phases


@dataclass(frozen=True)
class KnapsackInstance:
    capacity: int
    items: tuple  # (weight, value) pairs

    @property
    def w_star(self) -> int:
        return min((w for w, _ in self.items), default=0)


def _check(inst: KnapsackInstance):
    if inst.capacity < 0:
        raise InvalidInputError("capacity must be >= 0")
    for w, _ in inst.items:
        if w <= 0:
            raise InvalidInputError("item weights must be positive integers")


@dataclass
class KnapsackResult:
    dp: list[int]  # length capacity + 1
    rounds_used: int

    @property
    def best(self) -> int:
        return self.dp[-1] if self.dp else 0


def seq_knapsack(inst: KnapsackInstance) -> KnapsackResult:
    """Ascending-weight evaluation of dp[j] = max(0, max dp[j-w_i] + v_i)."""
    _check(inst)
    dp = [0] * (inst.capacity + 1)
    for j in range(1, inst.capacity + 1):
        best = 0
        for w, v in inst.items:
            if w <= j and dp[j - w] + v > best:
                best = dp[j - w] + v
        dp[j] = best
    return KnapsackResult(dp, 0)


def phase_knapsack(inst: KnapsackInstance, threads: int = 1) -> tuple[KnapsackResult, PhaseTrace]:
    """Window rounds: round r computes states [(r-1)w*, r*w*).

    Every state it reads lies in an earlier round (j - w_i < (r-1)w*),
    which is asserted during execution; states inside a round are
    independent and are evaluated in fixed chunks.
    """
    _check(inst)
    W = inst.capacity
    w_star = inst.w_star
    if w_star == 0:  # no items: every state is 0 in one degenerate round
        trace = PhaseTrace()
        trace.add_round(list(range(W + 1)), {"states": W + 1})
        return KnapsackResult([0] * (W + 1), 1), trace
    dp = [0] * (W + 1)
    items = list(inst.items)
    state = {"dp": dp}

    def frontier(r, _st):
        lo = (r - 1) * w_star
        hi = min(r * w_star, W + 1)
        return list(range(lo, hi)) if lo <= W else []

    def process(fr, st):
        lo = fr[0]
        for w, _v in items:
            for j in fr:
                if w <= j and not j - w < lo:
                    raise AssertionError("window independence violated")

        def chunk(a, b):
            out = []
            for j in fr[a:b]:
                best = 0
                for w, v in items:
                    if w <= j and st["dp"][j - w] + v > best:
                        best = st["dp"][j - w] + v
                out.append(best)
            return out

        parts = map_chunks(chunk, len(fr), threads=threads, chunk=512)
        vals = [v for part in parts for v in part]
        for j, v in zip(fr, vals):
            st["dp"][j] = v
        return {"states": len(fr), "item_checks": len(fr) * len(items)}

    problem = PhaseProblem(W + 1, frontier, process, state, "knapsack")
    _, trace = run_phases(problem)
    assert trace.rounds_used == W // w_star + 1
    return KnapsackResult(dp, trace.rounds_used), trace
