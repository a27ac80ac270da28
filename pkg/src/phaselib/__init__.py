"""Phase-parallel iterative algorithms.

Rank-driven round execution with two frontier strategies: range-query
extraction over augmented ordered maps, and wake-ups through pivots or
flag trees.  Seven problems ship with both a parallel formulation and a
sequential oracle: weighted/unweighted activity selection, unbounded
knapsack, prefix-tree construction, windowed shortest paths, longest
increasing subsequence (plus the hammer-game reduction), and greedy
maximal independent set.
"""

from .aug_map import AugOrderedMap, Monoid, PivotMultiMap
from .phase_core import DependenceGraphOracle, PhaseProblem, PhaseTrace, oracle_rank, run_phases
from .range2d import LisAggregate, Point2D, RangeIndex2D

__all__ = [
    "AugOrderedMap",
    "Monoid",
    "PivotMultiMap",
    "DependenceGraphOracle",
    "PhaseProblem",
    "PhaseTrace",
    "oracle_rank",
    "run_phases",
    "LisAggregate",
    "Point2D",
    "RangeIndex2D",
]
