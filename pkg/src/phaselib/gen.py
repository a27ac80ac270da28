"""Seeded workload generators for every algorithm family.

All randomness comes from the library's counter RNG, so a generator spec
reproduces byte-identical output for a given seed regardless of chunking
or thread count.  Transcendental steps (log, sqrt, cos) go through numpy
float64, so bit-level identity across platforms additionally assumes a
consistent libm; the integer core is fully portable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import CounterRng
from .errors import InvalidInputError


@dataclass(frozen=True)
class Activity:
    start: float
    end: float
    weight: float


def gen_activities(
    n: int,
    min_dur: float = 1.0,
    sigma: float = 0.0,
    seed: int = 0,
    spread: float | None = None,
    pattern: str = "uniform",
) -> list[Activity]:
    """Activities with duration min_dur + |N(0, sigma^2)| and uniform
    integer weights in [1, 2^32).

    pattern "uniform": starts uniform in [0, spread] (default spread = n);
    pattern "spaced": start_i = i * spread, a disjoint chain when
    spread >= max duration.  The sigma/min_dur ratio controls the rank.
    """
    if min_dur <= 0 or sigma < 0:
        raise InvalidInputError("need min_dur > 0 and sigma >= 0")
    if pattern not in ("uniform", "spaced"):
        raise InvalidInputError(f"unknown start pattern {pattern!r}")
    if spread is None:
        spread = float(n)
    rng = CounterRng(seed, stream=1)
    u1 = rng.floats01(0, n)
    u2 = rng.floats01(n, n)
    u3 = rng.floats01(2 * n, n)
    if pattern == "uniform":
        starts = u1 * spread
    else:
        starts = np.arange(n, dtype=np.float64) * spread
    half_normal = np.abs(
        np.sqrt(-2.0 * np.log(np.maximum(u2, 2.0**-53))) * np.cos(2.0 * math.pi * u3)
    )
    durs = min_dur + sigma * half_normal
    weights = rng.ints_below(3 * n, n, (1 << 32) - 1) + 1
    return [
        Activity(float(s), float(s + d), int(w))
        for s, d, w in zip(starts, durs, weights)
    ]


def gen_lis_segments(n: int, k: int, noise: float = 1.0, seed: int = 0) -> list[float]:
    """About k descending segments on ascending value bands; the strict LIS
    length lands in [k, 2k].

    Within a segment values fall by a fixed step; jitter is uniform within
    +-noise*step (noise <= 1), so an increasing pair inside a segment needs
    a jitter gap above one step and an increasing triple would need a gap
    above two steps, which the jitter range cannot produce: each segment
    contributes at most 2 elements.  Bands are separated beyond the jitter
    range, so picking one element per segment always chains: at least k.
    """
    if not 1 <= k <= n:
        raise InvalidInputError("need 1 <= k <= n")
    if not 0 <= noise <= 1:
        raise InvalidInputError("need 0 <= noise <= 1")
    rng = CounterRng(seed, stream=2)
    step = 4.0
    bounds = (np.arange(k + 1, dtype=np.int64) * n) // k  # exactly k segments
    idx = np.arange(n, dtype=np.int64)
    seg_id = np.searchsorted(bounds, idx, side="right") - 1
    pos = idx - bounds[seg_id]
    seg_max = int(np.diff(bounds).max())
    band_gap = (seg_max + 2) * step + 1.0
    jitter = (rng.floats01(0, n) * 2.0 - 1.0) * (noise * step)
    vals = seg_id * band_gap + (seg_max - pos) * step + jitter
    return [float(v) for v in vals]


def gen_lis_line(n: int, slope: float = 1.0, noise_width: float = 0.0, seed: int = 0) -> list[float]:
    """Values on the line slope*i plus uniform noise in [0, noise_width);
    the slope/noise ratio controls the LIS length."""
    if slope < 0 or noise_width < 0:
        raise InvalidInputError("need slope >= 0 and noise_width >= 0")
    rng = CounterRng(seed, stream=3)
    vals = slope * np.arange(n, dtype=np.float64)
    if noise_width > 0:
        vals = vals + rng.floats01(0, n) * noise_width
    return [float(v) for v in vals]


@dataclass(frozen=True)
class EdgeList:
    n: int
    edges: np.ndarray  # (m, 3) int64 rows (u, v, w), distinct unordered pairs


def gen_weighted_graph(
    n: int,
    avg_deg: float,
    w_min: int = 1,
    w_max: int = 1,
    seed: int = 0,
) -> EdgeList:
    """Random simple graph: distinct unordered vertex pairs, no self loops,
    uniform integer weights in [w_min, w_max]."""
    if n < 1 or avg_deg < 0:
        raise InvalidInputError("need n >= 1 and avg_deg >= 0")
    if not 1 <= w_min <= w_max:
        raise InvalidInputError("need 1 <= w_min <= w_max")
    target = min(int(round(n * avg_deg / 2)), n * (n - 1) // 2)
    rng = CounterRng(seed, stream=4)
    draw = 0
    need = target
    parts: list[np.ndarray] = []
    seen = np.zeros(0, dtype=np.int64)
    while need > 0:
        batch = max(64, need * 2)
        us = rng.ints_below(draw, batch, n)
        draw += batch
        vs = rng.ints_below(draw, batch, n)
        draw += batch
        ok = us != vs
        key = np.minimum(us[ok], vs[ok]) * n + np.maximum(us[ok], vs[ok])
        if len(seen):
            key = key[~np.isin(key, seen)]
        _, first = np.unique(key, return_index=True)
        take = key[np.sort(first)][:need]  # first-draw order, duplicates dropped
        parts.append(take)
        seen = np.concatenate([seen, take])
        need -= len(take)
    keys = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    edges = np.empty((len(keys), 3), dtype=np.int64)
    edges[:, 0] = keys // n
    edges[:, 1] = keys % n
    edges[:, 2] = rng.ints_below(draw, len(keys), w_max - w_min + 1) + w_min
    return EdgeList(n, edges)


def gen_freqs(n: int, dist: str = "uniform", max_f: int = 1 << 20, seed: int = 0) -> list[int]:
    """Frequency lists in [1, max_f]: uniform, zipf (log-uniform, exponent
    1), or exponential (geometric tail, scale max_f/16)."""
    if n < 1:
        raise InvalidInputError("need n >= 1")
    if max_f < 1 or max_f >= 1 << 32:
        raise InvalidInputError("need 1 <= max_f < 2^32")
    rng = CounterRng(seed, stream=5)
    u = rng.floats01(0, n)
    if dist == "uniform":
        f = np.floor(u * max_f).astype(np.int64) + 1
    elif dist == "zipf":
        f = np.floor(np.exp(u * math.log(max_f + 1.0))).astype(np.int64)
    elif dist == "exponential":
        scale = max(max_f / 16.0, 1.0)
        f = np.floor(-scale * np.log(np.maximum(1.0 - u, 2.0**-53))).astype(np.int64) + 1
    else:
        raise InvalidInputError(f"unknown distribution {dist!r}")
    return [int(x) for x in np.clip(f, 1, max_f)]
