"""Chunked thread-pool helper.

Work is cut into fixed-size chunks that depend only on the input size,
never on the worker count, and partial results are reassembled in chunk
order.  A result is therefore bit-identical at any thread count; threads
only change which worker touches which chunk.  Real speedup is limited to
workloads that release the GIL (large numpy kernels).
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

DEFAULT_CHUNK = 1 << 15
ENV_THREADS = "PHASELIB_THREADS"


def effective_threads(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(ENV_THREADS)
    if env:
        return max(1, int(env))
    return 1


def chunk_bounds(n: int, chunk: int = DEFAULT_CHUNK) -> list[tuple[int, int]]:
    if n <= 0:
        return []
    return [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]


def map_chunks(
    fn: Callable[[int, int], T],
    n: int,
    threads: int = 1,
    chunk: int = DEFAULT_CHUNK,
) -> list[T]:
    """Apply fn(lo, hi) to fixed chunks of range(n); results in chunk order."""
    bounds = chunk_bounds(n, chunk)
    if threads <= 1 or len(bounds) <= 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, lo, hi) for lo, hi in bounds]
        return [f.result() for f in futures]
