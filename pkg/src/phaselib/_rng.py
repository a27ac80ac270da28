"""Portable counter-based pseudo-random generator (splitmix64).

All randomness in the library flows through this module so that any
(seed, counter) pair maps to the same value on every platform and at any
thread count.  The scalar and numpy paths are bit-identical (tested).

Constants are the standard splitmix64 ones (Steele, Lea & Flood 2014).
"""
from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    x &= _MASK
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK
    return x ^ (x >> 31)


def mix64_np(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX2)
    x ^= x >> np.uint64(31)
    return x


def hash_words(*words: int) -> int:
    """Hash a tuple of integers into one 64-bit word.

    Used for keyed sub-streams, e.g. (seed, epoch, query-id, counter).
    """
    h = 0
    for w in words:
        h = mix64((h + GOLDEN + (w & _MASK)) & _MASK)
    return h


class CounterRng:
    """Random-access stream: value i is mix64(seed_state + (i+1)*GOLDEN)."""

    def __init__(self, seed: int, stream: int = 0):
        self._base = mix64(hash_words(seed, stream))

    def word(self, i: int) -> int:
        return mix64((self._base + (i + 1) * GOLDEN) & _MASK)

    def words(self, start: int, count: int) -> np.ndarray:
        idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        x = np.uint64(self._base) + idx * np.uint64(GOLDEN)
        return mix64_np(x)

    def float01(self, i: int) -> float:
        return (self.word(i) >> 11) * 2.0**-53

    def floats01(self, start: int, count: int) -> np.ndarray:
        return (self.words(start, count) >> np.uint64(11)) * 2.0**-53

    def int_below(self, i: int, bound: int) -> int:
        """Integer in [0, bound). Modulo reduction; bias is < bound/2**64."""
        return self.word(i) % bound

    def ints_below(self, start: int, count: int, bound: int) -> np.ndarray:
        return (self.words(start, count) % np.uint64(bound)).astype(np.int64)

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates permutation of 0..n-1, deterministic in the seed."""
        perm = np.arange(n, dtype=np.int64)
        for i in range(n - 1, 0, -1):
            j = self.int_below(i, i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm
