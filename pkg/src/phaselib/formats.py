"""Text and binary file formats for problem inputs.

Text formats are whitespace-separated numbers, one record per line;
values parse as ints when every token is integral, floats otherwise.
The binary graph format is little-endian: int64 n, int64 m, int64
offsets[n+1], int32 targets[m], int32 weights[m].
"""
from __future__ import annotations

import struct

import numpy as np

from .errors import ParseError
from .gen import Activity
from .lis import Mole
from .sssp import WeightedGraph

_MAGIC = b"PHCS"


def _parse_number(tok: str):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def _read_rows(path: str, ncols: int, what: str) -> list[tuple]:
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != ncols:
                raise ParseError(path, lineno, f"expected {ncols} fields for {what}")
            try:
                rows.append(tuple(_parse_number(t) for t in toks))
            except ValueError:
                raise ParseError(path, lineno, f"malformed number in {what}") from None
    return rows


def read_activities(path: str) -> list[Activity]:
    return [Activity(s, e, w) for s, e, w in _read_rows(path, 3, "activity `s e w`")]


def write_activities(path: str, acts):
    with open(path, "w") as fh:
        for a in acts:
            fh.write(f"{a.start} {a.end} {a.weight}\n")


def read_items(path: str) -> list[tuple]:
    return _read_rows(path, 2, "item `w v`")


def write_items(path: str, items):
    with open(path, "w") as fh:
        for w, v in items:
            fh.write(f"{w} {v}\n")


def read_freqs(path: str) -> list[int]:
    return [int(f) for (f,) in _read_rows(path, 1, "frequency")]


def read_values(path: str) -> list:
    return [v for (v,) in _read_rows(path, 1, "value")]


def write_values(path: str, values):
    with open(path, "w") as fh:
        for v in values:
            fh.write(f"{v}\n")


def read_moles(path: str) -> list[Mole]:
    return [Mole(int(t), int(p)) for t, p in _read_rows(path, 2, "mole `t p`")]


def write_moles(path: str, moles):
    with open(path, "w") as fh:
        for m in moles:
            fh.write(f"{m.t} {m.p}\n")


def read_edges_text(path: str, n: int | None = None) -> tuple[int, list[tuple]]:
    """Edges `u v w`, one per line; n defaults to 1 + max endpoint."""
    rows = _read_rows(path, 3, "edge `u v w`")
    edges = [(int(u), int(v), w) for u, v, w in rows]
    if n is None:
        n = 1 + max((max(u, v) for u, v, _ in edges), default=-1)
    return n, edges


def write_edges_text(path: str, n: int, edges):
    with open(path, "w") as fh:
        for u, v, w in edges:
            fh.write(f"{u} {v} {w}\n")


def write_csr_bin(path: str, g: WeightedGraph):
    if g.weights.dtype.kind != "i" or (len(g.weights) and g.weights.max() >= 1 << 31):
        raise ParseError(path, 0, "binary graphs require int32 weights")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<qq", g.n, g.m))
        fh.write(g.offsets.astype("<i8").tobytes())
        fh.write(g.targets.astype("<i4").tobytes())
        fh.write(g.weights.astype("<i4").tobytes())


def read_csr_bin(path: str) -> WeightedGraph:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ParseError(path, 0, "bad magic for binary graph")
        n, m = struct.unpack("<qq", fh.read(16))
        offsets = np.frombuffer(fh.read(8 * (n + 1)), dtype="<i8").astype(np.int64)
        targets = np.frombuffer(fh.read(4 * m), dtype="<i4").astype(np.int64)
        weights = np.frombuffer(fh.read(4 * m), dtype="<i4").astype(np.int64)
    if len(offsets) != n + 1 or len(targets) != m or len(weights) != m:
        raise ParseError(path, 0, "truncated binary graph")
    return WeightedGraph(int(n), offsets, targets, weights)
