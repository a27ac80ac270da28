"""Benchmark harness: run an algorithm on a file or generated input,
optionally validate against its sequential oracle, and emit one CSV row
of structural and timing statistics.
"""
from __future__ import annotations

import struct
import time
from dataclasses import dataclass, field, fields

import numpy as np

from . import activity, formats, gen, huffman, knapsack, lis, mis, sssp
from ._rng import CounterRng, hash_words
from .errors import InvalidInputError

CSV_HEADER_COMMENT = "# phaselib-bench v1"

ALGOS = (
    "activity1",
    "activity2",
    "activity-unweighted",
    "knapsack",
    "huffman",
    "sssp",
    "lis",
    "moles",
    "mis",
)


@dataclass
class BenchRecord:
    algo: str
    n: int
    seed: int
    threads: int
    input_rank: int
    rounds: int
    time_ms: float
    wakeup_mean: float = 0.0
    wakeup_max: int = 0
    tas_attempts: int = 0
    relaxations: int = 0
    checksum: str = ""
    oracle_ok: str = ""

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> list[str]:
        vals = [getattr(self, f.name) for f in fields(self)]
        return [f"{v:.3f}" if isinstance(v, float) else str(v) for v in vals]


def checksum64(pairs) -> str:
    """Order-independent 64-bit hash of (index, value) result payloads."""
    acc = 0
    for i, v in pairs:
        if isinstance(v, float):
            enc = struct.unpack("<q", struct.pack("<d", v))[0]
        else:
            enc = int(v)
        acc ^= hash_words(i, enc)
    return f"{acc:016x}"


class VerificationError(AssertionError):
    pass


def compare_payloads(got, want, label: str):
    """Exact elementwise comparison; reports the first divergent element."""
    if len(got) != len(want):
        raise VerificationError(f"{label}: length {len(got)} != {len(want)}")
    for i, (a, b) in enumerate(zip(got, want)):
        if a != b:
            raise VerificationError(f"{label}: first divergence at [{i}]: {a!r} != {b!r}")


def parse_gen_spec(spec: str) -> tuple[str, dict]:
    """`family:key=value,...` - e.g. segments:n=1000,k=10"""
    family, _, rest = spec.partition(":")
    params: dict = {}
    if rest:
        for part in rest.split(","):
            k, _, v = part.partition("=")
            if not _:
                raise InvalidInputError(f"bad generator parameter {part!r}")
            try:
                params[k] = int(v)
            except ValueError:
                try:
                    params[k] = float(v)
                except ValueError:
                    params[k] = v
    return family, params


def generate_input(algo: str, spec: str, seed: int):
    family, p = parse_gen_spec(spec)
    if family == "activities":
        return gen.gen_activities(
            int(p.get("n", 1000)),
            p.get("b", 1.0),
            p.get("sigma", 1.0),
            seed=seed,
            spread=p.get("spread"),
            pattern=p.get("pattern", "uniform"),
        )
    if family == "segments":
        return gen.gen_lis_segments(int(p.get("n", 1000)), int(p.get("k", 10)), p.get("noise", 1.0), seed=seed)
    if family == "line":
        return gen.gen_lis_line(int(p.get("n", 1000)), p.get("t", 0.0), p.get("w", float(p.get("n", 1000))), seed=seed)
    if family == "graph":
        el = gen.gen_weighted_graph(
            int(p.get("n", 100)), p.get("deg", 4.0), int(p.get("wmin", 1)), int(p.get("wmax", 8)), seed=seed
        )
        return el
    if family == "freqs":
        return gen.gen_freqs(int(p.get("n", 1000)), p.get("dist", "uniform"), int(p.get("max", 1 << 20)), seed=seed)
    if family == "items":
        rng = CounterRng(seed, stream=7)
        k = int(p.get("k", 8))
        wmax = int(p.get("wmax", 10))
        vmax = int(p.get("vmax", 100))
        return [
            (int(rng.int_below(2 * i, wmax)) + 1, int(rng.int_below(2 * i + 1, vmax)))
            for i in range(k)
        ]
    if family == "moles":
        rng = CounterRng(seed, stream=8)
        n = int(p.get("n", 100))
        ts = sorted(int(rng.int_below(2 * i, 4 * n)) for i in range(n))
        return [lis.Mole(ts[i], int(rng.int_below(2 * i + 1, 2 * n)) - n) for i in range(n)]
    raise InvalidInputError(f"unknown generator family {family!r}")


def load_input(algo: str, path: str, fmt: str = "text"):
    if algo in ("activity1", "activity2", "activity-unweighted"):
        return formats.read_activities(path)
    if algo == "knapsack":
        return formats.read_items(path)
    if algo == "huffman":
        return formats.read_freqs(path)
    if algo == "lis":
        return formats.read_values(path)
    if algo == "moles":
        return formats.read_moles(path)
    if algo in ("sssp", "mis"):
        if fmt == "bin":
            return formats.read_csr_bin(path)
        n, edges = formats.read_edges_text(path)
        return gen.EdgeList(n, np.array([[u, v, w] for u, v, w in edges], dtype=np.int64).reshape(-1, 3))
    raise InvalidInputError(f"unknown algorithm {algo!r}")


def _sssp_graph(data) -> sssp.WeightedGraph:
    if isinstance(data, sssp.WeightedGraph):
        return data
    edges = []
    for u, v, w in data.edges.tolist():
        edges.append((u, v, w))
        edges.append((v, u, w))
    return sssp.WeightedGraph.from_edges(data.n, edges)


def run_algo(algo: str, data, seed: int, threads: int, extra: dict):
    """Returns (payload pairs, record fields dict, oracle callable)."""
    if algo in ("activity1", "activity2"):
        fn = activity.type1_activity if algo == "activity1" else activity.type2_activity
        res, trace = fn(data, threads=threads)
        payload = list(enumerate(res.dp))
        stats = {"rounds": trace.rounds_used, "input_rank": max(res.rank, default=0)}
        oracle = lambda: list(enumerate(activity.seq_activity_dp(data).dp))
        return payload, stats, oracle
    if algo == "activity-unweighted":
        rank = activity.unweighted_activity_rank(data)
        payload = list(enumerate(rank))
        stats = {"rounds": max(rank, default=0), "input_rank": max(rank, default=0)}
        oracle = lambda: list(enumerate(activity.seq_activity_dp(data).rank))
        return payload, stats, oracle
    if algo == "knapsack":
        inst = knapsack.KnapsackInstance(int(extra.get("capacity", 100)), tuple(data))
        res, trace = knapsack.phase_knapsack(inst, threads=threads)
        payload = list(enumerate(res.dp))
        stats = {"rounds": trace.rounds_used, "input_rank": trace.rounds_used}
        oracle = lambda: list(enumerate(knapsack.seq_knapsack(inst).dp))
        return payload, stats, oracle
    if algo == "huffman":
        tree, trace = huffman.phase_huffman(data)
        # the optimality certificate is the weighted path length; tie-breaks
        # may legally change the shape, so height stays out of the payload
        payload = [(0, tree.wpl)]
        stats = {"rounds": trace.rounds_used, "input_rank": tree.height}
        oracle = lambda: [(0, huffman.seq_huffman(data).wpl)]
        return payload, stats, oracle
    if algo == "sssp":
        g = _sssp_graph(data)
        src = int(extra.get("src", 0))
        res, trace = sssp.windowed_sssp(g, src)
        payload = [(i, d) for i, d in enumerate(res.dist) if d != sssp.INF]
        stats = {
            "rounds": trace.rounds_used,
            "relaxations": res.relaxation_count,
            "input_rank": trace.rounds_used,
        }
        oracle = lambda: [
            (i, d) for i, d in enumerate(sssp.seq_dijkstra(g, src).dist) if d != sssp.INF
        ]
        return payload, stats, oracle
    if algo == "lis":
        res, trace = lis.par_lis(data, seed=seed, pivot_mode=extra.get("pivot_mode", "random"))
        payload = list(enumerate(res.dp))
        stats = {
            "rounds": trace.rounds_used,
            "input_rank": res.lis_length,
            "wakeup_mean": res.mean_attempts,
            "wakeup_max": res.max_attempts,
        }
        oracle = lambda: list(enumerate(lis.seq_lis(data).dp))
        return payload, stats, oracle
    if algo == "moles":
        best, res, trace = lis.max_moles(data, seed=seed)
        payload = list(enumerate(res.dp))
        stats = {
            "rounds": trace.rounds_used,
            "input_rank": best,
            "wakeup_mean": res.mean_attempts,
            "wakeup_max": res.max_attempts,
        }
        oracle = lambda: list(enumerate(lis.seq_moles(data)))
        return payload, stats, oracle
    if algo == "mis":
        if isinstance(data, sssp.WeightedGraph):
            us = np.repeat(np.arange(data.n), np.diff(data.offsets))
            elist = list(zip(us.tolist(), data.targets.tolist()))
        else:
            elist = data.edges.tolist()
        g = mis.UndirectedGraph.from_edges(data.n if hasattr(data, "n") else 0, elist)
        pri = mis.assign_random_priorities(g.n, seed=seed)
        res = mis.par_greedy_mis(g, pri, threads=threads, seed=seed)
        payload = list(enumerate(res.status))
        stats = {"rounds": 0, "tas_attempts": res.tas_attempts, "input_rank": 0}
        oracle = lambda: list(enumerate(mis.seq_greedy_mis(g, pri).status))
        return payload, stats, oracle
    raise InvalidInputError(f"unknown algorithm {algo!r}")


def run_bench(
    algo: str,
    data,
    seed: int = 0,
    threads: int = 1,
    repeats: int = 5,
    verify: bool = False,
    extra: dict | None = None,
) -> BenchRecord:
    """One warm-up run, then `repeats` timed runs; the reported time is the
    median (more robust than the mean against scheduler noise)."""
    extra = extra or {}
    n = data.n if hasattr(data, "n") else len(data)
    payload, stats, oracle = run_algo(algo, data, seed, threads, extra)  # warm-up
    times = []
    for _ in range(max(repeats, 1)):
        t0 = time.perf_counter()
        payload, stats, oracle = run_algo(algo, data, seed, threads, extra)
        times.append((time.perf_counter() - t0) * 1000)
    record = BenchRecord(
        algo=algo,
        n=n,
        seed=seed,
        threads=threads,
        input_rank=stats.get("input_rank", 0),
        rounds=stats.get("rounds", 0),
        time_ms=float(np.median(times)),
        wakeup_mean=stats.get("wakeup_mean", 0.0),
        wakeup_max=stats.get("wakeup_max", 0),
        tas_attempts=stats.get("tas_attempts", 0),
        relaxations=stats.get("relaxations", 0),
        checksum=checksum64(payload),
    )
    if verify:
        compare_payloads(payload, oracle(), algo)
        record.oracle_ok = "ok"
    return record


def emit_rows(records, sep: str = ",") -> str:
    lines = [CSV_HEADER_COMMENT, sep.join(BenchRecord.columns())]
    lines += [sep.join(r.row()) for r in records]
    return "\n".join(lines) + "\n"
