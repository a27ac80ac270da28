"""Command-line entry point.

    phaselib <algo> (--in FILE | --gen SPEC) [--seed S] [--threads T]
             [--repeats R] [--verify] [--out csv|tsv] ...
    phaselib gen <SPEC> --to FILE [--seed S] [--format text|bin]
    phaselib sweep <algo> --gen SPEC --vary key=v1,v2,... [--threads-list ...]

Exit codes: 0 ok, 1 usage error, 2 input parse error, 3 verification
failure.
"""
from __future__ import annotations

import argparse
import sys

from . import bench, formats, gen
from ._parallel import ENV_THREADS, effective_threads
from .bench import ALGOS, BenchRecord, VerificationError, emit_rows
from .errors import InvalidInputError, ParseError, PhaselibError

USAGE_EXIT = 1
PARSE_EXIT = 2
VERIFY_EXIT = 3


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--in", dest="infile", help="input file")
    p.add_argument("--gen", dest="genspec", help="generator spec family:k=v,...")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads (default 1, or ${ENV_THREADS})")
    p.add_argument("--repeats", type=int, default=5, help="timed repetitions")
    p.add_argument("--verify", action="store_true", help="compare against the sequential oracle")
    p.add_argument("--out", choices=("csv", "tsv"), default="csv")
    p.add_argument("--format", choices=("text", "bin"), default="text", help="graph file format")
    p.add_argument("--capacity", type=int, default=100, help="knapsack capacity")
    p.add_argument("--src", type=int, default=0, help="sssp source vertex")
    p.add_argument("--pivot-mode", choices=("random", "rightmost"), default="random")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="phaselib")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for algo in ALGOS:
        p = sub.add_parser(algo, help=f"run {algo}")
        _add_common(p)
    g = sub.add_parser("gen", help="write a generated input to a file")
    g.add_argument("spec", help="generator spec family:k=v,...")
    g.add_argument("--to", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("text", "bin"), default="text")
    s = sub.add_parser("sweep", help="run one algorithm over a parameter range")
    s.add_argument("algo", choices=ALGOS)
    _add_common(s)
    s.add_argument("--vary", help="generator key and values: key=v1,v2,...")
    s.add_argument("--threads-list", default=None, help="comma-separated thread counts")
    return ap


def _load(algo: str, args) -> object:
    if args.genspec and args.infile:
        raise InvalidInputError("given both --in and --gen")
    if args.genspec:
        return bench.generate_input(algo, args.genspec, args.seed)
    if args.infile:
        return bench.load_input(algo, args.infile, fmt=args.format)
    raise InvalidInputError("need --in FILE or --gen SPEC")


def _run_one(algo: str, args) -> list[BenchRecord]:
    data = _load(algo, args)
    rec = bench.run_bench(
        algo,
        data,
        seed=args.seed,
        threads=effective_threads(args.threads),
        repeats=args.repeats,
        verify=args.verify,
        extra={"capacity": args.capacity, "src": args.src, "pivot_mode": args.pivot_mode},
    )
    return [rec]


def _run_gen(args) -> int:
    family, _ = bench.parse_gen_spec(args.spec)
    data = bench.generate_input("", args.spec, args.seed)
    if family == "activities":
        formats.write_activities(args.to, data)
    elif family in ("segments", "line"):
        formats.write_values(args.to, data)
    elif family == "freqs":
        formats.write_values(args.to, data)
    elif family == "items":
        formats.write_items(args.to, data)
    elif family == "moles":
        formats.write_moles(args.to, data)
    elif family == "graph":
        if args.format == "bin":
            from .sssp import WeightedGraph

            edges = []
            for u, v, w in data.edges.tolist():
                edges.append((u, v, w))
                edges.append((v, u, w))
            formats.write_csr_bin(args.to, WeightedGraph.from_edges(data.n, edges))
        else:
            formats.write_edges_text(args.to, data.n, data.edges.tolist())
    else:
        raise InvalidInputError(f"unknown generator family {family!r}")
    return 0


def _run_sweep(args) -> tuple[list[BenchRecord], list[float]]:
    """One row per (point, thread count); returns records plus each row's
    single-thread baseline time for self-speedup."""
    if not args.genspec:
        raise InvalidInputError("sweep needs --gen SPEC")
    points = [args.genspec]
    if args.vary:
        key, _, vals = args.vary.partition("=")
        if not vals:
            raise InvalidInputError("--vary must look like key=v1,v2")
        points = [f"{args.genspec},{key}={v}" for v in vals.split(",")]
    thread_counts = [effective_threads(args.threads)]
    if args.threads_list:
        thread_counts = [int(t) for t in args.threads_list.split(",")]
    extra = {"capacity": args.capacity, "src": args.src, "pivot_mode": args.pivot_mode}
    records: list[BenchRecord] = []
    baselines: list[float] = []
    for spec in points:
        data = bench.generate_input(args.algo, spec, args.seed)
        runs: dict[int, BenchRecord] = {}
        for t in sorted(set([1] + thread_counts)):
            runs[t] = bench.run_bench(
                args.algo, data, seed=args.seed, threads=t,
                repeats=args.repeats, verify=args.verify, extra=extra,
            )
        for t in thread_counts:
            records.append(runs[t])
            baselines.append(runs[1].time_ms)
    return records, baselines


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "gen":
            return _run_gen(args)
        if args.cmd == "sweep":
            records, baselines = _run_sweep(args)
            sep = "\t" if args.out == "tsv" else ","
            lines = [
                bench.CSV_HEADER_COMMENT,
                sep.join(BenchRecord.columns() + ["baseline_1t_ms"]),
            ]
            for r, base in zip(records, baselines):
                lines.append(sep.join(r.row() + [f"{base:.3f}"]))
            print("\n".join(lines))
            return 0
        records = _run_one(args.cmd, args)
        print(emit_rows(records, sep="\t" if args.out == "tsv" else ","), end="")
        return 0
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE_EXIT
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return PARSE_EXIT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return VERIFY_EXIT
    except (InvalidInputError, PhaselibError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
