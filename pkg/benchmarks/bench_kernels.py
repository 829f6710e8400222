#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the two hot kernels (all-sources BFS distance totals, full Brandes
accumulation) on a couple of mid-size networks under every available
backend and prints a timing table.  The numba timings exclude the first
call so JIT compilation is not billed to the kernel.

Usage: python benchmarks/bench_kernels.py [--sizes m,t [m,t ...]]
"""

from __future__ import annotations

import argparse
import time

from kochnet import _kernels, build


def _time(fn, *args, repeat: int = 3) -> tuple[float, object]:
    fn(*args)  # warm-up (JIT compile, cache touch)
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--sizes",
        nargs="+",
        default=["1,4", "2,3", "1,5"],
        help="m,t pairs to benchmark",
    )
    args = parser.parse_args()
    backends = _kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'graph':>10} {'N':>7} {'kernel':>18}" + "".join(
        f" {b + ' (s)':>12}" for b in backends
    ) + f" {'speedup':>9}"
    print(header)
    print("-" * len(header))

    for size in args.sizes:
        m, t = (int(x) for x in size.split(","))
        graph = build(m, t)
        indptr, indices = graph.csr
        eid = graph.csr_edge_ids
        n_edges = len(graph.edges)

        for kernel, call in (
            ("distance totals", lambda impl: impl["all_distance_total"](indptr, indices)),
            (
                "betweenness",
                lambda impl: impl["betweenness_totals"](indptr, indices, eid, n_edges),
            ),
        ):
            times = {}
            checks = {}
            for backend in backends:
                impl = _kernels.backend_impl(backend)
                times[backend], checks[backend] = _time(call, impl)
            row = f"{f'K({m},{t})':>10} {graph.n_vertices:>7} {kernel:>18}"
            for backend in backends:
                row += f" {times[backend]:>12.4f}"
            if len(backends) == 2:
                a, b = (times[x] for x in backends)
                row += f" {max(a, b) / min(a, b):>8.1f}x"
            print(row)


if __name__ == "__main__":
    main()
