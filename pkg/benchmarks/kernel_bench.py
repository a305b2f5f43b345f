#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot kernels in isolation and a full dependency estimate with
each backend bound, printing one table row per (kernel, n).  Run after any
kernel change:

    python benchmarks/kernel_bench.py [--sizes 10000,100000,1000000] [--repeat 9]
"""

import argparse
import statistics
import time

import numpy as np

import mcde
from mcde import _kernels
from mcde._rng import iteration_rng

BACKENDS = {
    "numpy": ("rank_scan_numpy", "mask_outside_numpy", "window_stats_numpy"),
    "numba": ("rank_scan_numba", "mask_outside_numba", "window_stats_numba"),
}


def _bind(backend):
    rank, mask, window = (getattr(_kernels, name) for name in BACKENDS[backend])
    _kernels.rank_scan = rank
    _kernels.mask_outside = mask
    _kernels.window_stats = window
    return rank, mask, window


def _time(fn, repeat):
    fn()  # warm (JIT + caches)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_kernels(n, repeat):
    rng = np.random.default_rng(0)
    tied = rng.random(max(n // 20, 2))[rng.integers(0, max(n // 20, 2), size=n)]
    order = np.lexsort((iteration_rng(1, 0).random(n), tied))
    member = rng.random(n) < 0.5
    adj, _ = _kernels.rank_scan_numpy(tied, order)
    start, end = n // 4, n // 4 + n // 2

    rows = []
    for backend in BACKENDS:
        if backend == "numba" and not _kernels.HAVE_NUMBA:
            continue
        rank, mask, window = _bind(backend)
        rows.append((f"rank_scan      n={n:<9}", backend,
                     _time(lambda: rank(tied, order), repeat)))
        rows.append((f"mask_outside   n={n:<9}", backend,
                     _time(lambda: mask(np.ones(n, np.bool_), order, start, end), repeat)))
        rows.append((f"window_stats   n={n:<9}", backend,
                     _time(lambda: window(member, order, adj, start, end), repeat)))
    return rows


def bench_contrast(n, repeat):
    data = mcde.generate(mcde.DependencySpec("independent", n, 3, 0.0, seed=3))
    index = mcde.construct_index(data)
    rows = []
    for backend in BACKENDS:
        if backend == "numba" and not _kernels.HAVE_NUMBA:
            continue
        _bind(backend)
        rows.append((f"contrast M=50  n={n:<9}", backend,
                     _time(lambda: mcde.contrast(index, m=50, seed=1), repeat)))
        rows.append((f"index build    n={n:<9}", backend,
                     _time(lambda: mcde.construct_index(data), repeat)))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10000,100000,1000000",
                        help="comma-separated row counts")
    parser.add_argument("--repeat", type=int, default=9)
    args = parser.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]

    rows = []
    for n in sizes:
        rows += bench_kernels(n, args.repeat)
        rows += bench_contrast(n, args.repeat)

    grouped = {}
    for name, backend, seconds in rows:
        grouped.setdefault(name, {})[backend] = seconds

    width = max(len(name) for name in grouped)
    print(f"{'benchmark'.ljust(width)}  {'numpy':>12}  {'numba':>12}  {'speedup':>8}")
    for name, by_backend in grouped.items():
        np_s = by_backend.get("numpy", float("nan"))
        nb_s = by_backend.get("numba", float("nan"))
        speedup = np_s / nb_s if nb_s and nb_s == nb_s else float("nan")
        print(f"{name.ljust(width)}  {np_s * 1e3:>10.3f}ms  {nb_s * 1e3:>10.3f}ms  {speedup:>7.2f}x")


if __name__ == "__main__":
    main()
