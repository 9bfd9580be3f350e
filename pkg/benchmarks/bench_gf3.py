"""Benchmark the compiled GF(3) kernel against the pure-Python fallback.

Run:  python3 benchmarks/bench_gf3.py
"""

import random
import time

from adams3.gf3 import _kernel_py

try:
    from adams3.gf3 import _kernel_cy
except ImportError:
    _kernel_cy = None


def random_rows(rng, nrows, ncols, density):
    rows = []
    for _ in range(nrows):
        row = bytearray(ncols)
        for c in range(ncols):
            if rng.random() < density:
                row[c] = rng.choice([1, 2])
        rows.append(row)
    return rows


def bench(kernel, rows, ncols, repeats=3):
    best = float("inf")
    pivots = None
    for _ in range(repeats):
        work = [bytearray(r) for r in rows]
        t0 = time.perf_counter()
        pivots = kernel.rref(work, ncols)
        best = min(best, time.perf_counter() - t0)
    return best, len(pivots)


def main():
    rng = random.Random(2024)
    cases = [(100, 100, 0.1), (300, 300, 0.05), (600, 600, 0.03), (1000, 1000, 0.02)]
    print(f"{'size':>12} {'density':>8} {'rank':>6} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for nrows, ncols, density in cases:
        rows = random_rows(rng, nrows, ncols, density)
        t_py, rank = bench(_kernel_py, rows, ncols)
        if _kernel_cy is not None:
            t_cy, rank_cy = bench(_kernel_cy, rows, ncols)
            assert rank == rank_cy
            print(f"{nrows}x{ncols:>6} {density:>8} {rank:>6} {t_py:>10.4f} {t_cy:>11.4f} {t_py / t_cy:>8.1f}")
        else:
            print(f"{nrows}x{ncols:>6} {density:>8} {rank:>6} {t_py:>10.4f} {'n/a':>11} {'n/a':>8}")


if __name__ == "__main__":
    main()
