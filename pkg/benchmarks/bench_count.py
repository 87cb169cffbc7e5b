#!/usr/bin/env python3
"""Compare the numba and numpy counting backends on the triangle fixtures.

Usage: python benchmarks/bench_count.py [--primes 7,11,13] [--repeat 3]

Reports per-prime wall time for the brute and linear-elimination kernels on
the six-variable constant-field triangle polynomial, checks the two
backends agree, and prints the speedup.
"""

import argparse
import time

from vpoly._kernels import numba_available
from vpoly.ffcount import count_zeros
from vpoly.graph_model import cycle_graph
from vpoly.multipoly import variables_of
from vpoly.vpolynomial import fk_polynomial


def best_of(fn, repeat):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return value, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", default="7,11,13")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    primes = [int(p) for p in args.primes.split(",")]

    poly = fk_polynomial(cycle_graph(3))
    amb = variables_of(poly)
    backends = ["numpy"] + (["numba"] if numba_available() else [])
    if "numba" in backends:
        # trigger JIT compilation outside the timed region
        count_zeros(poly, amb, 2, method="brute", backend="numba")
        count_zeros(poly, amb, 2, method="elim", backend="numba")

    print(f"{'prime':>6} {'method':>18} " + " ".join(f"{b:>12}" for b in backends)
          + ("  speedup" if len(backends) == 2 else ""))
    for p in primes:
        for method in ("brute", "elim"):
            times = {}
            counts = {}
            for backend in backends:
                rep, dt = best_of(
                    lambda: count_zeros(poly, amb, p, method=method, backend=backend),
                    args.repeat)
                times[backend] = dt
                counts[backend] = rep.zeros
            assert len(set(counts.values())) == 1, counts
            row = f"{p:>6} {method:>18} " + " ".join(f"{times[b]*1e3:>10.1f}ms" for b in backends)
            if len(backends) == 2:
                row += f"  {times['numpy'] / times['numba']:>6.1f}x"
            print(row + f"   zeros={counts[backends[0]]}")


if __name__ == "__main__":
    main()
