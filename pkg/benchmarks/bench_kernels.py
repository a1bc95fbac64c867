"""Compare the compiled kernels with the numpy fallback, and the fast trace path with the naive one.

Usage: python3 benchmarks/bench_kernels.py [--max-w 8] [--repeats 5]
"""

import argparse
import time

import numpy as np

from spdecomp import _backend
from spdecomp.decomposer import _bad_rows, decompose_group
from spdecomp.matcore import haar_random


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-w", type=int, default=8)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled extension not available; timing the numpy fallback only")
    names = sorted(backends)
    header = f"{'w':>2} {'kernel':<20}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'numpy/cmp':>11}"
    print(header)
    for w in range(1, args.max_w + 1):
        n = 2**w
        U = np.ascontiguousarray(haar_random(n, w))
        dec = decompose_group(U, residual=False)
        bad, wts = _bad_rows(dec), np.ascontiguousarray(dec.weights)
        kernels = {
            "traces_fast": lambda m: m.traces_fast(U),
            "traces_naive": lambda m: m.traces_naive(U),
            "weighted_signed_sum": lambda m: m.weighted_signed_sum(n, bad, wts),
        }
        for kname, call in kernels.items():
            if kname == "traces_naive" and w > 9:
                continue
            times = {b: best_of(lambda: call(backends[b]), args.repeats) for b in names}
            row = f"{w:>2} {kname:<20}" + "".join(f"{times[b] * 1e3:>10.3f}ms" for b in names)
            if len(names) == 2:
                row += f"{times['numpy'] / times['compiled']:>10.1f}x"
            print(row)
    print()
    print("fast vs naive trace table (active backend:", "compiled" if _backend.COMPILED else "numpy", end=")\n")
    for w in range(1, args.max_w + 1):
        U = np.ascontiguousarray(haar_random(2**w, 100 + w))
        tf = best_of(lambda: _backend.traces_fast(U), args.repeats)
        tn = best_of(lambda: _backend.traces_naive(U), args.repeats)
        print(f"w={w}: fast {tf * 1e3:8.3f} ms  naive {tn * 1e3:8.3f} ms  ratio {tn / tf:6.1f}x")


if __name__ == "__main__":
    main()
