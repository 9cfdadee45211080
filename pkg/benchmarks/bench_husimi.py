"""Benchmark the Husimi evaluation kernel: numba JIT versus pure numpy.

Usage:
    python3 benchmarks/bench_husimi.py [--samples N] [--repeats R]

The kernel dominates every Monte-Carlo estimate, so this is the number that
decides end-to-end runtime.  The numpy path is always available and is what
SPINPHASE_NO_NUMBA=1 selects at import time.
"""

import argparse
import time

import numpy as np

from spinphase.kernels import numpy_backend
from spinphase.phasespace import sample_chunk
from spinphase.qstate import AmplitudeDampingFamily, build_ad_state


def bench(fn, args, repeats):
    fn(*args)  # warm up (JIT compile / cache touch)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rho = build_ad_state(
        AmplitudeDampingFamily((0.1, 0.2, 0.1, 0.6), alpha=0.02, beta=0.15, gamma=0.02)
    )
    matrix = np.ascontiguousarray(rho.matrix)
    angles = sample_chunk(seed=0, chunk_index=0, n=args.samples)

    rows = [("numpy", numpy_backend.husimi_batch)]
    try:
        from spinphase.kernels import numba_backend

        rows.append(("numba", numba_backend.husimi_batch))
    except ImportError:
        print("numba unavailable, benchmarking the numpy path only")

    results = {}
    for name, fn in rows:
        results[name] = bench(fn, (matrix, *angles), args.repeats)

    print(f"husimi_batch, {args.samples:,} samples, best of {args.repeats}:")
    for name, seconds in results.items():
        rate = args.samples / seconds / 1e6
        print(f"  {name:>6}: {seconds * 1e3:8.1f} ms  ({rate:6.1f} Msamples/s)")
    if "numba" in results:
        print(f"  speedup: {results['numpy'] / results['numba']:.1f}x")


if __name__ == "__main__":
    main()
