"""Time the numba kernels against their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Numba timings exclude the first (compiling) call.
"""

import argparse
import time

import numpy as np

from stegkit import _kernels
from stegkit._accel import NUMBA_AVAILABLE


def best_of(func, args, repeat):
    func(*args)  # warm-up / JIT
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def cases(rng):
    for n in (256, 1024, 4096):
        x = rng.normal(size=n)
        yield f"dct_direct N={n}", "dct_direct", (x, _kernels.cos_table(n), False)
    haar = np.array([1, 1]) / np.sqrt(2), np.array([1, -1]) / np.sqrt(2)
    for n in (65_536, 1_048_576):
        s = rng.normal(size=n)
        yield f"dwt_analyze N={n}", "dwt_analyze", (s, *haar)
        half = rng.normal(size=n // 2)
        yield f"dwt_synthesize N={n}", "dwt_synthesize", (half, half.copy(), *haar)
    px = 645 * 645
    c = rng.integers(0, 256, px, dtype=np.uint8)
    m = rng.integers(0, 256, px, dtype=np.uint8)
    yield "embed_plane 645x645", "embed_plane", (c, m, 4)
    yield "histogram 645x645", "histogram", (c, 256)
    bits = rng.integers(0, 2, 3 * 300_000, dtype=np.uint8)
    yield "majority r=3 300k bits", "majority", (bits, 3)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<28}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for label, name, kargs in cases(rng):
        slow = best_of(getattr(_kernels, name + "_numpy"), kargs, args.repeat)
        fast = best_of(getattr(_kernels, name + "_numba"), kargs, args.repeat)
        print(f"{label:<28}{slow * 1e3:>12.3f}{fast * 1e3:>12.3f}{slow / fast:>9.1f}x")


if __name__ == "__main__":
    main()
