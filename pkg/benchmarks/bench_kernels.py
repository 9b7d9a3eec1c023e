"""Compare the compiled series kernels against the pure-numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--sizes 64,256,1024] [--repeats 5]
"""

import argparse
import time

import numpy as np

from csymcomp import _kernels_py as kpy
from csymcomp.hardy import series_of_mobius
from csymcomp.mobius import involution

try:
    from csymcomp import _kernels as kc
except ImportError:
    kc = None


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="64,256,1024")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if kc is None:
        print("compiled kernels unavailable; benchmarking the fallback only")

    header = f"{'kernel':<16}{'N':>6}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    rng = np.random.default_rng(0)
    for n in sizes:
        phi = series_of_mobius(involution(0.4 + 0.2j), n).coeffs
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        h = f.copy()
        h[0] = 2.0
        cases = [
            ("cauchy_product", (f, g, n)),
            ("power_columns", (phi, n)),
            ("reciprocal", (h, n)),
        ]
        for name, call_args in cases:
            t_py = time_call(getattr(kpy, name), *call_args, repeats=args.repeats)
            if kc is not None:
                t_c = time_call(getattr(kc, name), *call_args, repeats=args.repeats)
                print(f"{name:<16}{n:>6}{t_py:>12.6f}{t_c:>12.6f}{t_py / t_c:>9.1f}x")
            else:
                print(f"{name:<16}{n:>6}{t_py:>12.6f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
