"""Compare the compiled and pure-Python number-theory kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each kernel runs on identical inputs in both backends; results are
checked for equality before timings are reported.
"""

import argparse
import time

import numpy as np

from osc import kernels


def best_of(repeat, fn):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def cases(quick):
    scale = 10 if quick else 1
    lo = 10**12
    batch = np.arange(lo, lo + 200_000 // scale, dtype=np.uint64)
    small = np.arange(0, 1_000_000 // scale, dtype=np.uint64)
    odd128 = np.arange(1, 128, 2, dtype=np.uint64)
    none128 = np.zeros(odd128.size, dtype=np.uint8)

    def mask(values):
        def run(impl):
            out = np.zeros(values.size, dtype=np.uint8)
            impl.fill_prime_mask(values, out)
            return int(out.sum())
        return run

    return [
        (f"prime mask [0, {small.size})", mask(small)),
        (f"prime mask [1e12, 1e12+{batch.size})", mask(batch)),
        ("isolated prime 5 + 32k, radius 32", lambda impl: impl.find_isolated(5, 32, 32, 10**6)),
        ("isolated prime 1 + 64k, radius 64", lambda impl: impl.find_isolated(1, 64, 64, 10**6)),
        ("prime-free block 128k + odd", lambda impl: impl.constellation(128, odd128, none128, 10**6)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="inputs ten times smaller")
    args = parser.parse_args()

    backends = kernels.available_backends()
    impls = {name: kernels.load_backend(name) for name in backends}
    print(f"backends: {', '.join(backends)} (default {kernels.BACKEND})")
    header = f"{'kernel':<40}" + "".join(f"{name:>12}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, fn in cases(args.quick):
        times, results = [], []
        for name in backends:
            t, r = best_of(args.repeat, lambda: fn(impls[name]))
            times.append(t)
            results.append(r)
        if len(set(results)) != 1:
            raise SystemExit(f"backends disagree on {label}: {results}")
        row = f"{label:<40}" + "".join(f"{t * 1000:>10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
