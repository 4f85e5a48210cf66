"""Compare the numba and numpy subset-status kernels.

    python3 benchmarks/bench_kernels.py --samples 200000 --repeat 3
"""
import argparse
import time

import numpy as np

from morseposet import kernels
from morseposet.classify import labels_from_status
from morseposet.sampling import sample_tetrahedra


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    cases = {"tetrahedra (N=4, n=3)": sample_tetrahedra(args.samples, args.seed)}
    rng = np.random.default_rng(args.seed)
    cases["planar sets (N=7, n=2)"] = rng.normal(size=(args.samples // 4, 7, 2))

    print(f"{'case':<24} {'backend':<7} {'configs':>8} {'best s':>8} {'configs/s':>11}")
    for name, pts in cases.items():
        results = {}
        for backend in kernels.BACKENDS:
            kernels.subset_status(pts[:16], 1e-9, backend=backend)  # JIT warm-up
            t, (status, radius) = best_time(lambda: kernels.subset_status(pts, 1e-9, backend=backend), args.repeat)
            results[backend] = status
            print(f"{name:<24} {backend:<7} {len(pts):>8} {t:>8.3f} {len(pts) / t:>11.0f}")
        if len(results) == 2:
            diff = int(np.any(results["numba"] != results["numpy"], axis=1).sum())
            print(f"{'':<24} status rows differing between backends: {diff}")
        if pts.shape[1:] == (4, 3):
            labels = labels_from_status(results[kernels.BACKENDS[0]])
            print(f"{'':<24} label codes seen: {sorted(set(labels.tolist()))}")


if __name__ == "__main__":
    main()
