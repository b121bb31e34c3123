"""Time the numba and numpy kernel backends side by side.

    python benchmarks/bench_kernels.py [--sizes 256,1024,2048] [--repeat 5]

Both backends are imported regardless of RIESZ_LAB_NUMBA; the flag only
selects which one the library calls by default.
"""
import argparse
import time

import numpy as np

from riesz_lab import _accel
from riesz_lab.geometry import NAMED_SETS


def best_of(fn, repeat):
    fn()  # warm-up (numba compiles here)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="256,1024,2048")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--s", type=float, default=1.5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    s = args.s
    A = NAMED_SETS["sphere2"]
    print(f"sphere2, s={s}, best of {args.repeat}; default backend: {_accel.BACKEND}")
    print(f"{'kernel':<22}{'N':>6}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for N in (int(v) for v in args.sizes.split(",")):
        X = A.sample(N, seed=0)
        Y = A.sample(4096, seed=1)
        cases = [
            ("pair_sum", lambda m: getattr(_accel, f"pair_sum_{m}")(X, s, False)),
            ("energy_and_gradient", lambda m: getattr(_accel, f"energy_and_gradient_{m}")(X, s, False)),
            ("potentials (4096 y)", lambda m: getattr(_accel, f"potentials_{m}")(Y, X, s, False)),
            ("prefix_min_dist", lambda m: getattr(_accel, f"prefix_min_dist_{m}")(X)),
        ]
        for name, call in cases:
            t_nb = best_of(lambda: call("nb"), args.repeat)
            t_np = best_of(lambda: call("np"), args.repeat)
            print(f"{name:<22}{N:>6}{1e3 * t_nb:>12.2f}{1e3 * t_np:>12.2f}{t_np / t_nb:>9.1f}x")
        e_nb = _accel.pair_sum_nb(X, s, False)
        e_np = _accel.pair_sum_np(X, s, False)
        print(f"{'  energy rel. diff':<22}{N:>6}{abs(e_nb - e_np) / abs(e_np):>12.2e}")


if __name__ == "__main__":
    main()
