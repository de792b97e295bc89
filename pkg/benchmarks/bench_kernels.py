"""Timing comparison of the compiled and pure-numpy kernel paths.

Run as a script: ``python benchmarks/bench_kernels.py [--repeat N]``.
Each kernel is warmed once (JIT compilation happens there), then timed
over the best of N repeats on a representative workload.  When numba is
unavailable or disabled via MOSAICDENSITY_NO_NUMBA the jit column shows
a dash.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mosaicdensity import _kernels


def best_of(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    tau = np.abs(rng.normal(size=(200_000, 6)))
    p = rng.uniform(-1.0, 1.0, size=(50_000, 4, 3))
    p -= p.mean(axis=1, keepdims=True)
    v = np.ascontiguousarray(p)
    beta = rng.uniform(0.1, 1.0, size=(50_000, 5))
    seg0 = rng.uniform(-30, 30, size=(500_000, 3))
    seg1 = seg0 + rng.uniform(-1, 1, size=(500_000, 3))

    cases = [
        ("volume_poly_many", (tau,)),
        ("simplex_grid_scan", (2.0, 60, 1.0)),
        ("pair_scalars_many", (v,)),
        ("type4_functional_many", (v, beta, 1.0, 1.0)),
        ("segment_ball_clip", (seg0, seg1, 25.0)),
    ]

    print(f"numba enabled: {_kernels.NUMBA_ENABLED}")
    print(f"{'kernel':24s} {'numpy':>12s} {'jit':>12s} {'speedup':>9s}")
    for name, call_args in cases:
        np_fn = getattr(_kernels, f"{name}_numpy")
        np_fn(*call_args)  # warm caches
        t_np = best_of(np_fn, call_args, args.repeat)
        jit_fn = getattr(_kernels, f"{name}_jit")
        if jit_fn is None:
            print(f"{name:24s} {t_np * 1e3:10.2f}ms {'-':>12s} {'-':>9s}")
            continue
        jit_fn(*call_args)  # compile + warm
        t_jit = best_of(jit_fn, call_args, args.repeat)
        print(
            f"{name:24s} {t_np * 1e3:10.2f}ms {t_jit * 1e3:10.2f}ms {t_np / t_jit:8.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
