"""Compiled against pure-Python adjointness kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Kernel rows time allowed_matrix and first_violation on random int64
tables. The end-to-end row enumerates every hom-set of Chu(2) on carriers
of size <= 2 in a fresh interpreter per backend.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from chukit import _kernels_py

try:
    from chukit import _kernels
except ImportError:
    _kernels = None

SHAPES = [(2, 2, 2, 2, 8), (3, 3, 3, 3, 27), (4, 4, 4, 4, 256), (6, 6, 6, 6, 1000)]

E2E = ("from chukit.chu import chu_category, chu_enumerate_hom; from chukit.setoid import TWO; "
       "C = chu_category(TWO, max_size=2); "
       "print(sum(len(chu_enumerate_hom(s, t)) for s in C.objects for t in C.objects))")


def tables(rng, A, B, C, D, K, gamma=2):
    lhs = rng.integers(gamma, size=(A, B), dtype=np.int64)
    g = rng.integers(gamma, size=(C, D), dtype=np.int64)
    fwd = rng.integers(C, size=(K, A), dtype=np.int64)
    bwd = rng.integers(B, size=D, dtype=np.int64)
    return lhs, g, fwd, bwd


def best(fn, repeat):
    t = timeit.Timer(fn)
    n, _ = t.autorange()
    return min(t.repeat(repeat, n)) / n


def end_to_end(pure):
    env = dict(os.environ)
    env.pop("CHUKIT_PURE_PYTHON", None)
    if pure:
        env["CHUKIT_PURE_PYTHON"] = "1"
    code = f"import time; s = time.perf_counter(); {E2E}; print(time.perf_counter() - s)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    return int(out[0]), float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the pure-Python backend is available")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<16}{'shape A,B,C,D,K':<20}{'python us':>12}{'compiled us':>14}{'speedup':>10}")
    for shape in SHAPES:
        lhs, g, fwd, bwd = tables(rng, *shape)
        runs = {
            "allowed_matrix": lambda m: m.allowed_matrix(lhs, g, fwd),
            "first_violation": lambda m: m.first_violation(lhs, g, fwd[0], bwd),
        }
        for name, call in runs.items():
            py = best(lambda: call(_kernels_py), args.repeat) * 1e6
            if _kernels is None:
                print(f"{name:<16}{str(shape):<20}{py:>12.1f}{'-':>14}{'-':>10}")
                continue
            assert np.array_equal(np.asarray(call(_kernels_py), dtype=object),
                                  np.asarray(call(_kernels), dtype=object))
            cc = best(lambda: call(_kernels), args.repeat) * 1e6
            print(f"{name:<16}{str(shape):<20}{py:>12.1f}{cc:>14.1f}{py / cc:>9.1f}x")
    n_py, t_py = end_to_end(pure=True)
    print(f"\nChu(2) hom-sets, carriers <= 2: {n_py} transforms")
    print(f"  python   {t_py:8.3f} s")
    if _kernels is not None:
        n_cc, t_cc = end_to_end(pure=False)
        assert n_cc == n_py
        print(f"  compiled {t_cc:8.3f} s  ({t_py / t_cc:.1f}x)")


if __name__ == "__main__":
    main()
