"""Compare the numba and pure-numpy paths of the two hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--n 12] [--N 7]

Both paths are timed in the same process through their explicit entry
points; the first numba call (compilation) is excluded.
"""

import argparse
import time

import numpy as np

from quiddities import counting, kernels, mat2
from quiddities.ring import make_ring


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def dp_run(step, ring, n):
    idx = counting.sl2_index(ring)
    trans = counting._transitions(ring)
    v = np.zeros(len(idx), dtype=np.int64)
    v[idx.index(mat2.identity(ring))] = 1
    for _ in range(n):
        v = step(v, trans)
    return v


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--n", type=int, default=12, help="tuple length for the dp")
    ap.add_argument("--N", type=int, default=7, help="modulus for the search")
    ap.add_argument("--ring", default="zmod:16", help="ring for the dp")
    args = ap.parse_args()

    ring = make_ring(args.ring)
    kernels.dp_step_numba(np.zeros(1, np.int64), np.zeros((1, 1), np.int64))
    t_nb, v_nb = best_of(lambda: dp_run(kernels.dp_step_numba, ring, args.n), args.repeat)
    t_np, v_np = best_of(lambda: dp_run(kernels.dp_step_numpy, ring, args.n), args.repeat)
    assert (v_nb == v_np).all()
    print(f"dp_step  {ring} n={args.n}: numba {t_nb * 1e3:8.2f} ms  numpy {t_np * 1e3:8.2f} ms  "
          f"ratio {t_np / t_nb:6.1f}x")

    empty = np.zeros(0, np.int64)
    max_len = 16
    kernels.search_numba(args.N, empty, max_len)
    t_nb, r_nb = best_of(lambda: kernels.search_numba(args.N, empty, max_len), args.repeat)
    t_py, r_py = best_of(lambda: kernels.search_python(args.N, empty, max_len), 1)
    assert len(r_nb[0]) == len(r_py[0]) and r_nb[1] == r_py[1]
    print(f"search   Z/{args.N}Z max_len={max_len}: numba {t_nb * 1e3:8.2f} ms  "
          f"interpreted {t_py * 1e3:8.2f} ms  ratio {t_py / t_nb:6.1f}x")


if __name__ == "__main__":
    main()
