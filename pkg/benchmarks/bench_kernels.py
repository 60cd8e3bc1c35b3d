"""Compare the numba and numpy variants of each hot kernel.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from fidbounds import kernels
from fidbounds.oracle import angle_grid
from fidbounds.sampling import mixed_rank_ensemble, random_density_matrix


def best_of(fn, repeat):
    fn()  # warm-up, includes JIT compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--grid", type=int, default=24)
    parser.add_argument("--batch", type=int, default=20000)
    args = parser.parse_args()

    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rho = random_density_matrix(1, 4)
    a, b, c = angle_grid(args.grid)
    rhos, _ = mixed_rank_ensemble(2, args.batch)
    cases = [
        (f"overlap grid ({args.grid}^3 points)",
         lambda: kernels._overlap_grid_numba(rho, a, b, c),
         lambda: kernels._overlap_grid_numpy(rho, a, b, c)),
        (f"correlation batch ({args.batch} states)",
         lambda: kernels._correlation_batch_numba(rhos, kernels.PAULI_PRODUCTS),
         lambda: kernels._correlation_batch_numpy(rhos, kernels.PAULI_PRODUCTS)),
        (f"partial transpose batch ({args.batch} states)",
         lambda: kernels._partial_transpose_batch_numba(rhos),
         lambda: kernels._partial_transpose_batch_numpy(rhos)),
    ]
    print(f"{'kernel':<40} {'numba [ms]':>12} {'numpy [ms]':>12} {'speedup':>8}")
    for name, fast, slow in cases:
        np.testing.assert_allclose(fast(), slow(), atol=1e-13)
        tf, ts = best_of(fast, args.repeat), best_of(slow, args.repeat)
        print(f"{name:<40} {tf * 1e3:12.3f} {ts * 1e3:12.3f} {ts / tf:8.1f}x")


if __name__ == "__main__":
    main()
