"""Time the numba kernels against their numpy twins on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 5] [--size 2000]

Both paths are imported directly, so the HOLDEROPT_DISABLE_NUMBA flag does
not matter here. Each kernel is called once before timing so numba's JIT
compilation is excluded. Outputs from the two paths are compared too.
"""
import argparse
import timeit

import numpy as np

from holderopt import _kernels as K


def cases(size, rng):
    k = size
    centers = rng.random((k, 3))
    edges = np.full((k, 3), 1e-3)
    x, y = rng.random((50 * size, 3)), rng.random((50 * size, 3))
    fx, fy = np.linalg.norm(x - 0.5, axis=1) ** 0.5, np.linalg.norm(y - 0.5, axis=1) ** 0.5
    norms = rng.random(500 * size)
    return {
        "distances_to_centers": ((rng.random((size, 3)), centers), {}),
        "count_overlapping_pairs": ((centers, edges), {}),
        "holder_ratio_max": ((x, y, fx, fy, 0.5), {}),
        "prefix_power_sums": ((norms, 0.5), {}),
        "concave_gap_grid_max": ((1.0, 1.0, 0.5, np.sqrt(2.0), 1_000_000), {}),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not K.HAS_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<26} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}  agree")
    for name, (a, kw) in cases(args.size, rng).items():
        f_np, f_nb = getattr(K, name + "_numpy"), getattr(K, name + "_numba")
        r_np, r_nb = f_np(*a, **kw), f_nb(*a, **kw)
        agree = np.allclose(r_np, r_nb, rtol=1e-12, atol=1e-12)
        t_np = min(timeit.repeat(lambda: f_np(*a, **kw), number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(lambda: f_nb(*a, **kw), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<26} {t_np:>10.2f} {t_nb:>10.2f} {t_np / t_nb:>7.1f}x  {agree}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
