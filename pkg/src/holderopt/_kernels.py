"""Bulk numeric kernels with a numba path and a pure-numpy fallback.

The numba versions are used when numba imports cleanly and the environment
variable ``HOLDEROPT_DISABLE_NUMBA`` is unset (or ``0``). Both paths are
always importable as ``<name>_numba`` / ``<name>_numpy`` so they can be
compared directly.
"""
import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

_DISABLED = os.environ.get("HOLDEROPT_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}
USE_NUMBA = HAS_NUMBA and not _DISABLED


# ---------------------------------------------------------------- numpy path


def distances_to_centers_numpy(points, centers):
    """Euclidean distance from every point (m, n) to every center (k, n) -> (m, k)."""
    diff = points[:, None, :] - centers[None, :, :]
    return np.sqrt(np.einsum("mkn,mkn->mk", diff, diff))


def count_overlapping_pairs_numpy(centers, edges, rel_tol=1e-9):
    """Number of box pairs whose interiors intersect.

    Two boxes share interior iff on every axis ``|c_i - c_j| < (e_i + e_j)``;
    the relative tolerance keeps boxes that merely touch from counting.
    """
    k = centers.shape[0]
    count = 0
    # row blocks keep the (block, k, n) temporaries bounded
    block = max(1, 2_000_000 // max(1, k * centers.shape[1]))
    for start in range(0, k, block):
        stop = min(k, start + block)
        gap = np.abs(centers[start:stop, None, :] - centers[None, :, :])
        reach = (edges[start:stop, None, :] + edges[None, :, :]) * (1.0 - rel_tol)
        overlap = np.all(gap < reach, axis=2)
        rows = np.arange(start, stop)[:, None]
        cols = np.arange(k)[None, :]
        count += int(np.count_nonzero(overlap & (cols > rows)))
    return count


def holder_ratio_max_numpy(x, y, fx, fy, alpha):
    """max |f(x)-f(y)| / ||x-y||^alpha over paired rows; coincident pairs ignored."""
    dist = np.sqrt(np.sum((x - y) ** 2, axis=1))
    keep = dist > 0.0
    if not np.any(keep):
        return 0.0
    return float(np.max(np.abs(fx[keep] - fy[keep]) / dist[keep] ** alpha))


def prefix_power_sums_numpy(norms, beta):
    """Running sums of norms**beta."""
    return np.cumsum(norms**beta)


def concave_gap_grid_max_numpy(C, C0, alpha, D, m):
    """max over an m-point uniform grid of [0, D] of C*d**alpha - C0*d."""
    d = np.linspace(0.0, D, m)
    return float(np.max(C * d**alpha - C0 * d))


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @njit(cache=True)
    def distances_to_centers_numba(points, centers):
        m, n = points.shape
        k = centers.shape[0]
        out = np.empty((m, k))
        for i in range(m):
            for j in range(k):
                acc = 0.0
                for a in range(n):
                    d = points[i, a] - centers[j, a]
                    acc += d * d
                out[i, j] = np.sqrt(acc)
        return out

    @njit(cache=True)
    def count_overlapping_pairs_numba(centers, edges, rel_tol=1e-9):
        k, n = centers.shape
        count = 0
        for i in range(k):
            for j in range(i + 1, k):
                inside = True
                for a in range(n):
                    if abs(centers[i, a] - centers[j, a]) >= (edges[i, a] + edges[j, a]) * (1.0 - rel_tol):
                        inside = False
                        break
                if inside:
                    count += 1
        return count

    @njit(cache=True)
    def holder_ratio_max_numba(x, y, fx, fy, alpha):
        best = 0.0
        m, n = x.shape
        for i in range(m):
            acc = 0.0
            for a in range(n):
                d = x[i, a] - y[i, a]
                acc += d * d
            if acc > 0.0:
                r = abs(fx[i] - fy[i]) / np.sqrt(acc) ** alpha
                if r > best:
                    best = r
        return best

    @njit(cache=True)
    def prefix_power_sums_numba(norms, beta):
        out = np.empty(norms.shape[0])
        acc = 0.0
        for i in range(norms.shape[0]):
            acc += norms[i] ** beta
            out[i] = acc
        return out

    @njit(cache=True)
    def concave_gap_grid_max_numba(C, C0, alpha, D, m):
        best = -np.inf
        step = D / (m - 1)
        for i in range(m):
            d = i * step if i < m - 1 else D
            v = C * d**alpha - C0 * d
            if v > best:
                best = v
        return best

else:  # pragma: no cover
    distances_to_centers_numba = distances_to_centers_numpy
    count_overlapping_pairs_numba = count_overlapping_pairs_numpy
    holder_ratio_max_numba = holder_ratio_max_numpy
    prefix_power_sums_numba = prefix_power_sums_numpy
    concave_gap_grid_max_numba = concave_gap_grid_max_numpy


# numba only wins on the pairwise loops; numpy's vectorized pow is faster for
# the elementwise power kernels (see benchmarks/bench_kernels.py).
if USE_NUMBA:
    distances_to_centers = distances_to_centers_numba
    count_overlapping_pairs = count_overlapping_pairs_numba
else:
    distances_to_centers = distances_to_centers_numpy
    count_overlapping_pairs = count_overlapping_pairs_numpy
holder_ratio_max = holder_ratio_max_numpy
prefix_power_sums = prefix_power_sums_numpy
concave_gap_grid_max = concave_gap_grid_max_numpy


def backend():
    return "numba" if USE_NUMBA else "numpy"
