"""Reference strategies: uniform cell-center grid and seeded uniform random search."""
import itertools

import numpy as np

from .optimizer import AlgoParams, Trace


def _grid_side(n, T):
    k = 1
    while (k + 1) ** n <= T:
        k += 1
    return k


def _trace(objective, points, edges, method, T, meta):
    n = points.shape[1]
    values = objective.eval_batch(points)
    return Trace(
        params=AlgoParams.explicit(n, T, 0.0),
        x_theta=points.copy(),
        x_omega=points,
        values=values,
        edges=edges,
        scores=np.full(len(values), np.nan),
        codes=[""] * len(values),
        objective_name=objective.name,
        known_min=objective.known_min_value,
        method=method,
        meta=meta,
    )


def grid_search(objective, T: int) -> Trace:
    """Evaluate the k^n cell centers of [0,1]^n, k the largest integer with k^n <= T.

    Points come in lexicographic order (first axis slowest). Each record's edge
    vector is the cell half-width 1/(2k).
    """
    if T < 1:
        raise ValueError("T must be at least 1")
    n = objective.n
    k = _grid_side(n, T)
    ticks = (2 * np.arange(k) + 1) / (2.0 * k)
    points = np.array(list(itertools.product(ticks, repeat=n)), dtype=float).reshape(-1, n)
    edges = np.full_like(points, 1.0 / (2 * k))
    return _trace(objective, points, edges, "grid", T, {"k": k})


def random_search(objective, T: int, seed: int = 0) -> Trace:
    """T i.i.d. uniform points drawn from numpy's Philox4x32-10 counter-based generator."""
    if T < 1:
        raise ValueError("T must be at least 1")
    rng = np.random.Generator(np.random.Philox(seed))
    points = rng.random((T, objective.n))
    edges = np.full_like(points, np.nan)
    return _trace(objective, points, edges, "random", T, {"seed": seed})
