"""Test objectives on [0, 1]^n with certified Hölder parameters.

Every objective carries its Hölder constant ``C`` and exponent ``alpha`` such
that ``|f(x) - f(y)| <= C * ||x - y||**alpha`` on the unit cube, plus its
known minimum where one exists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import _kernels

# 1/sqrt(5): irrational, so never a dyadic query center
DEFAULT_NEEDLE_COORD = 1.0 / math.sqrt(5.0)

MULTI_BASIN_CENTERS = ((0.2, 0.2), (0.8, 0.3), (0.5, 0.9))


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    n: int
    func: Callable[[np.ndarray], float]
    C: float
    alpha: float
    known_min_value: Optional[float] = None
    known_minimizer: Optional[tuple] = None
    batch: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    def __call__(self, x) -> float:
        return float(self.func(np.asarray(x, dtype=float)))

    def eval_batch(self, X) -> np.ndarray:
        """Evaluate every row of an (m, n) array."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.batch is not None:
            return np.asarray(self.batch(X), dtype=float)
        return np.array([self(x) for x in X])


def _center_vector(c, n):
    if c is None:
        return np.full(n, 0.5)
    arr = np.asarray(c, dtype=float).reshape(-1)
    if arr.size == 1:
        arr = np.full(n, float(arr[0]))
    if arr.size != n:
        raise ValueError(f"point has {arr.size} coordinates, expected {n}")
    return arr


def constant(n: int, value: float = 0.0, C: float = 1.0, alpha: float = 0.5) -> ObjectiveSpec:
    """f = value everywhere; any (C, alpha) certifies it."""
    return ObjectiveSpec(
        name="constant",
        n=n,
        func=lambda x: value,
        C=C,
        alpha=alpha,
        known_min_value=float(value),
        known_minimizer=None,
        batch=lambda X: np.full(X.shape[0], float(value)),
    )


def holder_norm(n: int, C: float = 1.0, alpha: float = 0.5, c=None) -> ObjectiveSpec:
    """f(x) = C * ||x - c||**alpha, minimum 0 at c."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    if C <= 0:
        raise ValueError("C must be positive")
    center = _center_vector(c, n)
    if np.any(center < 0) or np.any(center > 1):
        raise ValueError("center must lie in the unit cube")
    centers = center[None, :]

    def func(x):
        return C * math.sqrt(float(np.dot(x - center, x - center))) ** alpha

    def batch(X):
        return C * _kernels.distances_to_centers(X, centers)[:, 0] ** alpha

    return ObjectiveSpec(
        name=f"holder_norm[n={n},C={C:g},alpha={alpha:g}]",
        n=n,
        func=func,
        C=C,
        alpha=alpha,
        known_min_value=0.0,
        known_minimizer=tuple(center.tolist()),
        batch=batch,
    )


def multi_basin(n: int = 2, C: float = 1.0, alpha: float = 0.5, centers=None) -> ObjectiveSpec:
    """f(x) = min_j C * ||x - c_j||**alpha; a minimum of C-Hölder functions is C-Hölder."""
    pts = np.asarray(MULTI_BASIN_CENTERS if centers is None else centers, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != n:
        raise ValueError(f"centers must have shape (k, {n})")

    def func(x):
        d = np.sqrt(np.sum((pts - x) ** 2, axis=1))
        return C * float(d.min()) ** alpha

    def batch(X):
        return C * _kernels.distances_to_centers(X, pts).min(axis=1) ** alpha

    return ObjectiveSpec(
        name=f"multi_basin[n={n},C={C:g},alpha={alpha:g}]",
        n=n,
        func=func,
        C=C,
        alpha=alpha,
        known_min_value=0.0,
        known_minimizer=tuple(pts[0].tolist()),
        batch=batch,
    )


def needle(n: int, C: float = 1.0, alpha: float = 0.5, x_star=None, eps: float = 0.001) -> ObjectiveSpec:
    """Zero everywhere except a Hölder dip of depth C*eps**alpha inside the eps-ball.

    f(x) = C * (||x - x_star||**alpha - eps**alpha) for ||x - x_star|| <= eps.
    """
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must lie in (0, 1]")
    star = _center_vector(DEFAULT_NEEDLE_COORD if x_star is None else x_star, n)
    depth = eps**alpha
    star_row = star[None, :]

    def func(x):
        r = math.sqrt(float(np.dot(x - star, x - star)))
        return C * (r**alpha - depth) if r <= eps else 0.0

    def batch(X):
        r = _kernels.distances_to_centers(X, star_row)[:, 0]
        return np.where(r <= eps, C * (r**alpha - depth), 0.0)

    return ObjectiveSpec(
        name=f"needle[n={n},C={C:g},alpha={alpha:g},eps={eps:g}]",
        n=n,
        func=func,
        C=C,
        alpha=alpha,
        known_min_value=-C * depth,
        known_minimizer=tuple(star.tolist()),
        batch=batch,
    )


def rescale_box(inner: ObjectiveSpec, lows, highs) -> ObjectiveSpec:
    """Pull an objective defined on the box [lows, highs] back to [0, 1]^n.

    g(u) = f(lows + u * (highs - lows)); the Hölder constant grows by
    (longest side)**alpha.
    """
    lo = np.asarray(lows, dtype=float).reshape(-1)
    hi = np.asarray(highs, dtype=float).reshape(-1)
    if lo.shape != (inner.n,) or hi.shape != (inner.n,):
        raise ValueError("box bounds must match the objective dimension")
    if np.any(hi <= lo):
        raise ValueError("box sides must have positive length")
    width = hi - lo
    f = inner.func

    def func(u):
        return f(lo + u * width)

    batch = None
    if inner.batch is not None:
        inner_batch = inner.batch

        def batch(U):
            return inner_batch(lo + U * width)

    minimizer = None
    if inner.known_minimizer is not None:
        minimizer = tuple(((np.asarray(inner.known_minimizer) - lo) / width).tolist())
    return replace(
        inner,
        name=f"{inner.name}@box",
        func=func,
        batch=batch,
        C=inner.C * float(width.max()) ** inner.alpha,
        known_minimizer=minimizer,
    )


def suite() -> list[ObjectiveSpec]:
    """The certified objective suite used by verification and acceptance runs."""
    centers = (0.3, 0.65, 0.45)
    out = [constant(2)]
    for n in (1, 2, 3):
        for alpha in (0.3, 0.5, 0.8):
            out.append(holder_norm(n, 1.0, alpha, centers[:n]))
    out.append(needle(1, 1.0, 0.5, eps=0.05))
    out.append(needle(2, 1.0, 0.5, eps=0.05))
    out.append(needle(2, 1.0, 0.5, eps=0.001))
    out.append(multi_basin(2, 1.0, 0.5))
    return out


def holder_spot_check(spec: ObjectiveSpec, pairs: int = 10_000, seed: int = 0, tol: float = 1e-9) -> float:
    """Largest Hölder-inequality excess over random pairs (<= tol means pass).

    Half the pairs are uniform on the cube; the other half are short hops so
    the small-distance regime, where the exponent matters, is exercised too.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    n = spec.n
    x = rng.random((pairs, n))
    y = rng.random((pairs, n))
    half = pairs // 2
    hop = rng.normal(size=(half, n)) * 10.0 ** rng.uniform(-6, -1, size=(half, 1))
    y[:half] = np.clip(x[:half] + hop, 0.0, 1.0)
    fx = spec.eval_batch(x)
    fy = spec.eval_batch(y)
    ratio = _kernels.holder_ratio_max(x, y, fx, fy, spec.alpha)
    return float(ratio - spec.C)


def _parse_point(text: str, n: int):
    if text in ("center", "centre"):
        return np.full(n, 0.5)
    parts = [float(p) for p in text.split(";") if p]
    return _center_vector(parts, n)


def parse_objective(text: str, n: int) -> ObjectiveSpec:
    """Build an objective from ``name[:key=value,...]``.

    Names: ``constant`` (value, C, alpha), ``holder_norm`` (C, alpha, c),
    ``needle`` (C, alpha, eps, x_star), ``multi_basin`` (C, alpha; n must be 2).
    Point values are ``center``, a scalar broadcast to every axis, or
    ``;``-separated coordinates.
    """
    name, _, rest = text.partition(":")
    kwargs: dict = {}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"malformed objective parameter {item!r}")
        key = key.strip()
        value = value.strip()
        if key in ("c", "x_star"):
            kwargs[key] = _parse_point(value, n)
        else:
            kwargs[key] = float(value)
    builders = {
        "constant": constant,
        "holder_norm": holder_norm,
        "needle": needle,
        "multi_basin": multi_basin,
    }
    if name not in builders:
        raise ValueError(f"unknown objective {name!r}; choose from {sorted(builders)}")
    try:
        return builders[name](n, **kwargs)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None
