"""Regret metrics and the numeric bounds the optimizer is guaranteed to meet."""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .frontier import dyadic_intervals
from .geometry import DomainSpec
from .optimizer import Trace, compute_C0


@dataclass(frozen=True)
class RegretReport:
    simple: float
    average: float
    cumulative: float
    per_step: np.ndarray


@dataclass(frozen=True)
class BoundReport:
    name: str
    measured: float
    bound: float
    satisfied: bool
    slack: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["satisfied"] = bool(d["satisfied"])
        return d


def check(name: str, measured: float, bound: float, rtol: float = 1e-9, atol: float = 0.0) -> BoundReport:
    """measured <= bound up to ``rtol * |bound| + atol``."""
    measured = float(measured)
    bound = float(bound)
    ok = measured <= bound + rtol * abs(bound) + atol
    return BoundReport(name, measured, bound, bool(ok), bound - measured)


def _f_min(trace: Trace, f_min):
    if f_min is None:
        f_min = trace.known_min
    if f_min is None:
        raise ValueError(f"objective {trace.objective_name!r} has no known minimum; regret is undefined")
    return float(f_min)


def regrets(trace: Trace, f_min: Optional[float] = None) -> RegretReport:
    f_min = _f_min(trace, f_min)
    per_step = trace.values - f_min
    cumulative = math.fsum(per_step)
    return RegretReport(
        simple=float(per_step.min()),
        average=cumulative / trace.T,
        cumulative=cumulative,
        per_step=per_step,
    )


def prefix_regrets(trace: Trace, f_min: Optional[float] = None) -> tuple[np.ndarray, np.ndarray]:
    """Simple and average regret after every query."""
    f_min = _f_min(trace, f_min)
    per_step = trace.values - f_min
    t = np.arange(1, trace.T + 1)
    return np.minimum.accumulate(per_step), np.cumsum(per_step) / t


# ------------------------------------------------------------------ epsilon_0


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly inside (0, 1), got {alpha}")


def epsilon0_peak(C0: float, C: float, alpha: float, D: float) -> tuple[float, float]:
    """(max, argmax) of C*d**alpha - C0*d over d in [0, D], floored at 0.

    The expression is concave in d, so the maximum sits at the stationary
    point (C0/(C*alpha))**(1/(alpha-1)) when that lies inside [0, D] and at D
    otherwise.
    """
    _check_alpha(alpha)
    if C < 0 or C0 < 0 or D <= 0:
        raise ValueError("need C >= 0, C0 >= 0, D > 0")
    if C == 0:
        return 0.0, 0.0
    if C0 == 0:
        d = D
    else:
        d = min((C0 / (C * alpha)) ** (1.0 / (alpha - 1.0)), D)
    return max(0.0, C * d**alpha - C0 * d), d


def epsilon0_exact(C0: float, C: float, alpha: float, D: float) -> float:
    return epsilon0_peak(C0, C, alpha, D)[0]


def epsilon0_bound(C0: float, C: float, alpha: float) -> float:
    """Closed-form upper bound C0**(alpha/(alpha-1)) * C**(-1/(alpha-1))."""
    _check_alpha(alpha)
    if C0 <= 0 or C <= 0:
        raise ValueError("need C0 > 0 and C > 0")
    return C0 ** (alpha / (alpha - 1.0)) * C ** (-1.0 / (alpha - 1.0))


def epsilon0_grid(C0: float, C: float, alpha: float, D: float, m: int = 1_000_000) -> float:
    """Brute-force maximum of C*d**alpha - C0*d on an m-point grid of [0, D]."""
    return max(0.0, float(_kernels.concave_gap_grid_max(float(C), float(C0), float(alpha), float(D), int(m))))


def theta_diameter(n: int) -> float:
    """Diameter of Theta, sqrt(sum_k theta**(2k)) for k = 0..n-1."""
    theta = 2.0 ** (1.0 / n)
    return math.sqrt(sum(theta ** (2 * k) for k in range(n)))


# ------------------------------------------------------------ edge-norm sums


def vt_sum_bound(beta: float, V: float, T: int, n: int) -> float:
    """theta^(n-beta)/(theta^(n-beta)-1) * V^beta * T^((n-beta)/n), theta = 2^(1/n)."""
    if not 0.0 < beta < n:
        raise ValueError(f"beta must lie in (0, n) = (0, {n}), got {beta}")
    if V <= 0 or T < 1:
        raise ValueError("need V > 0 and T >= 1")
    q = 2.0 ** ((n - beta) / n)
    return q / (q - 1.0) * V**beta * T ** ((n - beta) / n)


def vt_sum_worst(beta: float, V: float, T: int, n: int) -> float:
    """Largest possible sum of T edge norms**beta when norms decay by 2^(-1/n) per level.

    Fills levels 0..K-1 completely (2^i boxes of norm V 2^(-i/n)) and puts the
    remaining M = T - (2^K - 1) queries, 1 <= M <= 2^K, on level K.
    """
    if T < 1:
        raise ValueError("T must be at least 1")
    K = (T).bit_length() - 1  # 2^K <= T < 2^(K+1), so 1 <= M <= 2^K
    M = T - (2**K - 1)
    total = math.fsum(2**i * V**beta * 2.0 ** (-i * beta / n) for i in range(K))
    return total + M * V**beta * 2.0 ** (-K * beta / n)


def edge_power_prefix(trace: Trace, beta: float) -> np.ndarray:
    return _kernels.prefix_power_sums(np.ascontiguousarray(trace.edge_norms), float(beta))


def lemma4_report(trace: Trace, beta: float, rtol: float = 1e-12) -> BoundReport:
    """Every prefix sum of ||v_t||**beta against its bound; reports the tightest prefix.

    Uses the closed-form bound when beta < n and the exact worst-case level
    sum otherwise (the closed form is infinite at beta = n).
    """
    n = trace.params.n
    V = float(trace.edge_norms[0])
    sums = edge_power_prefix(trace, beta)
    t = np.arange(1, trace.T + 1)
    if beta < n:
        q = 2.0 ** ((n - beta) / n)
        bounds = q / (q - 1.0) * V**beta * t ** ((n - beta) / n)
        label = "bound"
    else:
        bounds = np.array([vt_sum_worst(beta, V, int(k), n) for k in t])
        label = "worst"
    i = int(np.argmin((bounds - sums) / bounds))
    ok = bool(np.all(sums <= bounds * (1.0 + rtol)))
    return BoundReport(f"lemma4[n={n},beta={beta:g},{label},T'={i + 1}]", float(sums[i]), float(bounds[i]), ok, float(bounds[i] - sums[i]))


def norm_decay_report(trace: Trace, rtol: float = 1e-12) -> BoundReport:
    """Max relative error of ||child edge|| = 2^(-1/n) ||parent edge|| over all queries.

    Every query after the first was split off an earlier query; its parent is
    the record whose code is the child's code minus the last bit.
    """
    n = trace.params.n
    norms = trace.edge_norms
    by_code = {code: norms[i] for i, code in enumerate(trace.codes)}
    factor = 2.0 ** (-1.0 / n)
    err = 0.0
    for i in range(1, trace.T):
        parent = by_code[trace.codes[i][:-1]]
        err = max(err, abs(norms[i] - factor * parent) / (factor * parent))
    return BoundReport(f"norm_decay[n={n}]", err, rtol, err <= rtol, rtol - err)


# ------------------------------------------------------------ regret bounds


def cumulative_regret_curves(trace: Trace, C: float, alpha: float, C0: float, eps0: float, f_min=None):
    """(measured, bound) cumulative regret after every prefix T' = 1..T."""
    f_min = _f_min(trace, f_min)
    n = trace.params.n
    theta = 2.0 ** (1.0 / n)
    measured = np.cumsum(trace.values - f_min)
    t = np.arange(1, trace.T + 1)
    bound = C0 * theta * edge_power_prefix(trace, 1.0) + C * edge_power_prefix(trace, alpha) + t * eps0
    return measured, bound


def _tightest(name, measured, bound, rtol):
    scale = np.maximum(np.abs(bound), 1e-300)
    i = int(np.argmin((bound - measured) / scale))
    ok = bool(np.all(measured <= bound + rtol * np.abs(bound)))
    return BoundReport(f"{name}[T'={i + 1}]", float(measured[i]), float(bound[i]), ok, float(bound[i] - measured[i]))


def cumulative_regret_bound(
    trace: Trace,
    C: float,
    alpha: float,
    C0: float,
    f_min: Optional[float] = None,
    D: Optional[float] = None,
    rtol: float = 1e-9,
) -> tuple[BoundReport, BoundReport]:
    """Cumulative regret vs C0*theta*sum||v_t|| + C*sum||v_t||^alpha + T*eps0 at every prefix.

    The first report uses the exact eps0 (over [0, D], default D = diameter of
    Theta), the second the closed-form eps0 bound. Each reports the prefix
    with the least relative slack.
    """
    if D is None:
        D = theta_diameter(trace.params.n)
    reports = []
    eps_exact = epsilon0_exact(C0, C, alpha, D)
    measured, bound = cumulative_regret_curves(trace, C, alpha, C0, eps_exact, f_min)
    reports.append(_tightest(f"cumulative_regret[{trace.objective_name},eps0=exact]", measured, bound, rtol))
    if C0 > 0:
        eps_closed = epsilon0_bound(C0, C, alpha)
        measured, bound = cumulative_regret_curves(trace, C, alpha, C0, eps_closed, f_min)
        reports.append(_tightest(f"cumulative_regret[{trace.objective_name},eps0=bound]", measured, bound, rtol))
    return tuple(reports)


def per_sample_regret_report(trace: Trace, C: float, alpha: float, C0: float, f_min=None, D=None, rtol=1e-9) -> BoundReport:
    """f_t - f_min <= C0*theta*||v_t|| + C*||v_t||^alpha + eps0 for t >= 2, C*||v_1||^alpha for t = 1."""
    f_min = _f_min(trace, f_min)
    n = trace.params.n
    if D is None:
        D = theta_diameter(n)
    theta = 2.0 ** (1.0 / n)
    norms = trace.edge_norms
    eps0 = epsilon0_exact(C0, C, alpha, D)
    bound = C0 * theta * norms + C * norms**alpha + eps0
    bound[0] = C * norms[0] ** alpha
    return _tightest(f"per_sample_regret[{trace.objective_name}]", trace.values - f_min, bound, rtol)


def theorem_rate_terms(C: float, V: float, alpha: float, lambda0: float, n: int, T: int) -> tuple[float, float, float]:
    """The three terms of the explicit cumulative-regret bound with C0 from the minimax rule.

    term 1: C0 * theta * (sum of ||v_t||), via the closed form when n > 1 and
            the exact worst-case level sum when n = 1;
    term 2: C * theta^(n-alpha)/(theta^(n-alpha)-1) * V^alpha * T^((n-alpha)/n);
    term 3: C0^(alpha/(alpha-1)) * C^(-1/(alpha-1)) * T.
    """
    C0 = compute_C0(lambda0, C, alpha, n, T)
    theta = 2.0 ** (1.0 / n)
    if n > 1:
        first = C0 * theta * vt_sum_bound(1.0, V, T, n)
    else:
        first = C0 * theta * vt_sum_worst(1.0, V, T, n)
    second = C * vt_sum_bound(alpha, V, T, n)
    third = epsilon0_bound(C0, C, alpha) * T
    return first, second, third


def theorem_rate_bound(C: float, V: float, alpha: float, lambda0: float, n: int, T: int) -> float:
    return math.fsum(theorem_rate_terms(C, V, alpha, lambda0, n, T))


# ------------------------------------------------------------------ rate fit


def rate_fit(pairs: Sequence[tuple[float, float]]) -> tuple[float, float]:
    """Least-squares slope and intercept of log(regret) against log(T)."""
    pairs = list(pairs)
    if len(pairs) < 3:
        raise ValueError("rate_fit needs at least 3 (T, regret) pairs")
    T = np.array([p[0] for p in pairs], dtype=float)
    r = np.array([p[1] for p in pairs], dtype=float)
    keep = r > 0
    if not np.all(keep):
        warnings.warn(f"rate_fit: dropping {int((~keep).sum())} non-positive regret values", RuntimeWarning, stacklevel=2)
    if keep.sum() < 2:
        raise ValueError("rate_fit needs at least 2 positive regret values")
    slope, intercept = np.polyfit(np.log(T[keep]), np.log(r[keep]), 1)
    return float(slope), float(intercept)


# ----------------------------------------------------------------- partition


def count_overlapping_dyadic(intervals) -> int:
    """Pairs of boxes, given as exact per-axis ``(numerator, depth)`` intervals, sharing interior.

    Intervals are lifted to the deepest level on each axis and compared as
    half-open integer ranges, so the count is exact at any depth.
    """
    k = len(intervals)
    if k < 2:
        return 0
    n = len(intervals[0])
    lows, highs = [], []
    for a in range(n):
        deepest = max(iv[a][1] for iv in intervals)
        lo = [iv[a][0] << (deepest - iv[a][1]) for iv in intervals]
        hi = [(iv[a][0] + 1) << (deepest - iv[a][1]) for iv in intervals]
        dtype = np.int64 if deepest < 62 else object
        lows.append(np.array(lo, dtype=dtype))
        highs.append(np.array(hi, dtype=dtype))
    count = 0
    cols = np.arange(k)[None, :]
    for start in range(0, k, 256):
        stop = min(k, start + 256)
        overlap = np.ones((stop - start, k), dtype=bool)
        for a in range(n):
            overlap &= (lows[a][start:stop, None] < highs[a][None, :]) & (lows[a][None, :] < highs[a][start:stop, None])
        count += int(np.count_nonzero(overlap & (cols > np.arange(start, stop)[:, None])))
    return count


def verify_partition(snapshot, spec: DomainSpec, pairwise: bool = True, rtol: float = 1e-9, largest: bool = True) -> tuple[BoundReport, ...]:
    """Volume and disjointness of a frontier snapshot.

    Returns the relative volume error against vol(Theta) and, when
    ``pairwise``, the number of pairs with overlapping interiors. Snapshots
    carrying codes are tested exactly on their dyadic intervals; a bare
    ``(centers, edges)`` pair falls back to the float box test, which is only
    meaningful while boxes stay well above double resolution.
    """
    codes = getattr(snapshot, "codes", None)
    if codes is None:
        centers, edges = snapshot
    else:
        centers, edges = snapshot.centers, snapshot.edges
    centers = np.ascontiguousarray(centers, dtype=float)
    edges = np.ascontiguousarray(edges, dtype=float)
    volume = math.fsum(np.prod(2.0 * edges, axis=1))
    err = abs(volume - spec.volume) / spec.volume
    out = [BoundReport(f"partition_volume[n={spec.n},k={len(centers)}]", err, rtol, err <= rtol, rtol - err)]
    if pairwise:
        if codes is None:
            overlaps = int(_kernels.count_overlapping_pairs(centers, edges, 1e-9))
        else:
            overlaps = count_overlapping_dyadic([dyadic_intervals(c, spec.n, largest) for c in codes])
        out.append(BoundReport(f"partition_disjoint[n={spec.n},k={len(centers)}]", overlaps, 0, overlaps == 0, -overlaps))
    return tuple(out)
