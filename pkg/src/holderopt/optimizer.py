"""The fixed-query-rule optimizer loop and its trace."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from .frontier import Frontier
from .geometry import HyperRect, initial_rect, project_to_domain, wrap_domain


class ObjectiveError(RuntimeError):
    """The objective returned a non-finite value."""


def root_edge_norm(n: int) -> float:
    """V = ||v_1||, the edge norm of the root box of Theta."""
    return initial_rect(wrap_domain(n)).edge_norm


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly inside (0, 1), got {alpha}")


def compute_C0(lambda0: float, C: float, alpha: float, n: int, T: int) -> float:
    """lambda0 * C * V**(alpha-1) * T**((1-alpha)/n), the minimax-rate coefficient."""
    _check_alpha(alpha)
    if lambda0 <= 0 or C <= 0:
        raise ValueError("lambda0 and C must be positive")
    if T < 1:
        raise ValueError("T must be at least 1")
    V = root_edge_norm(n)
    return lambda0 * C * V ** (alpha - 1.0) * T ** ((1.0 - alpha) / n)


@dataclass(frozen=True)
class AlgoParams:
    n: int
    T: int
    C0: float
    origin: str = "explicit"
    lambda0: Optional[float] = None
    holder_c: Optional[float] = None
    alpha: Optional[float] = None
    alpha_prime: Optional[float] = None

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("budget T must be at least 1")
        if self.n < 1:
            raise ValueError("dimension n must be at least 1")
        if not (self.C0 >= 0 and math.isfinite(self.C0)):
            raise ValueError("C0 must be a finite non-negative number")

    @classmethod
    def explicit(cls, n: int, T: int, C0: float) -> "AlgoParams":
        return cls(n=n, T=T, C0=float(C0))

    @classmethod
    def minimax(cls, n: int, T: int, lambda0: float, C: float, alpha: float) -> "AlgoParams":
        return cls(n, T, compute_C0(lambda0, C, alpha, n, T), "minimax_rule", lambda0, C, alpha)

    @classmethod
    def misspecified(cls, n: int, T: int, alpha_prime: float) -> "AlgoParams":
        """C0 = T**((1 - alpha_prime)/n), tuned for a guessed exponent alpha_prime."""
        if not 0.0 < alpha_prime <= 1.0:
            raise ValueError("alpha_prime must lie in (0, 1]")
        return cls(n, T, T ** ((1.0 - alpha_prime) / n), "misspecified_rule", alpha_prime=alpha_prime)


@dataclass(frozen=True)
class QueryRecord:
    t: int
    point_theta: tuple
    point_omega: tuple
    value: float
    edge: tuple
    score: Optional[float]
    code: str


@dataclass
class Trace:
    """Full run history. Row i describes query t = i + 1.

    ``scores[0]`` is NaN: the first query is the center of Theta and is
    sampled unconditionally. Baseline traces leave ``scores`` all NaN and
    ``codes`` empty.
    """

    params: AlgoParams
    x_theta: np.ndarray
    x_omega: np.ndarray
    values: np.ndarray
    edges: np.ndarray
    scores: np.ndarray
    codes: list
    objective_name: str = ""
    known_min: Optional[float] = None
    method: str = "holder"
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def T(self) -> int:
        return len(self.values)

    @property
    def edge_norms(self) -> np.ndarray:
        return np.sqrt(np.sum(self.edges**2, axis=1))

    @property
    def best_value_prefix(self) -> np.ndarray:
        return np.minimum.accumulate(self.values)

    def record(self, t: int) -> QueryRecord:
        i = t - 1
        s = self.scores[i]
        return QueryRecord(
            t=t,
            point_theta=tuple(self.x_theta[i].tolist()),
            point_omega=tuple(self.x_omega[i].tolist()),
            value=float(self.values[i]),
            edge=tuple(self.edges[i].tolist()),
            score=None if np.isnan(s) else float(s),
            code=self.codes[i],
        )

    @property
    def records(self) -> Iterator[QueryRecord]:
        return (self.record(t) for t in range(1, self.T + 1))


def _evaluate(objective, point_omega):
    value = float(objective(np.array(point_omega)))
    if not math.isfinite(value):
        raise ObjectiveError(f"objective returned {value!r} at x = {list(point_omega)}")
    return value


def optimize(
    objective,
    params: AlgoParams,
    *,
    callback: Optional[Callable[[int, Frontier], None]] = None,
    score_offset: float = 0.0,
    largest_axis: bool = True,
) -> Trace:
    """Run T queries of the fixed-split best-first rule.

    Query 1 is the center of Theta. After every evaluation the sampled box is
    halved across its longest side and both halves enter the frontier with
    score ``f - C0 * ||edge||``; the next query is the lowest-score entry.
    Evaluations happen at the projection of each query onto [0, 1]^n.

    ``callback(t, frontier)`` runs after query t's children are pushed.
    ``score_offset`` and ``largest_axis`` are verification hooks.
    """
    n = params.n
    if getattr(objective, "n", n) != n:
        raise ValueError(f"objective has dimension {objective.n}, params say {n}")
    T = params.T
    C0 = params.C0

    x_theta = np.empty((T, n))
    x_omega = np.empty((T, n))
    values = np.empty(T)
    edges = np.empty((T, n))
    scores = np.full(T, np.nan)
    codes = [""] * T

    frontier = Frontier()
    rect: HyperRect = initial_rect(wrap_domain(n))
    code = ""
    for i in range(T):
        if i > 0:
            cand = frontier.pop_min()
            rect, code = cand.rect, cand.code
            scores[i] = cand.score
            codes[i] = code
        omega = project_to_domain(rect.center)
        value = _evaluate(objective, omega)
        x_theta[i] = rect.center
        x_omega[i] = omega
        values[i] = value
        edges[i] = rect.edge
        frontier.push_children(rect, code, value, C0, offset=score_offset, largest=largest_axis)
        if callback is not None:
            callback(i + 1, frontier)

    return Trace(
        params=params,
        x_theta=x_theta,
        x_omega=x_omega,
        values=values,
        edges=edges,
        scores=scores,
        codes=codes,
        objective_name=getattr(objective, "name", getattr(objective, "__name__", "objective")),
        known_min=getattr(objective, "known_min_value", None),
    )


def best_so_far(trace: Trace, t: int) -> tuple[tuple, float]:
    """Best queried point among the first t records (earliest wins ties)."""
    if not 1 <= t <= trace.T:
        raise ValueError(f"t must lie in [1, {trace.T}]")
    i = int(np.argmin(trace.values[:t]))
    return tuple(trace.x_omega[i].tolist()), float(trace.values[i])
