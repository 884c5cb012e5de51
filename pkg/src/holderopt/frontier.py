"""The list of potential queries.

Every candidate owns one box of the current partition of Theta. Candidates
are ordered by ``(score, insertion_index)``, so siblings, which always share
a score, come out plus-child first.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .geometry import DomainSpec, EdgeVector, HyperRect, initial_rect, split_axis, split_rect, wrap_domain


class EmptyFrontierError(LookupError):
    """pop_min called on a frontier with no candidates."""


@dataclass(frozen=True)
class Candidate:
    rect: HyperRect
    score: float
    code: str
    insertion_index: int


def score(parent_value: float, parent_edge: EdgeVector, C0: float) -> float:
    """Score shared by both children of a sampled box: f_parent - C0 * ||edge||."""
    return parent_value - C0 * math.hypot(*parent_edge)


class Frontier:
    """Min-ordered pool of candidates keyed by (score, insertion_index)."""

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, Candidate]] = []
        self.next_insertion_index = 0

    def __len__(self) -> int:
        return len(self._heap)

    def __iter__(self):
        return (entry[2] for entry in self._heap)

    def push(self, rect: HyperRect, score_value: float, code: str) -> Candidate:
        cand = Candidate(rect, score_value, code, self.next_insertion_index)
        heapq.heappush(self._heap, (score_value, cand.insertion_index, cand))
        self.next_insertion_index += 1
        return cand

    def push_children(
        self,
        parent_rect: HyperRect,
        parent_code: str,
        parent_value: float,
        C0: float,
        *,
        offset: float = 0.0,
        largest: bool = True,
    ) -> tuple[Candidate, Candidate]:
        """Retire ``parent_rect`` by pushing its two halves.

        Both children get the single score ``parent_value - C0*||edge|| + offset``.
        ``offset`` and ``largest`` are test hooks (score shift, split rule).
        """
        s = score(parent_value, parent_rect.edge, C0) + offset
        plus, minus, _ = split_rect(parent_rect, largest)
        return self.push(plus, s, parent_code + "1"), self.push(minus, s, parent_code + "0")

    def pop_min(self) -> Candidate:
        if not self._heap:
            raise EmptyFrontierError("pop_min on an empty frontier")
        return heapq.heappop(self._heap)[2]

    def snapshot(self) -> "FrontierSnapshot":
        cands = [entry[2] for entry in self._heap]
        return FrontierSnapshot(
            centers=np.array([c.rect.center for c in cands], dtype=float),
            edges=np.array([c.rect.edge for c in cands], dtype=float),
            codes=tuple(c.code for c in cands),
        )


@dataclass(frozen=True)
class FrontierSnapshot:
    """Frozen copy of the frontier's boxes: (k, n) centers and edges plus codes."""

    centers: np.ndarray
    edges: np.ndarray
    codes: tuple


def encode(candidate: Candidate) -> str:
    return candidate.code


def decode(code: str, spec: DomainSpec, largest: bool = True) -> HyperRect:
    """Replay a split history from the root box; '1' is the plus child."""
    rect = initial_rect(spec)
    for bit in code:
        plus, minus, _ = split_rect(rect, largest)
        if bit == "1":
            rect = plus
        elif bit == "0":
            rect = minus
        else:
            raise ValueError(f"binary code may only contain '0'/'1', got {bit!r}")
    return rect


def dyadic_intervals(code: str, n: int, largest: bool = True) -> tuple[tuple[int, int], ...]:
    """Exact per-axis position of a coded box as ``(numerator, depth)`` pairs.

    On axis i the box covers [num, num + 1] * side_i / 2**depth. Python ints
    keep this exact at any depth, unlike float centers, which stop resolving
    boxes once they shrink below the spacing of doubles.
    """
    # the split axis depends only on the edge vector, which halving keeps exact
    edge = initial_rect(wrap_domain(n)).edge
    num = [0] * n
    depth = [0] * n
    for bit in code:
        axis = split_axis(edge, largest)
        edge = edge[:axis] + (0.5 * edge[axis],) + edge[axis + 1:]
        num[axis] = 2 * num[axis] + (bit == "1")
        depth[axis] += 1
    return tuple(zip(num, depth))

