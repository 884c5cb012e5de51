"""Domain wrapping, projection and the hyper-rectangle split rule.

The unit cube [0, 1]^n is embedded in the box

    Theta = [0, theta^(n-1)] x [0, theta^(n-2)] x ... x [0, 1],  theta = 2^(1/n)

whose side lengths form a geometric ladder. Halving the longest side of any
box on that ladder keeps it on the ladder, so every split shrinks the
edge-vector norm by exactly 2^(-1/n).

Points and edge vectors are plain tuples of floats; they are immutable and
cheap to build inside the optimizer loop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

Point = Tuple[float, ...]
EdgeVector = Tuple[float, ...]


def theta_powers(n: int) -> tuple[float, ...]:
    """theta^-k for k = 0..2n computed as exp(-k log 2 / n)."""
    return tuple(math.exp(-math.log(2.0) * k / n) for k in range(2 * n + 1))


@dataclass(frozen=True)
class DomainSpec:
    n: int
    theta: float
    theta_sides: tuple[float, ...]

    @property
    def volume(self) -> float:
        return math.prod(self.theta_sides)

    @property
    def diameter(self) -> float:
        return math.hypot(*self.theta_sides)


@dataclass(frozen=True)
class HyperRect:
    """Axis-aligned box given by its center and per-axis half-widths."""

    center: Point
    edge: EdgeVector

    @property
    def n(self) -> int:
        return len(self.center)

    @property
    def edge_norm(self) -> float:
        return math.hypot(*self.edge)

    @property
    def lower(self) -> Point:
        return tuple(c - e for c, e in zip(self.center, self.edge))

    @property
    def upper(self) -> Point:
        return tuple(c + e for c, e in zip(self.center, self.edge))


def wrap_domain(n: int) -> DomainSpec:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    theta = math.exp(math.log(2.0) / n)
    powers = theta_powers(n)
    # side of axis i (1-based) is theta^(n-i) = 2 * theta^-i
    sides = tuple(2.0 * powers[i] for i in range(1, n + 1))
    return DomainSpec(n=n, theta=theta, theta_sides=sides)


def initial_rect(spec: DomainSpec) -> HyperRect:
    """The whole of Theta: center and edge both equal (theta^-1, ..., theta^-n)."""
    half = tuple(s / 2.0 for s in spec.theta_sides)
    return HyperRect(center=half, edge=half)


def project_to_domain(x) -> Point:
    """Nearest point of [0, 1]^n; for a box this is a componentwise clamp."""
    return tuple(min(1.0, max(0.0, float(v))) for v in x)


def split_axis(edge: EdgeVector, largest: bool = True) -> int:
    """Index of the longest edge (lowest index on ties).

    ``largest=False`` picks the shortest edge instead; it exists only as a
    fault-injection hook and breaks the norm-decay guarantee.
    """
    pick = max if largest else min
    return pick(range(len(edge)), key=edge.__getitem__)


def split_rect(parent: HyperRect, largest: bool = True) -> tuple[HyperRect, HyperRect, int]:
    """Bisect ``parent`` across its longest axis.

    Returns ``(plus, minus, axis)`` where ``plus`` has the larger coordinate on
    the split axis. ``axis`` is 0-based.
    """
    axis = split_axis(parent.edge, largest)
    z = 0.5 * parent.edge[axis]
    edge = parent.edge[:axis] + (parent.edge[axis] - z,) + parent.edge[axis + 1:]
    c = parent.center
    plus = HyperRect(c[:axis] + (c[axis] + z,) + c[axis + 1:], edge)
    minus = HyperRect(c[:axis] + (c[axis] - z,) + c[axis + 1:], edge)
    return plus, minus, axis


def rect_volume(r: HyperRect) -> float:
    return math.prod(2.0 * e for e in r.edge)
