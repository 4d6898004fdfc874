"""Shared value types and order predicates.

Points are plain tuples of ints indexed by ground-set element (0..n-1).
Extended values are ints for finite values and :data:`INF` for +infinity;
Python compares ``int`` against ``float('inf')`` exactly, so no tolerance is
ever needed on integer instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from .errors import DimensionError

IntPoint = tuple[int, ...]
ExtValue = Union[int, float]

INF: float = math.inf

#: Dummy target of a pure-removal transition (``chi_z`` is the zero vector).
Z = None


def is_finite(value: ExtValue) -> bool:
    return value != INF


@dataclass(frozen=True)
class GroundSet:
    size: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("ground set must have at least one element")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise ValueError("labels length must equal ground-set size")
            if len(set(self.labels)) != self.size:
                raise ValueError("labels must be pairwise distinct")

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels is not None else str(e)


@dataclass(frozen=True)
class Box:
    lower: IntPoint
    upper: IntPoint

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise DimensionError("box bounds differ in length")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("box lower bound exceeds upper bound")

    @classmethod
    def unit(cls, n: int) -> "Box":
        return cls((0,) * n, (1,) * n)

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def volume(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in zip(self.lower, self.upper))

    @property
    def diameter(self) -> int:
        """Largest infinity-norm distance between two box points."""
        return max((hi - lo for lo, hi in zip(self.lower, self.upper)), default=0)

    def contains(self, x: Sequence[int]) -> bool:
        return all(lo <= xi <= hi for lo, xi, hi in zip(self.lower, x, self.upper))


@dataclass(frozen=True)
class BinaryWeights:
    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("binary weights must be 0 or 1")

    @property
    def E0(self) -> tuple[int, ...]:
        return tuple(e for e, b in enumerate(self.bits) if b == 0)

    @property
    def E1(self) -> tuple[int, ...]:
        return tuple(e for e, b in enumerate(self.bits) if b == 1)

    def dot(self, x: Sequence[int]) -> int:
        if len(x) != len(self.bits):
            raise DimensionError("point and weights differ in length")
        return sum(xi for xi, b in zip(x, self.bits) if b)


class Transition(NamedTuple):
    """Exchange step ``x - chi_u + chi_v``; ``v is None`` means drop ``u``."""

    u: int
    v: Optional[int]

    def sort_key(self, n: int) -> tuple[int, int]:
        # Z sorts after every real element.
        return (self.u, n if self.v is None else self.v)


class ParetoValue2(NamedTuple):
    g: ExtValue
    k: int


class LexParetoValue(NamedTuple):
    g: ExtValue
    eta: tuple[int, ...]


def shift(x: IntPoint, t: Transition) -> IntPoint:
    y = list(x)
    y[t.u] -= 1
    if t.v is not None:
        y[t.v] += 1
    return tuple(y)


def supp_diff(x: Sequence[int], y: Sequence[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Return ``(supp(x - y), supp(y - x))``."""
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")
    plus = frozenset(e for e, (a, b) in enumerate(zip(x, y)) if a > b)
    minus = frozenset(e for e, (a, b) in enumerate(zip(x, y)) if a < b)
    return plus, minus


def dominates2(p: tuple[ExtValue, int], q: tuple[ExtValue, int]) -> bool:
    return p[0] <= q[0] and p[1] <= q[1] and tuple(p) != tuple(q)


def lex_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``b - a`` lies in the lexicographic cone."""
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")
    for ai, bi in zip(a, b):
        if ai != bi:
            return bi > ai
    return True


def dominates_mixed(p: tuple[ExtValue, Sequence[int]], q: tuple[ExtValue, Sequence[int]]) -> bool:
    gp, ep = p
    gq, eq = q
    return gp <= gq and lex_leq(ep, eq) and (gp != gq or tuple(ep) != tuple(eq))
