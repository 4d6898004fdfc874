"""Minimization of M-natural convex oracles by steepest local exchange.

For M-natural convex functions a point with no improving move in the
neighbourhood ``{x - chi_u + chi_v, x - chi_u, x + chi_v}`` is a global
minimizer, so plain steepest descent is exact.  It is not polynomial in the
box diameter, which is fine at desk scale.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

from .core import INF, BinaryWeights, ExtValue, IntPoint
from .errors import DomainError, EnumerationCapError
from .functions import ObjectiveOracle, box_points, enum_cap, enumerate_dom

log = logging.getLogger(__name__)


@dataclass
class DescentTrace:
    visited: list[tuple[IntPoint, ExtValue]] = field(default_factory=list)
    oracle_calls: int = 0

    @property
    def steps(self) -> int:
        return max(0, len(self.visited) - 1)


class CountingEval:
    """Wraps an oracle and counts evaluations."""

    def __init__(self, o: ObjectiveOracle):
        self.o = o
        self.calls = 0

    def __call__(self, x) -> ExtValue:
        self.calls += 1
        return self.o.eval(x)


def neighbourhood(n: int, exchange_only: bool = False) -> list[tuple[Optional[int], Optional[int]]]:
    """Moves ``(u, v)`` meaning ``x - chi_u + chi_v``; ``None`` is the dummy.

    Ordered lexicographically with the dummy after every element, which is
    the tie-break order used throughout.
    """
    moves = []
    for u in list(range(n)) + [None]:
        for v in list(range(n)) + [None]:
            if u == v:
                continue
            if exchange_only and (u is None or v is None):
                continue
            moves.append((u, v))
    return moves


def _apply(x: IntPoint, u: Optional[int], v: Optional[int]) -> IntPoint:
    y = list(x)
    if u is not None:
        y[u] -= 1
    if v is not None:
        y[v] += 1
    return tuple(y)


def find_start(o: ObjectiveOracle) -> IntPoint:
    if o.start is not None:
        if o.eval(o.start) == INF:
            raise DomainError(f"declared start point {o.start} is outside dom")
        return o.start
    if o.box.volume > enum_cap():
        raise EnumerationCapError("no feasible start point and the box is too large to scan")
    log.warning("oracle has no start point; scanning the box for one")
    for x in box_points(o.box):
        if o.func(x) != INF:
            return x
    raise DomainError("effective domain is empty")


def steepest_descent(
    o: ObjectiveOracle,
    start: IntPoint,
    moves: Optional[list] = None,
    evaluate: Optional[Callable] = None,
) -> tuple[IntPoint, ExtValue, DescentTrace]:
    counter = evaluate or CountingEval(o)
    moves = neighbourhood(o.n) if moves is None else moves
    trace = DescentTrace()
    x = tuple(start)
    fx = counter(x)
    if fx == INF:
        raise DomainError(f"start point {x} is outside dom")
    trace.visited.append((x, fx))
    while True:
        best, best_val = None, fx
        for u, v in moves:
            y = _apply(x, u, v)
            fy = counter(y)
            if fy < best_val:
                best, best_val = y, fy
        if best is None:
            break
        x, fx = best, best_val
        trace.visited.append((x, fx))
    trace.oracle_calls = getattr(counter, "calls", 0)
    return x, fx, trace


def minimize(o: ObjectiveOracle) -> tuple[IntPoint, ExtValue, DescentTrace]:
    """Global minimizer of an M-natural convex oracle, with its descent trace."""
    return steepest_descent(o, find_start(o))


class LevelMinimum(NamedTuple):
    point: IntPoint
    value: ExtValue
    k: int


def min_b_then_min_h(h: ObjectiveOracle, b: BinaryWeights, backend: str = "auto") -> LevelMinimum:
    """Minimize ``h`` over the minimizers of ``<b, .>`` on ``dom h``.

    ``backend`` is ``"enumerate"`` (exact scan, ground truth), ``"descent"``
    (two-phase local search, needs ``h`` M-convex) or ``"auto"`` which scans
    whenever the box fits under the enumeration cap.
    """
    if backend == "auto":
        backend = "enumerate" if h.box.volume <= enum_cap() else "descent"
    if backend == "enumerate":
        return _min_b_then_h_scan(h, b)
    if backend == "descent":
        return _min_b_then_h_descent(h, b)
    raise ValueError(f"unknown backend {backend!r}")


def _min_b_then_h_scan(h: ObjectiveOracle, b: BinaryWeights) -> LevelMinimum:
    dom = enumerate_dom(h)
    if not dom:
        raise DomainError("effective domain is empty")
    k_min = min(b.dot(x) for x in dom)
    best = min((h.func(x), x) for x in dom if b.dot(x) == k_min)
    return LevelMinimum(best[1], best[0], k_min)


def _min_b_then_h_descent(h: ObjectiveOracle, b: BinaryWeights) -> LevelMinimum:
    start = find_start(h)
    hf = h.func

    def b_on_dom(x: IntPoint) -> ExtValue:
        return b.dot(x) if hf(x) != INF else INF

    phase1 = ObjectiveOracle(b_on_dom, h.box, start, h.claimed_class, "b_on_dom")
    y, k_min, _ = steepest_descent(phase1, start)
    # exchanges with b(u) == b(v) keep <b, x> fixed, so they never leave the minimal face
    same = [(u, v) for u, v in neighbourhood(h.n, exchange_only=True) if b.bits[u] == b.bits[v]]
    x, hx, _ = steepest_descent(h, y, moves=same)
    return LevelMinimum(x, hx, int(k_min))
