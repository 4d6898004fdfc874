"""Pareto value set of ``min (g(x), <b, x>)`` for M-natural convex ``g``.

Starting from a global minimizer of ``g``, repeatedly apply a minimum-cost
transition (drop one unit of a ``b = 1`` element, optionally adding one unit
of a ``b = 0`` element).  Each step lowers ``<b, x>`` by one while staying
level-optimal; a point is recorded only when the next step strictly raises
``g``, and the terminal point is always recorded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .core import INF, BinaryWeights, ExtValue, IntPoint, ParetoValue2, Transition, shift
from .errors import DimensionError, DomainError
from .functions import MNAT, ObjectiveOracle
from .minimize import CountingEval, minimize
from .verifiers import certify

log = logging.getLogger(__name__)

UNCHECKED_WARNING = "WARN: oracle class not certified; Pareto guarantees do not apply"


@dataclass
class MnatbbRun:
    values: list[ParetoValue2] = field(default_factory=list)
    transitions_taken: list[tuple[Transition, ExtValue]] = field(default_factory=list)
    trajectory: list[tuple[IntPoint, ExtValue, int]] = field(default_factory=list)
    iterations: int = 0
    initial_k: int = 0
    final_k: int = 0
    oracle_calls: int = 0
    loop_oracle_calls: int = 0
    warning: Optional[str] = None

    @property
    def final_point(self) -> IntPoint:
        return self.trajectory[-1][0]


def _check(o: ObjectiveOracle, b: BinaryWeights, x: IntPoint, evaluate=None) -> ExtValue:
    if len(b.bits) != o.n or len(x) != o.n:
        raise DimensionError("oracle, weights and point differ in dimension")
    gx = (evaluate or o.eval)(x)
    if gx == INF:
        raise DomainError(f"{x} is not in dom")
    return gx


def transitions(o: ObjectiveOracle, b: BinaryWeights, x: IntPoint) -> list[Transition]:
    """Feasible transitions from ``x`` in ``(u, v)`` order, dummy last."""
    _check(o, b, x)
    out = []
    targets = list(b.E0) + [None]
    for u in b.E1:
        for v in targets:
            t = Transition(u, v)
            if o.eval(shift(x, t)) != INF:
                out.append(t)
    return out


def min_transition(o: ObjectiveOracle, b: BinaryWeights, x: IntPoint, evaluate=None) -> Optional[tuple[Transition, ExtValue]]:
    """Cheapest feasible transition from ``x``, or None if there is none."""
    evaluate = evaluate or o.eval
    gx = _check(o, b, x, evaluate)
    best: Optional[tuple[Transition, ExtValue]] = None
    targets = list(b.E0) + [None]
    for u in b.E1:
        for v in targets:
            t = Transition(u, v)
            gy = evaluate(shift(x, t))
            if gy == INF:
                continue
            cost = gy - gx
            if best is None or cost < best[1]:
                best = (t, cost)
    return best


def solve_mnatbb(o: ObjectiveOracle, b: BinaryWeights, unchecked: bool = False) -> MnatbbRun:
    """Complete Pareto optimal value set, in decreasing ``k`` order.

    The oracle must pass the M-natural exchange check; with ``unchecked`` the
    check is skipped and the run carries a warning instead.
    """
    run = MnatbbRun()
    if unchecked:
        run.warning = None if o.certified else UNCHECKED_WARNING
    else:
        o = certify(o, MNAT)
    counter = CountingEval(o)
    x, gx, trace = minimize(o)
    k = b.dot(x)
    run.initial_k = k
    run.trajectory.append((x, gx, k))
    seed_calls = trace.oracle_calls
    while True:
        step = min_transition(o, b, x, counter)
        if step is None:
            break
        t, cost = step
        if cost > 0:
            run.values.append(ParetoValue2(gx, k))
        run.transitions_taken.append((t, cost))
        x = shift(x, t)
        gx = gx + cost
        k -= 1
        run.iterations += 1
        run.trajectory.append((x, gx, k))
    run.values.append(ParetoValue2(gx, k))
    run.final_k = k
    run.loop_oracle_calls = counter.calls
    run.oracle_calls = seed_calls + counter.calls
    log.debug("mnatbb: %d iterations, %d values", run.iterations, len(run.values))
    return run
