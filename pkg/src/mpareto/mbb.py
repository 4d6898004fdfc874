"""Pareto value set of ``min (h(x), <b, x>)`` for M-convex ``h``.

Same walk as :mod:`mpareto.mnatbb`, but every minimum transition can be
found inside ``supp(x - x') x supp(x' - x)`` where ``x'`` is a fixed
minimizer of ``h`` among the minimizers of ``<b, .>``.  The candidate sets
only shrink as ``x`` walks towards ``x'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import INF, BinaryWeights, ExtValue, IntPoint, ParetoValue2, Transition, shift, supp_diff
from .errors import InvariantViolation
from .functions import M, ObjectiveOracle
from .minimize import CountingEval, min_b_then_min_h, minimize
from .mnatbb import UNCHECKED_WARNING, MnatbbRun, min_transition
from .verifiers import certify


@dataclass
class MbbRun(MnatbbRun):
    target: Optional[IntPoint] = None
    k_min: int = 0
    candidate_sizes: list[tuple[int, int]] = field(default_factory=list)
    unrestricted_costs: list[ExtValue] = field(default_factory=list)


def candidate_sets(b: BinaryWeights, x: IntPoint, target: IntPoint) -> tuple[list[int], list[int]]:
    plus, minus = supp_diff(x, target)
    return sorted(plus & set(b.E1)), sorted(minus & set(b.E0))


def restricted_min_transition(
    h: ObjectiveOracle, b: BinaryWeights, x: IntPoint, target: IntPoint, evaluate=None
) -> tuple[Transition, ExtValue]:
    """Cheapest transition with ``u`` in ``E1 & supp(x - x')`` and ``v`` in ``E0 & supp(x' - x)``."""
    evaluate = evaluate or h.eval
    delta1, delta0 = candidate_sets(b, x, target)
    hx = evaluate(x)
    best = None
    for u in delta1:
        for v in delta0:
            t = Transition(u, v)
            hy = evaluate(shift(x, t))
            if hy == INF:
                continue
            if best is None or hy - hx < best[1]:
                best = (t, hy - hx)
    if best is None:
        raise InvariantViolation(
            f"no transition in restricted candidates {delta1} x {delta0} at {x}; "
            "the oracle is probably not M-convex"
        )
    return best


def solve_mbb(
    h: ObjectiveOracle,
    b: BinaryWeights,
    unchecked: bool = False,
    fallback_unrestricted: bool = False,
    track_unrestricted: bool = False,
    backend: str = "auto",
) -> MbbRun:
    """Complete Pareto optimal value set for an M-convex ``h``.

    ``fallback_unrestricted`` replaces the invariant error by a full
    transition scan; ``track_unrestricted`` additionally records the
    unrestricted minimum cost at every step for auditing.
    """
    run = MbbRun()
    if unchecked:
        run.warning = None if h.certified else UNCHECKED_WARNING
    else:
        h = certify(h, M)
    x, hx, trace = minimize(h)
    k = b.dot(x)
    target, _, k_min = min_b_then_min_h(h, b, backend)
    run.initial_k, run.target, run.k_min = k, target, k_min
    run.trajectory.append((x, hx, k))
    counter = CountingEval(h)
    while k > k_min:
        d1, d0 = candidate_sets(b, x, target)
        run.candidate_sizes.append((len(d1), len(d0)))
        try:
            t, cost = restricted_min_transition(h, b, x, target, counter)
        except InvariantViolation:
            if not fallback_unrestricted:
                raise
            step = min_transition(h, b, x, counter)
            if step is None:
                raise
            t, cost = step
        if track_unrestricted:
            full = min_transition(h, b, x)
            run.unrestricted_costs.append(full[1] if full else INF)
        if cost > 0:
            run.values.append(ParetoValue2(hx, k))
        run.transitions_taken.append((t, cost))
        x = shift(x, t)
        hx = hx + cost
        k -= 1
        run.iterations += 1
        run.trajectory.append((x, hx, k))
    run.values.append(ParetoValue2(hx, k))
    run.final_k = k
    run.loop_oracle_calls = counter.calls
    run.oracle_calls = trace.oracle_calls + counter.calls
    return run
