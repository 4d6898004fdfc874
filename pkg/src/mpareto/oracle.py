"""Exhaustive ground truth for the solvers.

Nothing here calls into the solver modules: enumeration, dominance and
lexicographic comparison are re-implemented locally so that a bug in the
shared paths cannot hide itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import EnumerationCapError
from .functions import ObjectiveOracle, enum_cap

_INF = float("inf")


def _scan(o: ObjectiveOracle) -> list[tuple[tuple[int, ...], object]]:
    box = o.box
    volume = 1
    for lo, hi in zip(box.lower, box.upper):
        volume *= hi - lo + 1
    if volume > enum_cap():
        raise EnumerationCapError(f"box volume {volume} exceeds enumeration cap")
    out = []
    for x in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(box.lower, box.upper))):
        val = o.func(x)
        if val != _INF:
            out.append((x, val))
    return out


def _bdot(bits: Sequence[int], x: Sequence[int]) -> int:
    return sum(b * xi for b, xi in zip(bits, x))


def _bits(b) -> tuple[int, ...]:
    return tuple(getattr(b, "bits", b))


def value_pairs(o: ObjectiveOracle, b) -> set[tuple[object, int]]:
    """Every objective pair ``(g(x), <b, x>)`` realized on dom."""
    bits = _bits(b)
    return {(val, _bdot(bits, x)) for x, val in _scan(o)}


def _nondominated_2d(pairs: Iterable[tuple[object, int]]) -> set[tuple[object, int]]:
    pts = sorted(set(pairs))
    keep = set()
    for p in pts:
        if not any(q[0] <= p[0] and q[1] <= p[1] and q != p for q in pts):
            keep.add(p)
    return keep


def brute_pareto_2d(o: ObjectiveOracle, b) -> set[tuple[object, int]]:
    return _nondominated_2d(value_pairs(o, b))


def _eta(X: Iterable[int], category_of: Sequence[int], m: int) -> tuple[int, ...]:
    c = [0] * m
    for e in X:
        c[category_of[e] - 1] += 1
    return tuple(c)


def lex_value_pairs(g: ObjectiveOracle, sets: Iterable[Iterable[int]], part) -> set[tuple[object, tuple[int, ...]]]:
    n = len(part.category_of)
    out = set()
    for X in sets:
        x = [0] * n
        for e in X:
            x[e] = 1
        val = g.eval(x)
        if val != _INF:
            out.add((val, _eta(X, part.category_of, part.m)))
    return out


def _lex_le_matrix(E: np.ndarray) -> np.ndarray:
    """``L[p, q]`` is True iff ``E[p] <=lex E[q]``."""
    diff = E[None, :, :] - E[:, None, :]
    nz = diff != 0
    first = nz.argmax(axis=2)
    lead = np.take_along_axis(diff, first[..., None], axis=2)[..., 0]
    return ~nz.any(axis=2) | (lead > 0)


def _nondominated_lex(vals: set) -> set:
    pts = sorted(vals)
    if not pts:
        return set()
    G = np.asarray([p[0] for p in pts], dtype=float)
    E = np.asarray([p[1] for p in pts], dtype=np.int64)
    L = _lex_le_matrix(E)
    dom = (G[:, None] <= G[None, :]) & L
    np.fill_diagonal(dom, False)  # values are distinct, so p != q means different pairs
    dominated = dom.any(axis=0)
    return {p for p, d in zip(pts, dominated) if not d}


def brute_pareto_lex(g: ObjectiveOracle, fam, part) -> set[tuple[object, tuple[int, ...]]]:
    sets = getattr(fam, "sets", fam)
    return _nondominated_lex(lex_value_pairs(g, sets, part))


def is_lex_pareto(value: tuple, g: ObjectiveOracle, fam, part) -> bool:
    """Individual check: no family member mixed-order dominates ``value``."""
    gv, ev = value[0], tuple(value[1])
    for h, e in lex_value_pairs(g, getattr(fam, "sets", fam), part):
        if h <= gv and _lex_le_matrix(np.asarray([e, ev]))[0, 1] and (h, e) != (gv, ev):
            return False
    return True


class LevelEntry(NamedTuple):
    optimum: object
    witness: tuple[int, ...]


@dataclass
class LevelTable:
    levels: dict[int, LevelEntry] = field(default_factory=dict)

    @property
    def k_min(self) -> int:
        return min(self.levels)

    @property
    def k_max(self) -> int:
        return max(self.levels)

    def contiguous(self) -> bool:
        return set(self.levels) == set(range(self.k_min, self.k_max + 1))

    def optima(self) -> dict[int, object]:
        return {k: e.optimum for k, e in self.levels.items()}


def level_table(o: ObjectiveOracle, b) -> LevelTable:
    bits = _bits(b)
    table = LevelTable()
    for x, val in _scan(o):
        k = _bdot(bits, x)
        cur = table.levels.get(k)
        if cur is None or val < cur.optimum:
            table.levels[k] = LevelEntry(val, x)
    table.levels = dict(sorted(table.levels.items()))
    return table


@dataclass
class CheckReport:
    passed: bool
    clauses: dict[str, bool] = field(default_factory=dict)
    detail: list[str] = field(default_factory=list)


def _cross(o: tuple, a: tuple, b: tuple) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def supportedness_check(values: Iterable[tuple], full: Iterable[tuple]) -> CheckReport:
    """Every value must be Pareto in ``full`` and lie on its lower-left hull.

    A Pareto point ``p`` is on that hull iff no chord between two other Pareto
    points ``a`` (smaller g) and ``c`` (larger g) passes strictly below it.
    """
    front = sorted(_nondominated_2d(full))
    report = CheckReport(True)
    for p in sorted(set(map(tuple, values))):
        if p not in front:
            report.passed = False
            report.detail.append(f"{p} is not a Pareto value of the full set")
            continue
        left = [a for a in front if a[0] < p[0]]
        right = [c for c in front if c[0] > p[0]]
        for a in left:
            for c in right:
                # p above the chord a->c means the turn a, c, p is counter-clockwise
                if _cross(a, c, p) > 0:
                    report.passed = False
                    report.detail.append(f"{p} lies above the chord {a}-{c}")
                    break
            else:
                continue
            break
    report.clauses["supported"] = report.passed
    return report


def audit_run(run, table: LevelTable) -> CheckReport:
    """Check a walk against exhaustive level optima.

    Clauses: ``level_optimality`` (each visited point attains its level's
    optimum), ``cost_monotonicity`` (taken costs never decrease),
    ``terminal_level`` (the walk ends on the lowest realized level) and
    ``monotone_emergence`` (once g rises between consecutive levels it rises
    at every later step).
    """
    opt = table.optima()
    detail = []
    level_ok = True
    for x, gval, k in run.trajectory:
        if k not in opt or gval != opt[k]:
            level_ok = False
            detail.append(f"level {k}: point {x} has g={gval}, level optimum {opt.get(k)}")
    costs = [c for _, c in run.transitions_taken]
    cost_ok = all(a <= b for a, b in zip(costs, costs[1:]))
    if not cost_ok:
        detail.append(f"costs decrease somewhere in {costs}")
    terminal_ok = run.final_k == table.k_min
    if not terminal_ok:
        detail.append(f"walk ends at k={run.final_k}, lowest level is {table.k_min}")
    g_seq = [gval for _, gval, _ in run.trajectory]
    rises = [b > a for a, b in zip(g_seq, g_seq[1:])]
    started = False
    emergence_ok = True
    for r in rises:
        if started and not r:
            emergence_ok = False
            detail.append(f"g stops increasing after it started: {g_seq}")
            break
        started = started or r
    clauses = {
        "level_optimality": level_ok,
        "cost_monotonicity": cost_ok,
        "terminal_level": terminal_ok,
        "monotone_emergence": emergence_ok,
    }
    return CheckReport(all(clauses.values()), clauses, detail)
