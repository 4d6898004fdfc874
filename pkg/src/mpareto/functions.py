"""Objective oracles and constructive M / M-natural convex families.

An oracle is an evaluation handle ``x -> ExtValue`` together with a finite
bounding box that contains its effective domain, an optional feasible start
point, and the convexity class it claims.  Claims are checked by the exchange
verifiers in :mod:`mpareto.verifiers`.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional, Sequence

from .core import INF, Box, ExtValue, IntPoint
from .errors import AxiomError, DimensionError, EnumerationCapError

M = "M"
MNAT = "Mnat"
NONE = "none"
CLASSES = (M, MNAT, NONE)

DEFAULT_ENUM_CAP = 10**6
ENUM_CAP_ENV = "MPARETO_ENUM_CAP"


def enum_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class ObjectiveOracle:
    func: Callable[[IntPoint], ExtValue]
    box: Box
    start: Optional[IntPoint] = None
    claimed_class: str = NONE
    kind: str = "custom"
    certified: bool = False

    def __post_init__(self):
        if self.claimed_class not in CLASSES:
            raise ValueError(f"unknown class {self.claimed_class!r}")

    @property
    def n(self) -> int:
        return self.box.dim

    def eval(self, x: Sequence[int]) -> ExtValue:
        if len(x) != self.box.dim:
            raise DimensionError(f"expected {self.box.dim} coordinates, got {len(x)}")
        x = tuple(x)
        if not self.box.contains(x):
            return INF
        return self.func(x)

    __call__ = eval


def box_points(box: Box) -> Iterable[IntPoint]:
    return itertools.product(*(range(lo, hi + 1) for lo, hi in zip(box.lower, box.upper)))


def enumerate_dom(o: ObjectiveOracle, cap: Optional[int] = None) -> list[IntPoint]:
    """All box points with finite value, in lexicographic coordinate order."""
    cap = enum_cap() if cap is None else cap
    if o.box.volume > cap:
        raise EnumerationCapError(
            f"box volume {o.box.volume} exceeds enumeration cap {cap}; "
            f"use a smaller instance or set {ENUM_CAP_ENV}"
        )
    return [x for x in box_points(o.box) if o.func(x) != INF]


def characteristic(members: Iterable[int], n: int) -> IntPoint:
    x = [0] * n
    for e in members:
        x[e] = 1
    return tuple(x)


def canonical_family(sets: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted({tuple(sorted(set(s))) for s in sets}))


def _table_oracle(table: dict[IntPoint, ExtValue], box: Box, claimed: str, kind: str) -> ObjectiveOracle:
    start = min(table) if table else None
    return ObjectiveOracle(lambda x: table.get(x, INF), box, start, claimed, kind)


def make_base_linear(bases: Iterable[Iterable[int]], cost: Sequence[int], check: bool = True) -> ObjectiveOracle:
    """Linear cost ``c(B)`` on the bases of a matroid given explicitly.

    With ``check`` the family is verified against the simultaneous exchange
    axiom and an :class:`AxiomError` names the violating ``(B1, B2, u)``.
    """
    n = len(cost)
    fam = canonical_family(bases)
    if not fam:
        raise AxiomError("base family must be nonempty")
    if any(e < 0 or e >= n for s in fam for e in s):
        raise DimensionError("base refers to an element outside the ground set")
    if check:
        from .verifiers import verify_base_axiom

        report = verify_base_axiom(fam, n)
        if not report.passed:
            raise AxiomError(f"family violates axiom (B): {report.describe()}", report.witness)
    table = {characteristic(s, n): sum(cost[e] for e in s) for s in fam}
    return _table_oracle(table, Box.unit(n), M, "base_linear")


def make_family_linear(sets: Iterable[Iterable[int]], cost: Sequence[int], check: bool = True) -> ObjectiveOracle:
    """Linear cost on an explicit g-matroid family (an M-natural convex set)."""
    n = len(cost)
    fam = canonical_family(sets)
    if not fam:
        raise AxiomError("family must be nonempty")
    if check:
        from .verifiers import verify_gmatroid

        report = verify_gmatroid(fam, n)
        if not report.passed:
            raise AxiomError(f"family violates axiom (P): {report.describe()}", report.witness)
    table = {characteristic(s, n): sum(cost[e] for e in s) for s in fam}
    return _table_oracle(table, Box.unit(n), MNAT, "family_linear")


def make_table(points: Iterable[Sequence[int]], values: Iterable[int], box: Box, claimed: str = NONE) -> ObjectiveOracle:
    """Explicit point/value table; anything missing is +inf."""
    table = {}
    for p, v in zip(points, values, strict=True):
        p = tuple(p)
        if len(p) != box.dim:
            raise DimensionError("table point has wrong length")
        if not box.contains(p):
            raise ValueError(f"table point {p} lies outside the box")
        table[p] = v
    if not table:
        raise ValueError("table must contain at least one point")
    return _table_oracle(table, box, claimed, "table")


@dataclass(frozen=True)
class SeparableConvexSpec:
    """``sum_e quad[e]*x(e)**2 + lin[e]*x(e)`` on ``box`` with ``sum_lo <= x(E) <= sum_hi``.

    Equal sum bounds give an M-convex function, otherwise M-natural convex.
    """

    quad: tuple[int, ...]
    lin: tuple[int, ...]
    box: Box
    sum_lo: int
    sum_hi: int

    def __post_init__(self):
        n = self.box.dim
        if len(self.quad) != n or len(self.lin) != n:
            raise DimensionError("coefficient vectors must match the box dimension")
        if any(a < 0 for a in self.quad):
            raise ValueError("quadratic coefficients must be nonnegative")

    @property
    def is_m_convex(self) -> bool:
        return self.sum_lo == self.sum_hi

    def feasible_range(self) -> tuple[int, int]:
        lo = max(self.sum_lo, sum(self.box.lower))
        hi = min(self.sum_hi, sum(self.box.upper))
        return lo, hi


def _feasible_start(box: Box, target: int) -> IntPoint:
    # fill the box from the lower corner, element by element, up to the target sum
    x = list(box.lower)
    need = target - sum(x)
    for e in range(box.dim):
        step = min(need, box.upper[e] - x[e])
        x[e] += step
        need -= step
    return tuple(x)


def make_separable(spec: SeparableConvexSpec) -> ObjectiveOracle:
    lo, hi = spec.feasible_range()
    if lo > hi:
        raise ValueError(
            f"sum constraint [{spec.sum_lo}, {spec.sum_hi}] is infeasible within the box"
        )
    quad, lin, s_lo, s_hi = spec.quad, spec.lin, spec.sum_lo, spec.sum_hi

    def value(x: IntPoint) -> ExtValue:
        s = sum(x)
        if s < s_lo or s > s_hi:
            return INF
        return sum(a * xi * xi + c * xi for a, c, xi in zip(quad, lin, x))

    claimed = M if spec.is_m_convex else MNAT
    return ObjectiveOracle(value, spec.box, _feasible_start(spec.box, lo), claimed, "separable")


def add_linear(o: ObjectiveOracle, c: Sequence[int]) -> ObjectiveOracle:
    """``o + <c, .>``; the class claim (and any certification) carries over."""
    if len(c) != o.n:
        raise DimensionError("linear term has wrong length")
    c = tuple(c)
    base = o.func

    def value(x: IntPoint) -> ExtValue:
        v = base(x)
        if v == INF:
            return INF
        return v + sum(ci * xi for ci, xi in zip(c, x))

    return replace(o, func=value, kind=o.kind + "+linear")


def restrict(o: ObjectiveOracle, keep: Callable[[IntPoint], bool], kind: str = "restricted") -> ObjectiveOracle:
    """``o`` plus the indicator of ``{x : keep(x)}``.  Carries no class claim."""
    base = o.func
    start = o.start if o.start is not None and keep(o.start) else None
    return ObjectiveOracle(lambda x: base(x) if keep(x) else INF, o.box, start, NONE, kind)
