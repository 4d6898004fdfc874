"""Pareto values of ``(g(X), eta(X))`` over a g-matroid, ``eta`` ordered lexicographically.

``eta(X)`` counts the members of ``X`` in each of ``m`` ordered categories;
fewer elements of an earlier category is better.  The solver walks strictly
down the lexicographic order: given the current ``mu = eta(X)`` it minimizes
``g`` over ``{eta <lex mu}`` split into ``m`` box windows, takes the first
window attaining the minimum, and keeps the lex-smallest ``eta`` among that
window's minimizers.  Every such point is Pareto optimal as found.

Window subproblems are solved by scanning the explicit family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .core import INF, ExtValue, LexParetoValue, lex_leq
from .errors import AxiomError, NotCertifiedError
from .functions import M, MNAT, ObjectiveOracle, canonical_family, characteristic
from .verifiers import verify_gmatroid, verify_mnat

Subset = tuple[int, ...]


@dataclass(frozen=True)
class CategoryPartition:
    """``category_of[e]`` is the 1-based category of element ``e``."""

    m: int
    category_of: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one category")
        bad = [e for e, c in enumerate(self.category_of) if not 1 <= c <= self.m]
        if bad:
            raise ValueError(f"element {bad[0]} has category outside 1..{self.m}")

    @property
    def n(self) -> int:
        return len(self.category_of)

    def sizes(self) -> tuple[int, ...]:
        return eta(range(self.n), self)


@dataclass(frozen=True)
class GMatroidFamily:
    n: int
    sets: tuple[Subset, ...]
    verified: bool = False

    @property
    def rank(self) -> int:
        return max(len(s) for s in self.sets)


def make_gmatroid(n: int, sets: Iterable[Iterable[int]], check: bool = True) -> GMatroidFamily:
    fam = canonical_family(sets)
    if not fam:
        raise AxiomError("g-matroid family must be nonempty")
    if any(e < 0 or e >= n for s in fam for e in s):
        raise ValueError("family member refers to an element outside the ground set")
    if check:
        report = verify_gmatroid(fam, n)
        if not report.passed:
            raise AxiomError(f"family violates axiom (P): {report.describe()}", report.witness)
    return GMatroidFamily(n, fam, verified=check)


class Window(NamedTuple):
    lam: tuple[int, ...]
    xi: tuple[int, ...]

    @property
    def empty(self) -> bool:
        return any(x < 0 or lo > x for lo, x in zip(self.lam, self.xi))

    def contains(self, e: Sequence[int]) -> bool:
        return all(lo <= v <= hi for lo, v, hi in zip(self.lam, e, self.xi))


def eta(X: Iterable[int], part: CategoryPartition) -> tuple[int, ...]:
    counts = [0] * part.m
    for e in X:
        counts[part.category_of[e] - 1] += 1
    return tuple(counts)


def windows_for(mu: Sequence[int], n: int) -> list[Window]:
    """The ``m`` windows whose union is ``{eta : eta <lex mu, eta != mu}``.

    Window ``k`` fixes the first ``k - 1`` counts at ``mu`` and forces count
    ``k`` below ``mu_k``.  Windows with ``mu_k = 0`` come out empty.
    """
    m = len(mu)
    out = []
    for k in range(m):
        lam = tuple(mu[i] if i < k else 0 for i in range(m))
        xi = tuple(mu[i] if i < k else (mu[k] - 1 if i == k else n) for i in range(m))
        out.append(Window(lam, xi))
    return out


class _Entry(NamedTuple):
    X: Subset
    g: ExtValue
    eta: tuple[int, ...]


def _entries(g: ObjectiveOracle, fam: GMatroidFamily, part: CategoryPartition) -> list[_Entry]:
    out = []
    for X in fam.sets:
        val = g.eval(characteristic(X, fam.n))
        if val != INF:
            out.append(_Entry(X, val, eta(X, part)))
    return out


def _lexmin(entries: Sequence[_Entry]) -> _Entry:
    best = entries[0]
    for ent in entries[1:]:
        if ent.eta != best.eta:
            if lex_leq(ent.eta, best.eta):
                best = ent
        elif ent.X < best.X:
            best = ent
    return best


def lexmin_eta(sets: Sequence[Iterable[int]], part: CategoryPartition) -> Subset:
    """Member with lex-smallest ``eta``; ties go to the canonically smallest set."""
    if not sets:
        raise ValueError("cannot take the lex minimum of an empty family")
    ents = [_Entry(tuple(sorted(s)), 0, eta(s, part)) for s in sets]
    return _lexmin(ents).X


def _window_min(entries: Sequence[_Entry], w: Window) -> Optional[tuple[ExtValue, list[_Entry]]]:
    if w.empty:
        return None
    inside = [e for e in entries if w.contains(e.eta)]
    if not inside:
        return None
    zeta = min(e.g for e in inside)
    return zeta, [e for e in inside if e.g == zeta]


def solve_window(
    g: ObjectiveOracle, fam: GMatroidFamily, w: Window, part: CategoryPartition
) -> Optional[tuple[ExtValue, list[Subset]]]:
    """Minimum of ``g`` over family members whose ``eta`` lies in the window."""
    res = _window_min(_entries(g, fam, part), w)
    if res is None:
        return None
    zeta, arg = res
    return zeta, [e.X for e in arg]


@dataclass
class MlbRun:
    values: list[LexParetoValue] = field(default_factory=list)
    witnesses: list[Subset] = field(default_factory=list)
    mus: list[tuple[int, ...]] = field(default_factory=list)
    subproblem_log: list[tuple[tuple[ExtValue, ...], int]] = field(default_factory=list)
    iterations: int = 0
    family_size: int = 0
    oracle_calls: int = 0
    warning: Optional[str] = None


def fold(g: ObjectiveOracle, fam: GMatroidFamily) -> ObjectiveOracle:
    """``g`` plus the indicator of the family, as an oracle on 0-1 vectors."""
    members = {characteristic(X, fam.n) for X in fam.sets}
    base = g.func
    return ObjectiveOracle(
        lambda x: base(x) if x in members else INF,
        g.box,
        characteristic(fam.sets[0], fam.n),
        MNAT,
        "folded",
    )


_LINEAR_ON_CUBE = ("separable", "separable+linear", "family_linear", "base_linear")


def certify_mlb(g: ObjectiveOracle, fam: GMatroidFamily, part: CategoryPartition) -> None:
    """Raise :class:`NotCertifiedError` unless ``g + indicator(fam)`` is M-natural convex.

    Separable objectives are linear on 0-1 vectors, so it suffices that the
    effective family passes axiom (P); anything else gets the full exchange check.
    """
    if part.n != fam.n or g.n != fam.n:
        raise ValueError("objective, family and partition disagree on the ground set size")
    if g.claimed_class not in (M, MNAT):
        raise NotCertifiedError(f"objective claims class {g.claimed_class!r}")
    if g.kind in _LINEAR_ON_CUBE:
        eff = [e.X for e in _entries(g, fam, part)]
        if not eff:
            raise NotCertifiedError("objective is +inf on the whole family")
        if fam.verified and len(eff) == len(fam.sets):
            return
        report = verify_gmatroid(eff, fam.n)
    else:
        report = verify_mnat(fold(g, fam))
    if not report.passed:
        raise NotCertifiedError(f"g-matroid objective refuted: {report.describe()}", report)


def solve_mlb(
    g: ObjectiveOracle,
    fam: GMatroidFamily,
    part: CategoryPartition,
    unchecked: bool = False,
    on_record: Optional[Callable[[LexParetoValue, Subset], None]] = None,
) -> MlbRun:
    """Complete Pareto value set, recorded in strictly lex-decreasing ``eta``.

    ``on_record`` is called with each value the moment it is recorded.
    """
    run = MlbRun(family_size=len(fam.sets))
    if unchecked:
        run.warning = "WARN: objective/family not certified; Pareto guarantees do not apply"
    else:
        certify_mlb(g, fam, part)
    entries = _entries(g, fam, part)
    run.oracle_calls = len(fam.sets)
    if not entries:
        raise ValueError("objective is +inf on every family member")

    def record(ent: _Entry) -> None:
        val = LexParetoValue(ent.g, ent.eta)
        run.values.append(val)
        run.witnesses.append(ent.X)
        run.mus.append(ent.eta)
        if on_record is not None:
            on_record(val, ent.X)

    g_min = min(e.g for e in entries)
    current = _lexmin([e for e in entries if e.g == g_min])
    record(current)
    while True:
        results = [_window_min(entries, w) for w in windows_for(current.eta, fam.n)]
        feasible = [r for r in results if r is not None]
        if not feasible:
            break
        zetas = tuple(INF if r is None else r[0] for r in results)
        best = min(zetas)
        ell = zetas.index(best)
        current = _lexmin(results[ell][1])
        run.subproblem_log.append((zetas, ell + 1))
        run.iterations += 1
        record(current)
        if run.iterations > run.family_size:
            raise RuntimeError("outer loop exceeded the family size")
    return run
