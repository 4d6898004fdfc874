"""Exhaustive checks of the four exchange axioms.

All verifiers scan every ordered pair of domain points (or family members)
and report the lowest violating witness in lexicographic order of
``(first, second, element)``.  The pair space is processed in row blocks
with numpy broadcasting; results do not depend on the block size.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import NotCertifiedError
from .functions import M, MNAT, ObjectiveOracle, canonical_family, enumerate_dom

EXTENDED_CONVENTION = (
    "inequalities evaluated in the extended reals: an exchanged point outside "
    "dom makes its side +inf, which never satisfies <= against a finite left side"
)

_BLOCK_CELLS = 1 << 22


@dataclass(frozen=True)
class VerifyReport:
    axiom: str
    passed: bool
    checked: int
    witness: Optional[tuple] = None
    convention: str = ""

    def describe(self) -> str:
        if self.passed:
            return f"PASS {self.axiom} ({self.checked} members)"
        first, second, elem = self.witness
        return f"FAIL {self.axiom}: witness first={first} second={second} element={elem}"


def _first_violation(viol: list[np.ndarray]) -> Optional[tuple[int, int, int]]:
    """Lowest (row, col, elem) over per-element boolean matrices."""
    if not viol:
        return None
    anyv = np.logical_or.reduce(viol)
    if not anyv.any():
        return None
    flat = int(np.argmax(anyv))
    i, j = divmod(flat, anyv.shape[1])
    elem = next(e for e, mat in enumerate(viol) if mat[i, j])
    return i, j, elem


class _Lookup:
    """Dense value table over the box; points outside it evaluate to +inf."""

    def __init__(self, o: ObjectiveOracle, pts: np.ndarray, vals: np.ndarray):
        self.lower = np.asarray(o.box.lower, dtype=np.int64)
        self.shape = np.asarray(o.box.upper, dtype=np.int64) - self.lower + 1
        self.table = np.full(int(np.prod(self.shape)), np.inf)
        self.table[self._flat(pts - self.lower)] = vals

    def _flat(self, idx: np.ndarray) -> np.ndarray:
        return np.ravel_multi_index(tuple(idx.T), tuple(self.shape))

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        idx = pts - self.lower
        inside = np.all((idx >= 0) & (idx < self.shape), axis=1)
        out = np.full(len(pts), np.inf)
        if inside.any():
            out[inside] = self.table[self._flat(idx[inside])]
        return out


def _exchange_axiom(o: ObjectiveOracle, natural: bool, cap: Optional[int]) -> VerifyReport:
    name = "M-natural exchange" if natural else "M exchange"
    dom = enumerate_dom(o, cap)
    N, n = len(dom), o.n
    if N == 0:
        return VerifyReport(name, False, 0, None, EXTENDED_CONVENTION)
    X = np.asarray(dom, dtype=np.int64).reshape(N, n)
    f = np.asarray([o.func(x) for x in dom], dtype=float)
    look = _Lookup(o, X, f)
    eye = np.eye(n, dtype=np.int64)
    # moved[u][v]: f(x - chi_u + chi_v) for every domain point x; v == n is the dummy
    down = [[None] * (n + 1) for _ in range(n)]
    up = [[None] * (n + 1) for _ in range(n)]
    for u in range(n):
        for v in range(n + 1):
            if v == u or (v == n and not natural):
                continue
            step = eye[u] - (eye[v] if v < n else 0)
            down[u][v] = look(X - step)
            up[u][v] = look(X + step)

    rows = max(1, _BLOCK_CELLS // max(N, 1))
    for s in range(0, N, rows):
        blk = slice(s, min(N, s + rows))
        lhs = f[blk, None] + f[None, :]
        viol = []
        for u in range(n):
            need = X[blk, u][:, None] > X[None, :, u]
            ok = np.zeros_like(need)
            if natural:
                ok |= down[u][n][blk, None] + up[u][n][None, :] <= lhs
            for v in range(n):
                if v == u:
                    continue
                vin = X[blk, v][:, None] < X[None, :, v]
                ok |= vin & (down[u][v][blk, None] + up[u][v][None, :] <= lhs)
            viol.append(need & ~ok)
        hit = _first_violation(viol)
        if hit is not None:
            i, j, u = hit
            return VerifyReport(name, False, N, (dom[s + i], dom[j], u), EXTENDED_CONVENTION)
    return VerifyReport(name, True, N, None, EXTENDED_CONVENTION)


def verify_m(o: ObjectiveOracle, cap: Optional[int] = None) -> VerifyReport:
    """Exhaustive M-convex exchange check; witness is ``(x, y, u)``."""
    return _exchange_axiom(o, natural=False, cap=cap)


def verify_mnat(o: ObjectiveOracle, cap: Optional[int] = None) -> VerifyReport:
    """Exhaustive M-natural exchange check (either removal or exchange)."""
    return _exchange_axiom(o, natural=True, cap=cap)


def _masks(fam: Sequence[tuple[int, ...]]) -> np.ndarray:
    return np.asarray([sum(1 << e for e in s) for s in fam], dtype=np.int64)


def _set_of(mask: int) -> tuple[int, ...]:
    return tuple(e for e in range(mask.bit_length()) if mask >> e & 1)


def _family_axiom(sets: Iterable[Iterable[int]], n: Optional[int], gmatroid: bool) -> VerifyReport:
    name = "g-matroid (P)" if gmatroid else "base exchange (B)"
    fam = canonical_family(sets)
    if not fam:
        return VerifyReport(name, False, 0)
    if n is None:
        n = max((e for s in fam for e in s), default=-1) + 1
    masks = _masks(fam)
    N = len(fam)
    sorted_masks = np.sort(masks)

    def member(q: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(sorted_masks, q)
        pos = np.minimum(pos, N - 1)
        return sorted_masks[pos] == q

    has = [(masks >> e & 1).astype(bool) for e in range(n)]
    rows = max(1, _BLOCK_CELLS // N)
    for s in range(0, N, rows):
        blk = slice(s, min(N, s + rows))
        viol = []
        for a in range(n):
            # a is u for (B) and v for (P): it must lie in first \ second
            need = has[a][blk, None] & ~has[a][None, :]
            bit_a = np.int64(1 << a)
            if gmatroid:
                ok = member(masks[blk] & ~bit_a)[:, None] & member(masks | bit_a)[None, :]
            else:
                ok = np.zeros_like(need)
            for c in range(n):
                if c == a:
                    continue
                bit_c = np.int64(1 << c)
                left = member((masks[blk] & ~bit_a) | bit_c) & ~has[c][blk]
                right = member((masks | bit_a) & ~bit_c) & has[c]
                ok |= left[:, None] & right[None, :]
            viol.append(need & ~ok)
        hit = _first_violation(viol)
        if hit is not None:
            i, j, a = hit
            return VerifyReport(name, False, N, (fam[s + i], fam[j], a))
    return VerifyReport(name, True, N)


def verify_base_axiom(sets: Iterable[Iterable[int]], n: Optional[int] = None) -> VerifyReport:
    """Simultaneous exchange axiom; witness is ``(B1, B2, u)``."""
    return _family_axiom(sets, n, gmatroid=False)


def verify_gmatroid(sets: Iterable[Iterable[int]], n: Optional[int] = None) -> VerifyReport:
    """g-matroid exchange axiom; witness is ``(P1, P2, v)``."""
    return _family_axiom(sets, n, gmatroid=True)


def verify_claim(o: ObjectiveOracle, cap: Optional[int] = None) -> VerifyReport:
    if o.claimed_class == M:
        return verify_m(o, cap)
    if o.claimed_class == MNAT:
        return verify_mnat(o, cap)
    return VerifyReport("no class claimed", False, 0)


def certify(o: ObjectiveOracle, require: str = MNAT, cap: Optional[int] = None) -> ObjectiveOracle:
    """Return ``o`` marked certified, or raise :class:`NotCertifiedError`.

    ``require=MNAT`` accepts oracles claiming either class since every
    M-convex function is M-natural convex.
    """
    if require == M and o.claimed_class != M:
        raise NotCertifiedError(f"oracle claims class {o.claimed_class!r}, M required")
    if o.claimed_class not in (M, MNAT):
        raise NotCertifiedError(f"oracle claims class {o.claimed_class!r}, no exchange property")
    if o.certified:
        return o
    report = verify_claim(o, cap)
    if not report.passed:
        raise NotCertifiedError(f"class claim {o.claimed_class} refuted: {report.describe()}", report)
    return replace(o, certified=True)
