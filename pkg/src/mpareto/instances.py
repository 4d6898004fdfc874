"""Instance files (JSON, schema version "1") and seeded generators.

Layout of a document::

    {
      "schema_version": "1",
      "kind": "mnatbb" | "mbb" | "mlb",
      "ground": {"size": n, "labels": [...]},          # labels optional
      "objective": {"type": "base_linear", "bases": [[...]], "cost": [...]}
                 | {"type": "separable", "quad": [...], "lin": [...],
                    "sum": {"min": r1, "max": r2}}
                 | {"type": "separable+linear", ..., "linear": [...]}
                 | {"type": "table", "points": [[...]], "values": [...],
                    "claimed_class": "M" | "Mnat" | "none"},
      "box": {"lower": [...], "upper": [...]},
      "b": [...],                                       # mnatbb / mbb
      "categories": {"m": m, "of": [...]},              # mlb, 1-based
      "family": [[...], ...],                           # mlb, sorted index arrays
      "start": [...],                                   # optional
      "provenance": {"generator": ..., "prng": "splitmix64",
                     "seed": ..., "params": {...}}      # optional
    }

Files are written canonically (sorted keys, compact separators, trailing
newline), so equal instances are byte-identical.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Optional, Union

from .core import Box, BinaryWeights
from .errors import AxiomError, InstanceError, ParameterError
from .functions import (
    CLASSES,
    ObjectiveOracle,
    SeparableConvexSpec,
    add_linear,
    canonical_family,
    make_base_linear,
    make_separable,
    make_table,
)
from .mlb import CategoryPartition, GMatroidFamily, eta
from .rng import ALGORITHM, SplitMix64

SCHEMA_VERSION = "1"
KINDS = ("mnatbb", "mbb", "mlb")


@dataclass(frozen=True)
class BaseLinearObjective:
    bases: tuple[tuple[int, ...], ...]
    cost: tuple[int, ...]


@dataclass(frozen=True)
class SeparableObjective:
    quad: tuple[int, ...]
    lin: tuple[int, ...]
    sum_lo: int
    sum_hi: int
    linear: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class TableObjective:
    points: tuple[tuple[int, ...], ...]
    values: tuple[int, ...]
    claimed_class: str


Objective = Union[BaseLinearObjective, SeparableObjective, TableObjective]


@dataclass(frozen=True)
class InstanceFile:
    kind: str
    n: int
    objective: Objective
    box: Box
    b: Optional[tuple[int, ...]] = None
    m: Optional[int] = None
    categories: Optional[tuple[int, ...]] = None
    family: Optional[tuple[tuple[int, ...], ...]] = None
    start: Optional[tuple[int, ...]] = None
    labels: Optional[tuple[str, ...]] = None
    provenance: Optional[dict] = None
    schema_version: str = SCHEMA_VERSION


# ---------------------------------------------------------------- serialization


def _objective_doc(obj: Objective) -> dict:
    if isinstance(obj, BaseLinearObjective):
        return {"type": "base_linear", "bases": [list(s) for s in obj.bases], "cost": list(obj.cost)}
    if isinstance(obj, SeparableObjective):
        doc = {
            "type": "separable" if obj.linear is None else "separable+linear",
            "quad": list(obj.quad),
            "lin": list(obj.lin),
            "sum": {"min": obj.sum_lo, "max": obj.sum_hi},
        }
        if obj.linear is not None:
            doc["linear"] = list(obj.linear)
        return doc
    return {
        "type": "table",
        "points": [list(p) for p in obj.points],
        "values": list(obj.values),
        "claimed_class": obj.claimed_class,
    }


def to_document(inst: InstanceFile) -> dict:
    ground: dict[str, Any] = {"size": inst.n}
    if inst.labels is not None:
        ground["labels"] = list(inst.labels)
    doc: dict[str, Any] = {
        "schema_version": inst.schema_version,
        "kind": inst.kind,
        "ground": ground,
        "objective": _objective_doc(inst.objective),
        "box": {"lower": list(inst.box.lower), "upper": list(inst.box.upper)},
    }
    if inst.b is not None:
        doc["b"] = list(inst.b)
    if inst.categories is not None:
        doc["categories"] = {"m": inst.m, "of": list(inst.categories)}
    if inst.family is not None:
        doc["family"] = [list(s) for s in inst.family]
    if inst.start is not None:
        doc["start"] = list(inst.start)
    if inst.provenance is not None:
        doc["provenance"] = inst.provenance
    return doc


def dumps(inst: InstanceFile) -> str:
    return json.dumps(to_document(inst), sort_keys=True, separators=(",", ":")) + "\n"


def digest(inst: InstanceFile) -> str:
    return hashlib.sha256(dumps(inst).encode("utf-8")).hexdigest()[:16]


def write_instance(inst: InstanceFile, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(inst), encoding="utf-8")


def _req(doc: dict, key: str, path: str):
    if not isinstance(doc, dict):
        raise InstanceError(path, "expected an object")
    if key not in doc:
        raise InstanceError(f"{path}.{key}" if path else key, "required field is missing")
    return doc[key]


def _int(v, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InstanceError(path, f"expected an integer, got {v!r}")
    return v


def _ints(v, path: str, length: Optional[int] = None) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise InstanceError(path, "expected an array of integers")
    if length is not None and len(v) != length:
        raise InstanceError(path, f"expected {length} entries, got {len(v)}")
    return tuple(_int(x, f"{path}[{i}]") for i, x in enumerate(v))


def _subsets(v, path: str, n: int) -> tuple[tuple[int, ...], ...]:
    if not isinstance(v, list):
        raise InstanceError(path, "expected an array of index arrays")
    out = []
    for i, s in enumerate(v):
        idx = _ints(s, f"{path}[{i}]")
        for j, e in enumerate(idx):
            if not 0 <= e < n:
                raise InstanceError(f"{path}[{i}][{j}]", f"element index {e} out of range 0..{n - 1}")
        if list(idx) != sorted(set(idx)):
            raise InstanceError(f"{path}[{i}]", "index array must be strictly increasing")
        out.append(idx)
    return tuple(out)


def _parse_objective(doc, n: int) -> Objective:
    kind = _req(doc, "type", "objective")
    if kind == "base_linear":
        bases = _subsets(_req(doc, "bases", "objective"), "objective.bases", n)
        if not bases:
            raise InstanceError("objective.bases", "base family must be nonempty")
        return BaseLinearObjective(bases, _ints(_req(doc, "cost", "objective"), "objective.cost", n))
    if kind in ("separable", "separable+linear"):
        quad = _ints(_req(doc, "quad", "objective"), "objective.quad", n)
        if any(a < 0 for a in quad):
            raise InstanceError("objective.quad", "coefficients must be nonnegative")
        lin = _ints(_req(doc, "lin", "objective"), "objective.lin", n)
        s = _req(doc, "sum", "objective")
        lo = _int(_req(s, "min", "objective.sum"), "objective.sum.min")
        hi = _int(_req(s, "max", "objective.sum"), "objective.sum.max")
        linear = None
        if kind == "separable+linear":
            linear = _ints(_req(doc, "linear", "objective"), "objective.linear", n)
        return SeparableObjective(quad, lin, lo, hi, linear)
    if kind == "table":
        raw = _req(doc, "points", "objective")
        if not isinstance(raw, list) or not raw:
            raise InstanceError("objective.points", "expected a nonempty array of points")
        points = tuple(_ints(p, f"objective.points[{i}]", n) for i, p in enumerate(raw))
        values = _ints(_req(doc, "values", "objective"), "objective.values", len(points))
        claimed = _req(doc, "claimed_class", "objective")
        if claimed not in CLASSES:
            raise InstanceError("objective.claimed_class", f"must be one of {CLASSES}")
        return TableObjective(points, values, claimed)
    raise InstanceError("objective.type", f"unknown objective type {kind!r}")


def from_document(doc: Any) -> InstanceFile:
    if not isinstance(doc, dict):
        raise InstanceError("", "instance document must be a JSON object")
    version = _req(doc, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise InstanceError("schema_version", f"unsupported schema version {version!r}")
    kind = _req(doc, "kind", "")
    if kind not in KINDS:
        raise InstanceError("kind", f"must be one of {KINDS}, got {kind!r}")
    ground = _req(doc, "ground", "")
    n = _int(_req(ground, "size", "ground"), "ground.size")
    if n < 1:
        raise InstanceError("ground.size", "must be at least 1")
    labels = None
    if isinstance(ground, dict) and "labels" in ground:
        raw = ground["labels"]
        if not isinstance(raw, list) or len(raw) != n or not all(isinstance(s, str) for s in raw):
            raise InstanceError("ground.labels", f"expected {n} strings")
        if len(set(raw)) != n:
            raise InstanceError("ground.labels", "labels must be distinct")
        labels = tuple(raw)
    objective = _parse_objective(_req(doc, "objective", ""), n)
    box_doc = _req(doc, "box", "")
    lower = _ints(_req(box_doc, "lower", "box"), "box.lower", n)
    upper = _ints(_req(box_doc, "upper", "box"), "box.upper", n)
    for e, (lo, hi) in enumerate(zip(lower, upper)):
        if lo > hi:
            raise InstanceError(f"box.lower[{e}]", "lower bound exceeds upper bound")
    box = Box(lower, upper)
    b = m = categories = family = None
    if kind in ("mnatbb", "mbb"):
        b = _ints(_req(doc, "b", ""), "b", n)
        for e, bit in enumerate(b):
            if bit not in (0, 1):
                raise InstanceError(f"b[{e}]", "binary weights must be 0 or 1")
        for key in ("categories", "family"):
            if key in doc:
                raise InstanceError(key, f"not allowed for kind {kind}")
    else:
        cat = _req(doc, "categories", "")
        m = _int(_req(cat, "m", "categories"), "categories.m")
        if m < 1:
            raise InstanceError("categories.m", "must be at least 1")
        categories = _ints(_req(cat, "of", "categories"), "categories.of", n)
        for e, c in enumerate(categories):
            if not 1 <= c <= m:
                raise InstanceError(f"categories.of[{e}]", f"category index {c} out of range 1..{m}")
        family = _subsets(_req(doc, "family", ""), "family", n)
        if not family:
            raise InstanceError("family", "family must be nonempty")
        if "b" in doc:
            raise InstanceError("b", "not allowed for kind mlb")
        if box != Box.unit(n):
            raise InstanceError("box", "mlb instances live on the unit cube")
    start = None
    if "start" in doc:
        start = _ints(doc["start"], "start", n)
        if not box.contains(start):
            raise InstanceError("start", "start point lies outside the box")
    provenance = doc.get("provenance")
    if provenance is not None and not isinstance(provenance, dict):
        raise InstanceError("provenance", "expected an object")
    return InstanceFile(kind, n, objective, box, b, m, categories, family, start, labels, provenance)


def loads(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError("", f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_document(doc)


def read_instance(path: Union[str, Path]) -> InstanceFile:
    return loads(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------- building


@dataclass(frozen=True)
class Problem:
    kind: str
    oracle: ObjectiveOracle
    b: Optional[BinaryWeights] = None
    family: Optional[GMatroidFamily] = None
    partition: Optional[CategoryPartition] = None


def build_oracle(inst: InstanceFile) -> ObjectiveOracle:
    obj = inst.objective
    if isinstance(obj, BaseLinearObjective):
        o = make_base_linear(obj.bases, obj.cost, check=False)
    elif isinstance(obj, SeparableObjective):
        o = make_separable(SeparableConvexSpec(obj.quad, obj.lin, inst.box, obj.sum_lo, obj.sum_hi))
        if obj.linear is not None:
            o = add_linear(o, obj.linear)
    else:
        o = make_table(obj.points, obj.values, inst.box, obj.claimed_class)
    if inst.start is not None:
        o = replace(o, box=inst.box, start=inst.start, certified=False)
    elif o.box != inst.box:
        o = replace(o, box=inst.box, certified=False)
    return o


def build_problem(inst: InstanceFile) -> Problem:
    """Turn a file into solver inputs.  Nothing is certified here."""
    try:
        oracle = build_oracle(inst)
    except (ValueError, AxiomError) as exc:
        raise InstanceError("objective", str(exc)) from None
    if inst.kind == "mlb":
        fam = GMatroidFamily(inst.n, canonical_family(inst.family))
        return Problem(inst.kind, oracle, family=fam, partition=CategoryPartition(inst.m, inst.categories))
    return Problem(inst.kind, oracle, b=BinaryWeights(inst.b))


# ---------------------------------------------------------------- generators


def _provenance(generator: str, seed: int, params: dict) -> dict:
    return {"generator": generator, "prng": ALGORITHM, "seed": seed, "params": params}


def _random_partition(rng: SplitMix64, n: int, parts: int) -> list[list[int]]:
    elems = rng.shuffle(list(range(n)))
    cuts = sorted(rng.shuffle(list(range(1, n)))[: parts - 1])
    bounds = [0] + cuts + [n]
    return [sorted(elems[a:b]) for a, b in zip(bounds, bounds[1:])]


def _partition_bases(blocks, quotas) -> list[tuple[int, ...]]:
    per_block = [itertools.combinations(bl, q) for bl, q in zip(blocks, quotas)]
    return [tuple(sorted(itertools.chain(*combo))) for combo in itertools.product(*per_block)]


def gen_matroid_linear(
    seed: int,
    n: int,
    r: Optional[int] = None,
    cost_min: int = 0,
    cost_max: int = 9,
    b_density: float = 0.5,
    matroid: str = "uniform",
    blocks: Optional[list[list[int]]] = None,
    quotas: Optional[list[int]] = None,
    kind: str = "mbb",
) -> InstanceFile:
    """Linear costs on the bases of a uniform or partition matroid."""
    if kind not in ("mnatbb", "mbb"):
        raise ParameterError(f"matroid-linear instances are mnatbb or mbb, not {kind!r}")
    if blocks is not None:
        matroid = "partition"
        if quotas is None or len(quotas) != len(blocks):
            raise ParameterError("explicit blocks need one quota per block")
        if r is None:
            r = sum(quotas)
    if r is None or not 1 <= r <= n <= 12:
        raise ParameterError(f"need 1 <= r <= n <= 12, got r={r}, n={n}")
    if cost_min > cost_max:
        raise ParameterError("cost_min exceeds cost_max")
    if not 0.0 <= b_density <= 1.0:
        raise ParameterError("b_density must lie in [0, 1]")
    rng = SplitMix64(seed)
    if matroid == "uniform":
        bases = list(itertools.combinations(range(n), r))
    elif matroid == "partition":
        # always draw so explicit blocks leave the rest of the stream unchanged
        drawn = _random_partition(rng, n, rng.randint(1, min(n, 4)))
        drawn_q = [0] * len(drawn)
        for _ in range(r):
            open_blocks = [i for i, bl in enumerate(drawn) if drawn_q[i] < len(bl)]
            drawn_q[open_blocks[rng.randint(0, len(open_blocks) - 1)]] += 1
        if blocks is None:
            blocks, quotas = drawn, drawn_q
        if sorted(e for bl in blocks for e in bl) != list(range(n)):
            raise ParameterError("blocks must partition the ground set")
        if sum(quotas) != r or any(q < 0 or q > len(bl) for q, bl in zip(quotas, blocks)):
            raise ParameterError("quotas must be feasible and sum to r")
        bases = _partition_bases(blocks, quotas)
    else:
        raise ParameterError(f"unknown matroid type {matroid!r}")
    cost = tuple(rng.randint(cost_min, cost_max) for _ in range(n))
    b = tuple(int(rng.bernoulli(b_density)) for _ in range(n))
    fam = canonical_family(bases)
    params = {
        "n": n, "r": r, "cost_min": cost_min, "cost_max": cost_max,
        "b_density": b_density, "matroid": matroid, "kind": kind,
    }
    if matroid == "partition":
        params["blocks"] = [list(bl) for bl in blocks]
        params["quotas"] = list(quotas)
    inst = InstanceFile(
        kind, n, BaseLinearObjective(fam, cost), Box.unit(n), b=b,
        start=tuple(1 if e in fam[0] else 0 for e in range(n)),
        provenance=_provenance("matroid_linear", seed, params),
    )
    _certify_generated(inst)
    return inst


def gen_separable(
    seed: int,
    n: int,
    radius: int,
    mode: str = "eq",
    r: Optional[int] = None,
    r_lo: Optional[int] = None,
    r_hi: Optional[int] = None,
    quad_max: int = 3,
    lin_min: int = -4,
    lin_max: int = 4,
    b_density: float = 0.5,
    extra_linear: bool = False,
    kind: Optional[str] = None,
) -> InstanceFile:
    """Quadratic separable function on ``[0, radius]^n`` under a sum constraint.

    ``mode="eq"`` fixes ``x(E) = r`` (M-convex); ``mode="range"`` imposes
    ``r_lo <= x(E) <= r_hi`` (M-natural convex).  Unset bounds are drawn.
    """
    if not 1 <= n <= 6 or not 0 <= radius <= 3:
        raise ParameterError(f"need 1 <= n <= 6 and 0 <= radius <= 3, got n={n}, radius={radius}")
    if mode not in ("eq", "range"):
        raise ParameterError(f"unknown sum mode {mode!r}")
    kind = kind or ("mbb" if mode == "eq" else "mnatbb")
    if kind not in ("mnatbb", "mbb") or (kind == "mbb" and mode != "eq"):
        raise ParameterError(f"kind {kind!r} does not fit sum mode {mode!r}")
    top = n * radius
    rng = SplitMix64(seed)
    quad = tuple(rng.randint(0, quad_max) for _ in range(n))
    lin = tuple(rng.randint(lin_min, lin_max) for _ in range(n))
    drawn_lo = rng.randint(0, top)
    drawn_hi = rng.randint(drawn_lo, top)
    if mode == "eq":
        lo = hi = drawn_lo if r is None else r
    else:
        lo = drawn_lo if r_lo is None else r_lo
        hi = drawn_hi if r_hi is None else r_hi
    if not 0 <= lo <= hi <= top:
        raise ParameterError(f"sum bounds [{lo}, {hi}] infeasible within the box")
    linear = tuple(rng.randint(lin_min, lin_max) for _ in range(n)) if extra_linear else None
    b = tuple(int(rng.bernoulli(b_density)) for _ in range(n))
    box = Box((0,) * n, (radius,) * n)
    params = {
        "n": n, "radius": radius, "mode": mode, "r_lo": lo, "r_hi": hi, "quad_max": quad_max,
        "lin_min": lin_min, "lin_max": lin_max, "b_density": b_density,
        "extra_linear": extra_linear, "kind": kind,
    }
    obj = SeparableObjective(quad, lin, lo, hi, linear)
    start = make_separable(SeparableConvexSpec(quad, lin, box, lo, hi)).start
    inst = InstanceFile(kind, n, obj, box, b=b, start=start, provenance=_provenance("separable", seed, params))
    _certify_generated(inst)
    return inst


def window_family(n: int, part: CategoryPartition, lam, xi) -> list[tuple[int, ...]]:
    out = []
    for mask in range(1 << n):
        X = tuple(e for e in range(n) if mask >> e & 1)
        if all(lo <= c <= hi for lo, c, hi in zip(lam, eta(X, part), xi)):
            out.append(X)
    return out


def gen_gmatroid(
    seed: int,
    n: int,
    m: int,
    source: str = "bases",
    r: Optional[int] = None,
    lam: Optional[list[int]] = None,
    xi: Optional[list[int]] = None,
    cost_min: int = 0,
    cost_max: int = 9,
) -> InstanceFile:
    """g-matroid instance for the lexicographic solver.

    ``source`` is ``"bases"`` (uniform matroid bases), ``"independent"`` (its
    independent sets) or ``"window"`` (all subsets whose category counts lie
    between ``lam`` and ``xi``).
    """
    if not 1 <= n <= 12 or not 1 <= m <= 4:
        raise ParameterError(f"need 1 <= n <= 12 and 1 <= m <= 4, got n={n}, m={m}")
    if source not in ("bases", "independent", "window"):
        raise ParameterError(f"unknown family source {source!r}")
    rng = SplitMix64(seed)
    order = rng.shuffle(list(range(n)))
    cats = [0] * n
    for i, e in enumerate(order):
        cats[e] = i + 1 if i < m else rng.randint(1, m)
    part = CategoryPartition(m, tuple(cats))
    params: dict[str, Any] = {"n": n, "m": m, "source": source, "cost_min": cost_min, "cost_max": cost_max}
    if source == "window":
        drawn_lam, drawn_xi = [], []
        for size in part.sizes():
            lo = rng.randint(0, size)
            drawn_lam.append(lo)
            drawn_xi.append(rng.randint(lo, size))
        if lam is None or xi is None:
            lam, xi = drawn_lam, drawn_xi
        if len(lam) != m or len(xi) != m or any(not 0 <= a <= b for a, b in zip(lam, xi)):
            raise ParameterError("window bounds need 0 <= lam <= xi with m entries")
        sets = window_family(n, part, lam, xi)
        if not sets:
            raise ParameterError("window bounds select no subset")
        params.update(lam=list(lam), xi=list(xi))
    else:
        drawn_r = rng.randint(1, n)
        r = drawn_r if r is None else r
        if not 0 <= r <= n:
            raise ParameterError(f"rank {r} outside 0..{n}")
        bases = list(itertools.combinations(range(n), r))
        if source == "bases":
            sets = bases
        else:
            sets = [X for k in range(r + 1) for X in itertools.combinations(range(n), k)]
        params["r"] = r
    cost = tuple(rng.randint(cost_min, cost_max) for _ in range(n))
    fam = canonical_family(sets)
    obj = SeparableObjective((0,) * n, cost, 0, n)
    inst = InstanceFile(
        "mlb", n, obj, Box.unit(n), m=m, categories=tuple(cats), family=fam,
        provenance=_provenance("gmatroid", seed, params),
    )
    from .verifiers import verify_gmatroid

    report = verify_gmatroid(fam, n)
    if not report.passed:
        raise RuntimeError(f"generator produced a family failing (P): {report.describe()}")
    return inst


def _certify_generated(inst: InstanceFile) -> None:
    from .verifiers import verify_claim

    report = verify_claim(build_oracle(inst))
    if not report.passed:
        raise RuntimeError(f"generator produced an uncertified oracle: {report.describe()}")


GENERATORS = {
    "matroid_linear": gen_matroid_linear,
    "separable": gen_separable,
    "gmatroid": gen_gmatroid,
}


def regenerate(inst: InstanceFile) -> InstanceFile:
    """Rebuild a generated instance from its recorded provenance."""
    prov = inst.provenance
    if not prov or prov.get("generator") not in GENERATORS:
        raise ParameterError("instance carries no generator provenance")
    if prov.get("prng") != ALGORITHM:
        raise ParameterError(f"unsupported PRNG {prov.get('prng')!r}")
    params = dict(prov["params"])
    gen = prov["generator"]
    if gen == "separable" and params["mode"] == "eq":
        params["r"] = params.pop("r_lo")
        params.pop("r_hi")
    return GENERATORS[gen](prov["seed"], **params)
