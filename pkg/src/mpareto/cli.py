"""Command line front end: gen, solve, verify, oracle-check, bench.

Exit codes: 0 ok, 2 input error, 3 audit / cross-check failure,
4 certification refusal, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import statistics
import sys
import time
from pathlib import Path
from typing import Optional

from .errors import EnumerationCapError, InstanceError, NotCertifiedError, ParameterError
from .functions import M, MNAT
from .instances import (
    BaseLinearObjective,
    InstanceFile,
    Problem,
    build_problem,
    digest,
    dumps,
    gen_gmatroid,
    gen_matroid_linear,
    gen_separable,
    read_instance,
)
from .mbb import solve_mbb
from .mlb import certify_mlb, make_gmatroid, solve_mlb
from .mnatbb import solve_mnatbb
from . import oracle as brute
from .verifiers import certify, verify_base_axiom, verify_claim, verify_gmatroid

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_AUDIT = 3
EXIT_REFUSED = 4
EXIT_VERIFY = 5


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def format_eta(eta) -> str:
    return "(" + ";".join(str(c) for c in eta) + ")"


def _solve(problem: Problem, unchecked: bool = False, fallback: bool = False,
           backend: str = "auto", track: bool = False, on_record=None):
    if problem.kind == "mnatbb":
        return solve_mnatbb(problem.oracle, problem.b, unchecked=unchecked)
    if problem.kind == "mbb":
        return solve_mbb(problem.oracle, problem.b, unchecked=unchecked,
                         fallback_unrestricted=fallback, track_unrestricted=track, backend=backend)
    return solve_mlb(problem.oracle, problem.family, problem.partition,
                     unchecked=unchecked, on_record=on_record)


def _value_rows(problem: Problem, run) -> list[tuple]:
    if problem.kind == "mlb":
        return [(v.g, tuple(v.eta)) for v in run.values]
    return [(v.g, v.k) for v in run.values]


def _audit(problem: Problem, run, records: list) -> dict[str, bool]:
    """Every exhaustive check that applies to the run's problem kind."""
    o = problem.oracle
    if problem.kind == "mlb":
        truth = brute.brute_pareto_lex(o, problem.family, problem.partition)
        return {
            "oracle_equivalence": set(_value_rows(problem, run)) == truth,
            "no_filter": all(records) and len(records) == len(run.values),
            "outer_loop_bound": run.iterations <= run.family_size,
        }
    table = brute.level_table(o, problem.b)
    report = brute.audit_run(run, table)
    full = brute.value_pairs(o, problem.b)
    out = dict(report.clauses)
    out["supportedness"] = brute.supportedness_check(_value_rows(problem, run), full).passed
    out["oracle_equivalence"] = set(_value_rows(problem, run)) == brute.brute_pareto_2d(o, problem.b)
    out["level_contiguity"] = table.contiguous()
    out["iteration_count"] = run.iterations == run.initial_k - run.final_k
    if problem.kind == "mbb":
        out["restriction_soundness"] = [c for _, c in run.transitions_taken] == run.unrestricted_costs
    return out


def _load(path: str) -> tuple[InstanceFile, Problem]:
    inst = read_instance(path)
    return inst, build_problem(inst)


def cmd_gen(args) -> int:
    try:
        if args.kind == "mlb":
            inst = gen_gmatroid(
                args.seed, args.n, args.m, source=args.source or "bases", r=args.r,
                lam=_ints(args.lam) if args.lam else None, xi=_ints(args.xi) if args.xi else None,
                cost_min=args.cost_min, cost_max=args.cost_max,
            )
        elif (args.source or "uniform") == "separable":
            mode = args.mode or ("eq" if args.kind == "mbb" else "range")
            inst = gen_separable(
                args.seed, args.n, args.radius, mode=mode, r=args.r, b_density=args.b_density,
                extra_linear=args.extra_linear, kind=args.kind,
            )
        else:
            inst = gen_matroid_linear(
                args.seed, args.n, args.r if args.r is not None else min(2, args.n),
                cost_min=args.cost_min, cost_max=args.cost_max, b_density=args.b_density,
                matroid=args.source or "uniform", kind=args.kind,
            )
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(inst)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        inst, problem = _load(args.instance)
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    records: list[bool] = []

    def check_record(value, _X):
        records.append(brute.is_lex_pareto(value, problem.oracle, problem.family, problem.partition))

    on_record = check_record if args.audit and problem.kind == "mlb" else None
    t0 = time.perf_counter()
    try:
        run = _solve(problem, args.unchecked, args.fallback_unrestricted, args.backend,
                     track=args.audit, on_record=on_record)
    except NotCertifiedError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    wall = time.perf_counter() - t0
    audit = _audit(problem, run, records) if args.audit else None
    rows = _value_rows(problem, run)
    if run.warning:
        print(run.warning, file=sys.stderr)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if problem.kind == "mlb":
            w.writerow(["g", "eta"])
            w.writerows([g, format_eta(e)] for g, e in rows)
        else:
            w.writerow(["g", "k"])
            w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        key = "eta" if problem.kind == "mlb" else "k"
        report = {
            "instance_digest": digest(inst),
            "solver": problem.kind,
            "values": [{"g": g, key: list(x) if key == "eta" else x} for g, x in rows],
            "counters": {"iterations": run.iterations, "oracle_calls": run.oracle_calls},
            "audit": audit,
            "warning": run.warning,
        }
        if args.timing:
            report["wall_time"] = wall
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    if audit is not None and not all(audit.values()):
        failed = ", ".join(k for k, ok in audit.items() if not ok)
        print(f"audit FAIL: {failed}", file=sys.stderr)
        return EXIT_AUDIT
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        inst, problem = _load(args.instance)
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    reports = []
    try:
        if problem.kind == "mlb":
            reports.append(verify_gmatroid(problem.family.sets, inst.n))
            if not reports[0].passed:
                print(reports[0].describe())
                return EXIT_VERIFY
            try:
                certify_mlb(problem.oracle, problem.family, problem.partition)
            except NotCertifiedError as exc:
                if exc.report is not None:
                    reports.append(exc.report)
                else:
                    print(f"FAIL {exc}")
                    return EXIT_VERIFY
        else:
            if isinstance(inst.objective, BaseLinearObjective):
                reports.append(verify_base_axiom(inst.objective.bases, inst.n))
            reports.append(verify_claim(problem.oracle))
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for rep in reports:
        print(rep.describe())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_oracle_check(args) -> int:
    try:
        _, problem = _load(args.instance)
    except (InstanceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        run = _solve(problem)
    except NotCertifiedError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    got = set(_value_rows(problem, run))
    if problem.kind == "mlb":
        truth = brute.brute_pareto_lex(problem.oracle, problem.family, problem.partition)
    else:
        truth = brute.brute_pareto_2d(problem.oracle, problem.b)
    if got == truth:
        print(f"MATCH {len(got)} values")
        return EXIT_OK
    print(f"MISMATCH solver-only={sorted(got - truth)} oracle-only={sorted(truth - got)}")
    return EXIT_AUDIT


BENCH_COLUMNS = [
    "digest", "file", "kind", "n", "rank", "status", "values", "iterations",
    "oracle_calls", "loop_oracle_calls", "time_min", "time_median", "time_max",
]


def _rank(inst: InstanceFile) -> Optional[int]:
    if isinstance(inst.objective, BaseLinearObjective):
        return len(inst.objective.bases[0])
    if inst.family is not None:
        return max(len(s) for s in inst.family)
    return None


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        print(f"error: {corpus} is not a directory", file=sys.stderr)
        return EXIT_INPUT
    if args.repeat < 1:
        print("error: --repeat must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    rows = []
    for path in sorted(corpus.glob("*.json")):
        row = dict.fromkeys(BENCH_COLUMNS, "")
        row["file"] = path.name
        try:
            inst, problem = _load(str(path))
        except InstanceError as exc:
            row["status"] = "input-error"
            rows.append(row)
            print(f"{path.name}: {exc}", file=sys.stderr)
            continue
        row.update(digest=digest(inst), kind=inst.kind, n=inst.n, rank=_rank(inst) or "")
        if problem.kind == "mlb":
            problem = Problem(problem.kind, problem.oracle,
                              family=make_gmatroid(inst.n, problem.family.sets, check=False),
                              partition=problem.partition)
        times = []
        try:
            # certify once, outside the timed region
            if problem.kind == "mlb":
                certify_mlb(problem.oracle, problem.family, problem.partition)
            else:
                problem = Problem(problem.kind, certify(problem.oracle, M if problem.kind == "mbb" else MNAT),
                                  problem.b)
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                run = _solve(problem, unchecked=problem.kind == "mlb")
                times.append(time.perf_counter() - t0)
        except NotCertifiedError:
            row["status"] = "refused"
            rows.append(row)
            continue
        row.update(
            status="ok", values=len(run.values), iterations=run.iterations,
            oracle_calls=run.oracle_calls, loop_oracle_calls=getattr(run, "loop_oracle_calls", ""),
            time_min=f"{min(times):.6f}", time_median=f"{statistics.median(times):.6f}",
            time_max=f"{max(times):.6f}",
        )
        rows.append(row)
    rows.sort(key=lambda r: (r["digest"], r["file"]))
    w = csv.DictWriter(sys.stdout, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mpareto", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded instance file")
    g.add_argument("kind", choices=["mnatbb", "mbb", "mlb"])
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out")
    g.add_argument("--source", help="uniform|partition|separable for *bb; bases|independent|window for mlb")
    g.add_argument("--n", type=int, default=4)
    g.add_argument("--r", type=int)
    g.add_argument("--radius", type=int, default=2)
    g.add_argument("--mode", choices=["eq", "range"])
    g.add_argument("--m", type=int, default=2)
    g.add_argument("--lam")
    g.add_argument("--xi")
    g.add_argument("--cost-min", type=int, default=0)
    g.add_argument("--cost-max", type=int, default=9)
    g.add_argument("--b-density", type=float, default=0.5)
    g.add_argument("--extra-linear", action="store_true")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="enumerate the Pareto optimal value set")
    s.add_argument("instance")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--unchecked", action="store_true", help="skip class certification")
    s.add_argument("--audit", action="store_true", help="cross-check against exhaustive oracles")
    s.add_argument("--fallback-unrestricted", action="store_true")
    s.add_argument("--backend", choices=["auto", "enumerate", "descent"], default="auto")
    s.add_argument("--timing", action="store_true", help="include wall time in JSON output")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check the instance's claimed exchange property")
    v.add_argument("instance")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle-check", help="compare solver output with brute force")
    o.add_argument("instance")
    o.set_defaults(func=cmd_oracle_check)

    b = sub.add_parser("bench", help="solve a corpus directory and print a CSV of counters")
    b.add_argument("corpus")
    b.add_argument("--repeat", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
