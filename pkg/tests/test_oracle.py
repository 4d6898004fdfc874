from hypothesis import given, strategies as st

from mpareto.oracle import (
    _nondominated_2d, _nondominated_lex, audit_run, brute_pareto_2d, brute_pareto_lex,
    level_table, supportedness_check, value_pairs,
)
from mpareto.mnatbb import solve_mnatbb

pairs = st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=12)


def test_inst_a_ground_truth(inst_a):
    assert value_pairs(inst_a.oracle, inst_a.b) == {(1, 1), (2, 1), (3, 0)}
    assert brute_pareto_2d(inst_a.oracle, inst_a.b) == {(1, 1), (3, 0)}


def test_inst_b_levels(inst_b):
    table = level_table(inst_b.oracle, inst_b.b)
    assert table.optima() == {0: 4, 1: 2, 2: 4}
    assert table.contiguous()


def test_inst_c_ground_truth(inst_c):
    assert brute_pareto_lex(inst_c.oracle, inst_c.family, inst_c.partition) == {
        (0, (2, 0)), (1, (1, 1)), (3, (0, 2))}


def test_supportedness_rejects_point_above_chord():
    full = {(0, 2), (2, 1), (3, 0)}
    # (2,1) sits above the chord from (0,2) to (3,0)
    rep = supportedness_check([(2, 1)], full)
    assert not rep.passed
    assert supportedness_check([(0, 2), (3, 0)], full).passed
    assert not supportedness_check([(5, 5)], full).passed


def test_audit_catches_doctored_run(inst_b):
    run = solve_mnatbb(inst_b.oracle, inst_b.b)
    table = level_table(inst_b.oracle, inst_b.b)
    assert audit_run(run, table).passed
    run.trajectory[0] = (run.trajectory[0][0], 99, run.trajectory[0][2])
    run.final_k = 5
    rep = audit_run(run, table)
    assert not rep.clauses["level_optimality"] and not rep.clauses["terminal_level"]


@given(pairs)
def test_nondominated_2d_law(points):
    front = _nondominated_2d(points)
    assert front
    for p in points:
        dominated = any(q[0] <= p[0] and q[1] <= p[1] and q != p for q in points)
        assert (p in front) != dominated


@given(st.sets(st.tuples(st.integers(0, 4), st.tuples(st.integers(0, 2), st.integers(0, 2))), min_size=1, max_size=10))
def test_nondominated_lex_law(points):
    front = _nondominated_lex(points)
    for g, e in points:
        dominated = any(h <= g and f <= e and (h, f) != (g, e) for h, f in points)
        assert ((g, e) in front) != dominated
