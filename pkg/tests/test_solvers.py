import pytest
from hypothesis import given, settings, strategies as st

from mpareto.core import BinaryWeights, Box, Transition
from mpareto.errors import InvariantViolation, NotCertifiedError
from mpareto.functions import M, make_table
from mpareto.instances import build_problem, gen_matroid_linear, gen_separable
from mpareto.mbb import candidate_sets, restricted_min_transition, solve_mbb
from mpareto.mnatbb import UNCHECKED_WARNING, min_transition, solve_mnatbb, transitions
from mpareto.oracle import audit_run, brute_pareto_2d, level_table, supportedness_check, value_pairs
from mpareto.verifiers import certify


def test_transitions_inst_a(inst_a):
    assert transitions(inst_a.oracle, inst_a.b, (1, 1, 0)) == [Transition(0, 2)]
    assert min_transition(inst_a.oracle, inst_a.b, (1, 1, 0)) == (Transition(0, 2), 2)


def test_transitions_inst_b(inst_b):
    assert transitions(inst_b.oracle, inst_b.b, (1, 1)) == [Transition(0, 1)]
    assert min_transition(inst_b.oracle, inst_b.b, (1, 1)) == (Transition(0, 1), 2)


def test_no_transition_at_bottom(inst_a):
    assert min_transition(inst_a.oracle, inst_a.b, (0, 1, 1)) is None


def test_candidate_sets(inst_a, inst_b):
    assert candidate_sets(inst_a.b, (1, 1, 0), (0, 1, 1)) == ([0], [2])
    assert candidate_sets(inst_b.b, (1, 1), (0, 2)) == ([0], [1])
    assert restricted_min_transition(inst_b.oracle, inst_b.b, (1, 1), (0, 2)) == (Transition(0, 1), 2)


@pytest.mark.parametrize("solver", [solve_mnatbb, solve_mbb])
def test_micro_instances(solver, inst_a, inst_b):
    for p in (inst_a, inst_b):
        run = solver(p.oracle, p.b)
        assert set(run.values) == brute_pareto_2d(p.oracle, p.b)
        assert [v.k for v in run.values] == sorted((v.k for v in run.values), reverse=True)


def test_unchecked_warns_and_refuses():
    o = make_table([(0, 0), (1, 1)], [0, 0], Box((0, 0), (1, 1)), M)
    b = BinaryWeights((1, 0))
    with pytest.raises(NotCertifiedError):
        solve_mnatbb(o, b)
    run = solve_mnatbb(o, b, unchecked=True)
    assert run.warning == UNCHECKED_WARNING


def test_restricted_invariant_raises():
    # dom {(1,0),(0,1)} with b=(1,1): the target has the same level, so a
    # doctored target leaves nothing in the candidate product
    o = make_table([(1, 0), (0, 1)], [0, 0], Box((0, 0), (1, 1)), M)
    with pytest.raises(InvariantViolation):
        restricted_min_transition(o, BinaryWeights((1, 1)), (1, 0), (0, 1))


def _instance(seed, m_convex):
    if seed % 2 == 0:
        n = 3 + seed % 5
        return gen_matroid_linear(seed, n, 1 + seed % n, matroid="uniform" if seed % 4 == 0 else "partition",
                                  kind="mbb" if m_convex else "mnatbb")
    return gen_separable(seed, 2 + seed % 3, 1 + seed % 3, mode="eq" if m_convex else "range")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_mnatbb_matches_brute(seed):
    p = build_problem(_instance(seed, False))
    run = solve_mnatbb(p.oracle, p.b)
    assert set(run.values) == brute_pareto_2d(p.oracle, p.b)
    assert audit_run(run, level_table(p.oracle, p.b)).passed
    assert supportedness_check(run.values, value_pairs(p.oracle, p.b)).passed
    assert run.iterations == run.initial_k - run.final_k


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_mbb_triple_agreement(seed):
    p = build_problem(_instance(seed, True))
    o = certify(p.oracle, M)
    r1 = solve_mbb(o, p.b, track_unrestricted=True)
    r2 = solve_mnatbb(o, p.b)
    assert set(r1.values) == set(r2.values) == brute_pareto_2d(o, p.b)
    assert [c for _, c in r1.transitions_taken] == r1.unrestricted_costs
    assert audit_run(r1, level_table(o, p.b)).passed


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000), st.integers(2, 8))
def test_mbb_loop_calls_bounded_on_matroids(seed, n):
    r = 1 + seed % n
    p = build_problem(gen_matroid_linear(seed, n, r))
    run = solve_mbb(p.oracle, p.b)
    assert run.loop_oracle_calls <= 2 * r ** 3
