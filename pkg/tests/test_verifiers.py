import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mpareto.core import Box
from mpareto.errors import AxiomError, EnumerationCapError, NotCertifiedError
from mpareto.functions import (
    M, MNAT, SeparableConvexSpec, add_linear, enumerate_dom, make_base_linear,
    make_family_linear, make_separable, make_table,
)
from mpareto.instances import build_oracle, gen_matroid_linear, gen_separable
from mpareto.verifiers import certify, verify_base_axiom, verify_gmatroid, verify_m, verify_mnat


def brute_exchange(o, natural):
    """Direct pairwise check of the exchange axiom, returning the first witness."""
    dom = enumerate_dom(o)
    val = {x: o.eval(x) for x in dom}
    for x in dom:
        for y in dom:
            for u in range(o.n):
                if x[u] <= y[u]:
                    continue
                opts = [v for v in range(o.n) if x[v] < y[v]] + ([None] if natural else [])
                ok = False
                for v in opts:
                    xs = list(x); ys = list(y)
                    xs[u] -= 1; ys[u] += 1
                    if v is not None:
                        xs[v] += 1; ys[v] -= 1
                    xs, ys = tuple(xs), tuple(ys)
                    if xs in val and ys in val and val[x] + val[y] >= val[xs] + val[ys]:
                        ok = True
                        break
                if not ok:
                    return x, y, u
    return None


def test_doctored_dom_fails_both():
    o = make_table([(0, 0), (1, 1)], [0, 0], Box((0, 0), (1, 1)), MNAT)
    rm, rn = verify_m(o), verify_mnat(o)
    assert not rm.passed and not rn.passed
    assert rm.witness == brute_exchange(o, False) == ((1, 1), (0, 0), 0)
    assert rn.witness == brute_exchange(o, True)


def test_base_counterexample():
    rep = verify_base_axiom([(0, 1), (2, 3)], 4)
    assert not rep.passed
    assert rep.witness == ((0, 1), (2, 3), 0)
    with pytest.raises(AxiomError):
        make_base_linear([(0, 1), (2, 3)], [0, 0, 0, 0])


def test_gmatroid_counterexample():
    rep = verify_gmatroid([(0,), (1, 2)], 3)
    assert not rep.passed
    assert rep.witness == ((0,), (1, 2), 0)
    with pytest.raises(AxiomError):
        make_family_linear([(0,), (1, 2)], [0, 0, 0])


def test_uniform_independent_sets_pass():
    sets = [X for k in range(3) for X in itertools.combinations(range(3), k)]
    assert len(sets) == 7
    assert verify_gmatroid(sets, 3).passed


def test_certify_refuses_and_accepts():
    bad = make_table([(0, 0), (1, 1)], [0, 0], Box((0, 0), (1, 1)), MNAT)
    with pytest.raises(NotCertifiedError) as err:
        certify(bad)
    assert err.value.report is not None
    good = make_base_linear([(0, 1), (0, 2), (1, 2)], [0, 1, 2])
    assert certify(good, M).certified
    assert certify(good, MNAT).certified


def test_separable_mode_classes():
    box = Box((0, 0), (2, 2))
    eq = make_separable(SeparableConvexSpec((1, 1), (0, 0), box, 2, 2))
    rng = make_separable(SeparableConvexSpec((1, 1), (0, 0), box, 0, 4))
    assert verify_m(eq).passed
    assert not verify_m(rng).passed
    assert verify_mnat(rng).passed
    assert len(enumerate_dom(rng)) == 9


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("MPARETO_ENUM_CAP", "10")
    o = make_separable(SeparableConvexSpec((1,) * 3, (0,) * 3, Box((0,) * 3, (3,) * 3), 0, 9))
    with pytest.raises(EnumerationCapError):
        enumerate_dom(o)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4), st.integers(1, 2), st.booleans())
def test_generated_oracles_pass(seed, n, radius, eq):
    inst = gen_separable(seed, n, radius, mode="eq" if eq else "range", extra_linear=seed % 2 == 0)
    o = build_oracle(inst)
    assert verify_mnat(o).passed
    if eq:
        assert verify_m(o).passed


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=6, unique=True),
       st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_verifier_matches_brute_on_random_tables(points, values):
    o = make_table(points, values[: len(points)], Box((0, 0), (2, 2)))
    for natural, verify in ((False, verify_m), (True, verify_mnat)):
        rep = verify(o)
        witness = brute_exchange(o, natural)
        assert rep.passed == (witness is None)
        if witness is not None:
            assert rep.witness == witness


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 6))
def test_matroid_generator_passes_base_axiom(seed, n):
    inst = gen_matroid_linear(seed, n, 1 + seed % n, matroid="uniform" if seed % 2 else "partition")
    assert verify_base_axiom(inst.objective.bases, n).passed
    assert verify_m(build_oracle(inst)).passed


def test_add_linear_keeps_class():
    o = make_base_linear([(0, 1), (0, 2), (1, 2)], [0, 1, 2])
    o2 = add_linear(o, [5, -1, 0])
    assert o2.claimed_class == M
    assert o2.eval((1, 1, 0)) == o.eval((1, 1, 0)) + 4
    assert verify_m(o2).passed
