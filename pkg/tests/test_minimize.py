import pytest
from hypothesis import given, settings, strategies as st

from mpareto.core import BinaryWeights, Box
from mpareto.errors import DomainError
from mpareto.functions import enumerate_dom, make_table
from mpareto.instances import build_oracle, gen_matroid_linear, gen_separable
from mpareto.minimize import find_start, min_b_then_min_h, minimize, neighbourhood, steepest_descent


def test_neighbourhood_order_puts_dummy_last():
    moves = neighbourhood(2)
    assert moves == [(0, 1), (0, None), (1, 0), (1, None), (None, 0), (None, 1)]
    assert neighbourhood(3, exchange_only=True) == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]


def test_minimize_inst_b(inst_b):
    x, val, trace = minimize(inst_b.oracle)
    assert (x, val) == ((1, 1), 2)
    assert trace.steps == 0


def test_start_outside_dom():
    o = make_table([(0, 0)], [0], Box((0, 0), (1, 1)))
    with pytest.raises(DomainError):
        steepest_descent(o, (1, 1))


def test_find_start_scans_when_missing():
    o = make_table([(1, 0)], [3], Box((0, 0), (1, 1)))
    assert find_start(o) == (1, 0)


def test_level_minimum_inst_a(inst_a):
    lm = min_b_then_min_h(inst_a.oracle, inst_a.b)
    # the only base avoiding element 0 is {1, 2}
    assert lm == ((0, 1, 1), 3, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4), st.integers(1, 3), st.booleans())
def test_descent_reaches_global_min(seed, n, radius, eq):
    o = build_oracle(gen_separable(seed, n, radius, mode="eq" if eq else "range"))
    _, val, _ = minimize(o)
    assert val == min(o.eval(x) for x in enumerate_dom(o))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 6))
def test_descent_backend_matches_scan(seed, n):
    if seed % 2:
        inst = gen_matroid_linear(seed, n, 1 + seed % n)
    else:
        inst = gen_separable(seed, min(n, 4), 2, mode="eq")
    o, b = build_oracle(inst), BinaryWeights(inst.b)
    scan = min_b_then_min_h(o, b, "enumerate")
    desc = min_b_then_min_h(o, b, "descent")
    assert (scan.value, scan.k) == (desc.value, desc.k)
    assert b.dot(desc.point) == desc.k and o.eval(desc.point) == desc.value
