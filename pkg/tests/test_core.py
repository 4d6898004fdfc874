import math

import pytest
from hypothesis import given, strategies as st

from mpareto.core import (
    INF, BinaryWeights, Box, GroundSet, Transition, dominates2, dominates_mixed,
    is_finite, lex_leq, shift, supp_diff,
)
from mpareto.errors import DimensionError

vec = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


def test_infinity_is_not_finite():
    assert INF == math.inf
    assert not is_finite(INF)
    assert is_finite(0)


def test_box_basics():
    box = Box((0, -1), (2, 1))
    assert box.dim == 2
    assert box.volume == 9
    assert box.diameter == 2
    assert box.contains((2, -1))
    assert not box.contains((3, 0))
    assert Box.unit(3).volume == 8


def test_ground_set_labels():
    g = GroundSet(3, ("a", "b", "c"))
    assert g.label(1) == "b"


def test_binary_weights_split():
    b = BinaryWeights((1, 0, 0, 1))
    assert b.E1 == (0, 3)
    assert b.E0 == (1, 2)
    assert b.dot((2, 5, 5, 1)) == 3


def test_shift_exchange_and_removal():
    assert shift((1, 1, 0), Transition(0, 2)) == (0, 1, 1)
    assert shift((1, 1, 0), Transition(0, None)) == (0, 1, 0)


def test_supp_diff():
    pos, neg = supp_diff((2, 0, 1), (0, 1, 1))
    assert pos == frozenset({0})
    assert neg == frozenset({1})
    with pytest.raises(DimensionError):
        supp_diff((1, 2), (1,))


def test_dominance_examples():
    assert dominates2((1, 0), (1, 1))
    assert not dominates2((1, 1), (1, 1))
    assert not dominates2((0, 2), (1, 1))
    assert not dominates_mixed((1, (1, 1)), (0, (2, 0)))
    assert dominates_mixed((0, (1, 1)), (1, (2, 0)))


def test_lex_examples():
    assert lex_leq((0, 5), (1, 0))
    assert lex_leq((1, 1), (1, 1))
    assert not lex_leq((1, 2), (1, 1))


@given(vec, vec)
def test_lex_is_total(a, b):
    assert lex_leq(a, b) or lex_leq(b, a)
    if lex_leq(a, b) and lex_leq(b, a):
        assert a == b


@given(vec, vec, vec)
def test_lex_transitive(a, b, c):
    if lex_leq(a, b) and lex_leq(b, c):
        assert lex_leq(a, c)


@given(st.tuples(st.integers(0, 5), st.integers(0, 5)), st.tuples(st.integers(0, 5), st.integers(0, 5)))
def test_dominance_is_strict(p, q):
    assert not (dominates2(p, q) and dominates2(q, p))
    assert not dominates2(p, p)
