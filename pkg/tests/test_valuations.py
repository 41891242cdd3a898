from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valslice.ideals import MonomialIdeal, minimalize
from valslice.valuations import (
    MonomialValuation,
    center_ideal,
    evaluate,
    izumi_check,
    log_discrepancy,
    ord_at_origin,
)

from conftest import ideals, rationals


def test_evaluate_examples():
    assert evaluate(MonomialValuation((1, 2)), (3, 1)) == 5
    assert evaluate(MonomialValuation((1, 1)), minimalize([(2, 0), (0, 3)])) == 2
    assert evaluate(MonomialValuation((0, 0)), minimalize([(2, 0), (0, 3)])) == 0


def test_log_discrepancy_examples():
    assert log_discrepancy(MonomialValuation((1, 2))) == 3
    assert log_discrepancy(MonomialValuation((0, 0))) == 0
    assert log_discrepancy(MonomialValuation((F(1, 2), F(1, 3)))) == F(5, 6)


def test_order_examples():
    assert ord_at_origin(minimalize([(2, 0), (0, 3)])) == 2
    assert ord_at_origin(MonomialIdeal.unit(2)) == 0
    assert ord_at_origin(minimalize([(2, 3)])) == 5


def test_izumi_examples():
    r = izumi_check(MonomialValuation((1, 2)), minimalize([(2, 0), (0, 3)]))
    assert (r.lower_ok, r.upper_ok, r.order, r.lower_margin, r.upper_margin) == (True, True, 2, 0, 4)
    r = izumi_check(MonomialValuation((1, 1)), minimalize([(1, 0), (0, 1)]))
    assert (r.lower_ok, r.upper_ok, r.order) == (True, True, 1)
    r = izumi_check(MonomialValuation((1, 0)), minimalize([(3, 0)]))
    assert r.order == 3 and r.lower_margin == 0 and r.upper_margin == 0


def test_validation():
    with pytest.raises(ValueError):
        MonomialValuation((1, -1))
    with pytest.raises(ValueError):
        izumi_check(MonomialValuation((0, 0)), minimalize([(1, 0)]))
    with pytest.raises(ValueError):
        evaluate(MonomialValuation((1, 1)), (1, 2, 3))
    assert center_ideal(MonomialValuation((0, 2))) == minimalize([(0, 1)])


@given(ideals(), st.data())
def test_homogeneity(a, data):
    alpha = data.draw(st.tuples(*[rationals(0, 4)] * a.n))
    t = data.draw(rationals(0, 5))
    v = MonomialValuation(alpha)
    assert evaluate(v.scaled(t), a) == t * evaluate(v, a)
    assert log_discrepancy(v.scaled(t)) == t * log_discrepancy(v)


@given(ideals(), ideals(), st.data())
def test_valuation_axioms(a, b, data):
    b = minimalize([tuple((list(g) + [0] * a.n)[:a.n]) for g in b.gens], a.n)
    v = MonomialValuation(data.draw(st.tuples(*[rationals(0, 4)] * a.n)))
    assert v(a * b) == v(a) + v(b)
    assert v(a + b) == min(v(a), v(b))


@given(ideals(), st.data())
def test_izumi_sandwich(a, data):
    alpha = data.draw(st.tuples(*[rationals(0, 4)] * a.n).filter(any))
    r = izumi_check(MonomialValuation(alpha), a)
    assert r.lower_ok and r.upper_ok
