from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valslice.asymptotic import (
    FiniteStage,
    Powers,
    SubadditiveSystem,
    ValuationIdeals,
    approximation_error,
    asym_multiplier_ideal,
    asym_value,
    controlled_growth_check,
    limit_body,
    to_valfun,
)
from valslice.functions import ValFun, candidate_rays
from valslice.geometry import support_min
from valslice.ideals import MonomialIdeal, minimalize, newton_polyhedron
from valslice.multiplier import NotQpshError, is_qpsh, multiplier_ideal
from valslice.oracles import partition_term
from valslice.valuations import MonomialValuation

from conftest import ideals, qpsh_functions, rationals

A = minimalize([(2, 0), (0, 3)])
M2 = minimalize([(1, 0), (0, 1)])
X = minimalize([(1, 0)])
S = FiniteStage((X, minimalize([(2, 0), (0, 1)])))


@st.composite
def finite_stages(draw, n=None):
    """Stages a_1, then a_2 = a_1^2 + extra, which is graded by construction."""
    if n is None:
        n = draw(st.integers(1, 3))
    a1 = draw(ideals(n, 3, 2))
    extra = draw(ideals(n, 4, 2))
    return FiniteStage((a1, a1 * a1 + extra))


def graded_systems():
    return st.one_of(
        st.builds(Powers, ideals(max_exp=4)),
        finite_stages(),
        st.integers(1, 3).flatmap(lambda n: st.builds(
            ValuationIdeals, st.tuples(*[st.integers(0, 3)] * n).filter(any), rationals(F(1, 2), 2, 2))),
    )


def test_term_examples():
    assert Powers(M2).term(2) == minimalize([(2, 0), (1, 1), (0, 2)])
    assert S.term(4) == minimalize([(4, 0), (2, 1), (0, 2)])
    assert ValuationIdeals((1, 2), 1).term(3) == minimalize([(3, 0), (1, 1), (0, 2)])
    with pytest.raises(ValueError):
        S.term(0)


def test_graded_containment_checked():
    with pytest.raises(ValueError):
        FiniteStage((X, minimalize([(3, 0)])))


def test_limit_body_examples():
    assert limit_body(Powers(A)) == newton_polyhedron(A)
    assert limit_body(S).vertices == ((0, F(1, 2)), (1, 0))
    assert limit_body(ValuationIdeals((1, 2), 1)).inequalities == (((0, 1), 0), ((1, 0), 0), ((1, 2), 1))


def test_asym_value_examples():
    assert asym_value(Powers(A), (1, 1)) == 2
    assert asym_value(S, (1, 1)) == F(1, 2)
    assert [MonomialValuation((1, 1))(S.term(m)) / m for m in (1, 2, 3)] == [1, F(1, 2), F(2, 3)]
    assert asym_value(S, (1, 2)) == 1


def test_asym_multiplier_examples():
    assert asym_multiplier_ideal(Powers(A), F(5, 6)) == M2
    assert asym_multiplier_ideal(S, F(299, 100)).is_unit
    assert not asym_multiplier_ideal(S, 3).is_unit
    assert asym_multiplier_ideal(S, 0).is_unit


def test_to_valfun_examples():
    f = to_valfun(Powers(M2))
    assert all(f(u) == ValFun.log(M2)(u) for u in candidate_rays(f))
    expected = ValFun(2, (((F(1, 2), minimalize([(0, 1)])),), ((1, X),)))
    assert to_valfun(S) == expected
    assert to_valfun(ValuationIdeals((1, 2), 1)) == expected


def test_controlled_growth_examples():
    (m,) = controlled_growth_check(ValFun.log(A), [1], [(1, 1)])
    assert m.gap == 1 and m.bound == 2 and m.ok
    (m,) = controlled_growth_check(ValFun.log(M2), [4], [(1, 1)])
    assert m.gap == F(1, 4) and m.bound == F(1, 2)
    (m,) = controlled_growth_check(ValFun.zero(2), [3], [(1, 2)])
    assert m.gap == 0 and m.ok
    with pytest.raises(NotQpshError):
        controlled_growth_check(ValFun.combination([(-1, X)]), [1], [(1, 1)])


def test_approximation_error_examples():
    # J(phi) = (x, y); at the ray (3, 2): (6 - 2) / 5
    assert approximation_error(ValFun.log(A), 1) == F(4, 5)
    assert approximation_error(ValFun.zero(2), 3) == 0
    assert approximation_error(ValFun.log(M2), 2) == F(1, 4)


@given(graded_systems(), st.data())
def test_fekete_convergence(system, data):
    alpha = data.draw(st.tuples(*[st.integers(0, 4)] * system.n).filter(any))
    v = MonomialValuation(alpha)
    vals = [v(system.term(m)) for m in range(1, 17)]
    for k in range(1, 9):
        for l in range(1, 17 - k):
            assert vals[k + l - 1] <= vals[k - 1] + vals[l - 1]
    limit = asym_value(system, alpha)
    assert all(x / (m + 1) >= limit for m, x in enumerate(vals))
    # every limit body here has vertex denominators dividing 12
    assert vals[11] / 12 == limit


@given(finite_stages(), st.integers(1, 10))
def test_dynamic_programme_matches_partitions(system, m):
    assert system.term(m) == partition_term(system, m)


@given(graded_systems(), rationals(0, 3))
def test_asymptotic_ideal_matches_ray_criterion(system, t):
    phi = to_valfun(system)
    assert is_qpsh(phi)
    assert asym_multiplier_ideal(system, t) == multiplier_ideal(phi, t)
    for m in (1, 2, 6):
        finite = multiplier_ideal(ValFun.log(system.term(m), F(1, m)), t)
        assert asym_multiplier_ideal(system, t).contains(finite)


@given(graded_systems())
def test_to_valfun_evaluates_to_asymptotic_value(system):
    phi = to_valfun(system)
    for u in candidate_rays(phi):
        assert phi(u) == -asym_value(system, u)


@given(qpsh_functions(), st.lists(st.tuples(st.sampled_from([F(1, 2), F(1), F(3, 2)]),
                                             st.sampled_from([F(1, 2), F(1), F(3, 2)])), max_size=4))
def test_subadditive_system(phi, pairs):
    system = SubadditiveSystem(phi)
    assert system(0) == MonomialIdeal.unit(phi.n)
    assert system.violations(pairs) == []


@given(qpsh_functions(), st.data())
def test_controlled_growth(phi, data):
    ts = data.draw(st.lists(rationals(F(1, 4), 8, 4), min_size=1, max_size=3))
    vs = data.draw(st.lists(st.tuples(*[st.integers(0, 5)] * phi.n).filter(any), min_size=1, max_size=3))
    assert all(m.ok for m in controlled_growth_check(phi, ts, vs))


@given(qpsh_functions(max_exp=4))
def test_approximation_error_bound_and_monotone(phi):
    errs = [approximation_error(phi, 2 ** k) for k in range(5)]
    assert all(e < F(1, 2 ** k) for k, e in enumerate(errs))
    assert all(a >= b for a, b in zip(errs, errs[1:]))
