import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yshuffle.arith import INFINITY, Polynomial, RationalFunction, expand, parse_rational, residue_at, residue_sum, slot
from yshuffle.arith.series import COEFFICIENT, STANDARD, expand_two, finite_poles
from yshuffle.checks import random_rational

X = slot(0, 1)
x = Polynomial.slot(0, 1)
h = Polynomial.hbar()


def rf(text):
    return parse_rational(text)


def test_cancellation_and_equality():
    a = RationalFunction.from_factors(x * x - Polynomial.const(1), [x - Polynomial.const(1)])
    assert a.normalize().is_polynomial()
    assert a.normalize().to_polynomial() == x + Polynomial.const(1)
    assert rf("(l(0,1)-1)^-1") + rf("(l(0,1)+1)^-1") == RationalFunction.from_factors(x.scale(2), [x - Polynomial.const(1), x + Polynomial.const(1)])


def test_field_operations_round_trip():
    a = rf("(l(0,1)+h)*(l(0,1)-2)^-1")
    b = rf("(l(0,1)+3)^-2")
    assert (a * b) / b == a
    assert (a + b) - b == a
    assert (a - a).is_zero()


def test_residue_conventions_at_infinity():
    one_over_x = rf("l(0,1)^-1")
    assert residue_at(one_over_x, X, INFINITY, COEFFICIENT) == RationalFunction(1)
    assert residue_at(one_over_x, X, INFINITY, STANDARD) == RationalFunction(-1)
    assert residue_at(rf("l(0,1)^2"), X, INFINITY).is_zero()


def test_residue_at_finite_poles():
    f = rf("(l(0,1)-1)^-1*(l(0,1)-2)^-1")
    assert residue_at(f, X, 1) == RationalFunction(-1)
    assert residue_at(f, X, 2) == RationalFunction(1)
    assert residue_sum(f, X).is_zero()
    g = rf("l(0,1)^3*(l(0,1)-h)^-2")
    assert residue_at(g, X, h) == RationalFunction(h * h).scale(3)


def test_double_pole_residue_matches_derivative():
    # Res_{x=a} p(x)/(x-a)^2 = p'(a)
    g = rf("(l(0,1)^3 + 2*l(0,1))*(l(0,1)-5)^-2")
    assert residue_at(g, X, 5) == RationalFunction(3 * 25 + 2)


def test_residue_sum_zero_on_random_functions():
    rng = random.Random(7)
    for _ in range(40):
        assert residue_sum(random_rational(rng, x, 4), X).is_zero()


def test_expand_is_exact_to_order():
    f = rf("(1-l(0,1))^-1")
    s = expand(f, X, 0, 5)
    assert all(s.coefficient(k) == RationalFunction(1) for k in range(6))
    s_inf = expand(f, X, INFINITY, 4)
    # 1/(1-x) = -1/x - 1/x^2 - ... at infinity
    assert s_inf.coefficient(0).is_zero()
    assert all(s_inf.coefficient(k) == RationalFunction(-1) for k in range(1, 5))


def test_expansion_point_must_not_involve_the_variable():
    with pytest.raises(ValueError):
        expand(rf("l(0,1)^-1"), X, x, 2)


def test_finite_poles_lists_distinct_points():
    f = rf("(l(0,1)-1)^-2*(l(0,1)+h)^-1")
    assert sorted(map(str, finite_poles(f, X))) == sorted(["1", "-h"])


def test_expand_two_geometric_series():
    u, w = slot(0, 1), slot(0, 2)
    f = rf("(l(0,1)-l(0,2))^-1")
    table = expand_two(f, u, w, (3, 2))
    # 1/(u-w) = sum_{j>=0} w^j u^{-j-1}
    assert {k: str(v) for k, v in table.items()} == {(1, 0): "1", (2, 1): "1", (3, 2): "1"}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 3)), min_size=1, max_size=4, unique_by=lambda t: t[0]), st.integers(0, 5))
def test_residues_sum_to_zero(poles, top):
    factors = []
    for a, m in poles:
        factors += [x - Polynomial.const(a)] * m
    f = RationalFunction.from_factors(x**top + h, factors)
    assert residue_sum(f, X).is_zero()
