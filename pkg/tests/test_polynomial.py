from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yshuffle.arith import HBAR, Polynomial, parse_polynomial, slot, symmetrize, symmetry_violation
from yshuffle.arith.polynomial import format_polynomial, group_order

VARS = [Polynomial.hbar(), Polynomial.slot(0, 1), Polynomial.slot(0, 2), Polynomial.slot(1, 1)]


@st.composite
def polynomials(draw, max_terms=4):
    p = Polynomial()
    for _ in range(draw(st.integers(0, max_terms))):
        c = Fraction(draw(st.integers(-20, 20)), draw(st.integers(1, 6)))
        m = Polynomial.const(c)
        for v in draw(st.lists(st.sampled_from(VARS), max_size=3)):
            m = m * v
        p = p + m
    return p


@settings(max_examples=150, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial()
    assert a * Polynomial.const(1) == a


@settings(max_examples=150, deadline=None)
@given(polynomials())
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p)) == p


@settings(max_examples=100, deadline=None)
@given(polynomials(), st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_evaluation_is_a_homomorphism(p, t):
    q = p * p + p
    point = {HBAR: t, slot(0, 1): Fraction(2), slot(0, 2): Fraction(-3), slot(1, 1): Fraction(1, 2)}
    assert q.evaluate(point) == p.evaluate(point) ** 2 + p.evaluate(point)


def test_degrees():
    p = parse_polynomial("h^2*l(0,1) + l(0,1)^2*l(1,1)")
    assert p.degree() == 3
    assert p.is_homogeneous()
    assert p.hbar_order() == 0
    assert p.lambda_degree() == 3
    assert parse_polynomial("h*l(0,1) + h^2").hbar_order() == 1
    assert p.at_hbar_zero() == parse_polynomial("l(0,1)^2*l(1,1)")


def test_coefficients_stay_exact():
    p = Polynomial.const(Fraction(1, 3)) * Polynomial.slot(0, 1)
    q = p + p + p
    assert q == Polynomial.slot(0, 1)
    assert q.den == 1


def test_symmetrize_is_invariant_and_scales_symmetric_input():
    v = {0: 2, 1: 1}
    p = parse_polynomial("l(0,1)^2*l(1,1) + h*l(0,2)")
    s = symmetrize(p, v)
    assert symmetry_violation(s, v) is None
    e = parse_polynomial("l(0,1) + l(0,2)")
    assert symmetrize(e, v) == e.scale(group_order(v))


def test_symmetry_violation_names_the_transposition():
    assert symmetry_violation(parse_polynomial("l(0,1)"), {0: 2}) == (0, 1, 2)
    assert symmetry_violation(parse_polynomial("l(0,1)*l(0,2)"), {0: 2}) is None


def test_exponent_overflow_is_rejected():
    with pytest.raises(OverflowError):
        Polynomial.slot(0, 1) ** 5000


def test_relabel_and_subs():
    p = parse_polynomial("l(0,1)^2 + h*l(0,2)")
    swapped = p.relabel({slot(0, 1): slot(0, 2), slot(0, 2): slot(0, 1)})
    assert swapped == parse_polynomial("l(0,2)^2 + h*l(0,1)")
    assert p.subs(slot(0, 1), parse_polynomial("l(0,2) + 1")) == parse_polynomial("(l(0,2)+1)^2 + h*l(0,2)")
