from fractions import Fraction

import pytest

from yshuffle.arith import Polynomial, RationalFunction, parse_polynomial
from yshuffle.arith.series import STANDARD
from yshuffle.pairing import (
    RankOneElement,
    cartan_ratio,
    pair_cartan_series,
    pair_rank_one,
    pairing_kernel,
    swap_product_table,
)
from yshuffle.quiver import DimensionVector


@pytest.mark.parametrize("r", range(-4, 5))
@pytest.mark.parametrize("s", range(-4, 5))
def test_calibration(r, s):
    value = pair_rank_one(RankOneElement.power(0, r), RankOneElement.power(0, s))
    expected = (-1) ** (s % 2) if r + s == -1 else 0
    assert value == RationalFunction(expected)


def test_standard_convention_flips_sign():
    f, g = RankOneElement.power(0, 0), RankOneElement.power(0, -1)
    assert pair_rank_one(f, g) == RationalFunction(-1)
    assert pair_rank_one(f, g, STANDARD) == RationalFunction(1)


def test_weight_orthogonality():
    assert pair_rank_one(RankOneElement.power(0, 0), RankOneElement.power(1, -1)).is_zero()


def test_bilinearity():
    x = Polynomial.slot(0, 1)
    h = Polynomial.hbar()
    a = RankOneElement(0, RationalFunction(x * x + h * x))
    b = RankOneElement(0, RationalFunction.inverse_of(x) ** 3)
    c = RankOneElement(0, RationalFunction.inverse_of(x - h))
    bc = RankOneElement(0, b.value.scale(2) + c.value)
    assert pair_rank_one(a, bc) == pair_rank_one(a, b).scale(2) + pair_rank_one(a, c)


def test_foreign_variables_rejected():
    with pytest.raises(ValueError):
        RankOneElement(0, RationalFunction(Polynomial.slot(1, 1)))


def test_cartan_ratio_and_series(a2aff):
    u_w = parse_polynomial("l(0,1) - l(0,2)")
    h = Polynomial.hbar()
    assert cartan_ratio(0, a2aff) == RationalFunction.from_factors(u_w + h, [u_w - h])
    table = pair_cartan_series(0, a2aff, (3, 2))
    assert table[(0, 0)] == RationalFunction(1)
    assert table[(1, 0)] == RationalFunction(h.scale(2))
    # (u-w+h)/(u-w-h) = 1 + 2h/(u-w-h) = 1 + 2h sum_{n>=0} (w+h)^n u^{-n-1}
    assert table[(2, 1)] == RationalFunction(h.scale(2))


def test_swap_product_is_one(a2aff, a1):
    for q in (a2aff, a1):
        assert swap_product_table(0, q, (4, 4)) == {(0, 0): RationalFunction(1)}


def test_hbar_zero_degeneration(a2aff):
    table = pair_cartan_series(0, a2aff, (3, 3))
    degenerate = {k: v.at_hbar_zero().normalize() for k, v in table.items()}
    assert {k: v for k, v in degenerate.items() if not v.is_zero()} == {(0, 0): RationalFunction(1)}
    f, g = RankOneElement.power(0, 2), RankOneElement(0, RationalFunction.inverse_of(Polynomial.slot(0, 1) - Polynomial.hbar()) ** 3)
    assert pair_rank_one(f, g).at_hbar_zero() == pair_rank_one(RankOneElement.power(0, 2), RankOneElement.power(0, -3))


def test_pairing_kernel(a2aff):
    v = DimensionVector({0: 2})
    d = parse_polynomial("l(0,1) - l(0,2)")
    h = Polynomial.hbar()
    expected = RationalFunction.from_factors(d * d - h * h, [d, d])
    assert pairing_kernel(v, a2aff) == expected
    assert pairing_kernel(DimensionVector({0: 1}), a2aff) == RationalFunction(1)
    assert pairing_kernel(DimensionVector(), a2aff) == RationalFunction(1)
