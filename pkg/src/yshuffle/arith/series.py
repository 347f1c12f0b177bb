"""Truncated Laurent expansions in one variable and residues.

A rational function is expanded in a local parameter ``t``: ``t = x - p`` at a
finite point and ``t = 1/x`` at infinity.  Coefficients are rational functions
in the remaining variables.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .polynomial import Polynomial, Scalar, Variable
from .rational import RationalFunction

INFINITY = "infinity"

# Residue-at-infinity conventions.  "coefficient": +[x^-1] coefficient of the
# expansion at infinity, which gives Res(x^r (-x)^s dx) = (-1)^s for r+s = -1.
# "standard": the usual complex-analytic sign, -[x^-1], for which the residues
# of a rational differential over all of P^1 sum to zero.
COEFFICIENT = "coefficient"
STANDARD = "standard"


def _binom_neg(m: int, n: int) -> int:
    """Coefficient of y^n in (1 + y)^(-m)."""
    return (-1) ** n * comb(m + n - 1, n)


@dataclass
class LaurentSeries:
    """sum_e coeffs[e] * t^e, known exactly for every exponent <= order."""

    variable: str
    coeffs: dict[int, RationalFunction] = field(default_factory=dict)
    order: int = 0

    def __post_init__(self) -> None:
        self.coeffs = {e: c for e, c in self.coeffs.items() if e <= self.order and not c.is_zero()}

    def valuation(self) -> int:
        """Lowest exponent present; order + 1 if the known part is zero."""
        return min(self.coeffs, default=self.order + 1)

    def coefficient(self, e: int) -> RationalFunction:
        if e > self.order:
            raise ValueError(f"exponent {e} is beyond the truncation order {self.order}")
        return self.coeffs.get(e, RationalFunction(0))

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        va, vb = self.valuation(), other.valuation()
        order = min(self.order + vb, other.order + va)
        out: dict[int, RationalFunction] = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                if e > order:
                    continue
                term = ca * cb
                out[e] = out[e] + term if e in out else term
        return LaurentSeries(self.variable, out, order)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return LaurentSeries(self.variable, out, order)

    def normalized(self) -> "LaurentSeries":
        return LaurentSeries(self.variable, {e: c.normalize() for e, c in self.coeffs.items()}, self.order)

    def __str__(self) -> str:
        terms = [f"({self.coeffs[e]})*{self.variable}^{e}" for e in sorted(self.coeffs)]
        return " + ".join(terms) + f" + O({self.variable}^{self.order + 1})"


def _split_linear(p: Polynomial, x: Variable) -> tuple[Fraction, Polynomial]:
    """Write a degree-1 polynomial as a*x + b with b free of x."""
    coeffs = p.coeffs_in(x)
    a = coeffs.get(1, Polynomial()).constant_term()
    return a, coeffs.get(0, Polynomial())


def _unit_series(name: str, c: Polynomial, a: Scalar, m: int, order: int) -> LaurentSeries:
    """(c + a t)^(-m) around t = 0 with c a nonzero polynomial of degree <= 1."""
    inv_c = RationalFunction.inverse_of(c) if c.degree() >= 1 else RationalFunction(1 / c.constant_term())
    base = inv_c**m
    ratio = inv_c * a  # a / c
    out = {}
    power = RationalFunction(1)
    for n in range(order + 1):
        if n:
            power = power * ratio
        out[n] = (base * power).scale(_binom_neg(m, n))
    return LaurentSeries(name, out, order)


def _numerator_at(num: Polynomial, x: Variable, point: Polynomial) -> dict[int, Polynomial]:
    """Coefficients of N(point + t) as a polynomial in t."""
    coeffs = num.coeffs_in(x)
    out: dict[int, Polynomial] = {}
    for e, c in coeffs.items():
        ppow = Polynomial.const(1)
        powers = [ppow]
        for _ in range(e):
            ppow = ppow * point
            powers.append(ppow)
        for k in range(e + 1):
            term = c * powers[e - k] * comb(e, k)
            out[k] = out[k] + term if k in out else term
    return {k: p for k, p in out.items() if not p.is_zero()}


def expand(rf: RationalFunction, x: Variable, point, order: int) -> LaurentSeries:
    """Laurent expansion of rf in x at ``point`` (a polynomial of degree <= 1, or INFINITY).

    The result is exact for all exponents of the local parameter up to ``order``.
    """
    if point == INFINITY:
        return _expand_at_infinity(rf, x, order)
    if not isinstance(point, Polynomial):
        point = Polynomial.const(point)
    if point.degree() > 1:
        raise ValueError("expansion points must be affine in the other variables")
    if x in point.variables():
        raise ValueError("the expansion point may not involve the expansion variable")
    name = f"({x} - ({point}))"

    pole_order = 0
    scale = Fraction(1)
    units: list[tuple[Polynomial, Fraction, int]] = []
    const_den: Counter = Counter()
    for form, m in rf.den.items():
        a, b = _split_linear(form.poly, x)
        if a == 0:
            const_den[form] += m
            continue
        c = point.scale(a) + b
        if c.is_zero():
            pole_order += m
            scale /= a**m
        else:
            units.append((c, a, m))

    num_coeffs = _numerator_at(rf.num, x, point)
    # all non-pole factors have valuation >= 0, so truncating each at
    # order + pole_order is enough
    rel = order + pole_order
    if rel < 0:
        return LaurentSeries(name, {}, order)
    series = LaurentSeries(
        name,
        {k - pole_order: RationalFunction(p, const_den).scale(scale) for k, p in num_coeffs.items()},
        order,
    )
    for c, a, m in units:
        series = series * _unit_series(name, c, a, m, rel)
    return LaurentSeries(name, series.coeffs, order)


def _expand_at_infinity(rf: RationalFunction, x: Variable, order: int) -> LaurentSeries:
    name = f"1/{x}"
    total = 0
    scale = Fraction(1)
    units: list[tuple[Polynomial, Fraction, int]] = []
    const_den: Counter = Counter()
    for form, m in rf.den.items():
        a, b = _split_linear(form.poly, x)
        if a == 0:
            const_den[form] += m
            continue
        # (a x + b)^-m = t^m a^-m (1 + (b/a) t)^-m
        total += m
        scale /= a**m
        if not b.is_zero():
            units.append((b.scale(1 / a), m))
    num_coeffs = rf.num.coeffs_in(x)
    top = max(num_coeffs, default=0)
    valuation = total - top
    rel = order - valuation
    if rel < 0:
        return LaurentSeries(name, {}, order)
    series = LaurentSeries(
        name,
        {total - e: RationalFunction(p, const_den).scale(scale) for e, p in num_coeffs.items()},
        order,
    )
    one = Polynomial.const(1)
    for ratio, m in units:
        # (1 + ratio*t)^-m with ratio polynomial: coefficients stay polynomial
        coeffs = {}
        power = one
        for n in range(rel + 1):
            if n:
                power = power * ratio
            coeffs[n] = RationalFunction(power.scale(_binom_neg(m, n)))
        series = series * LaurentSeries(name, coeffs, rel)
    return LaurentSeries(name, series.coeffs, order)


def residue_at(rf: RationalFunction, x: Variable, point, convention: str = COEFFICIENT) -> RationalFunction:
    """Residue of rf dx at a finite point or at INFINITY.

    At infinity the ``convention`` decides the sign (see module constants).
    """
    if point == INFINITY:
        s = _expand_at_infinity(rf, x, 1)
        c = s.coefficient(1)  # t^1 = x^-1
        if convention == COEFFICIENT:
            return c.normalize()
        if convention == STANDARD:
            return (-c).normalize()
        raise ValueError(f"unknown residue convention {convention!r}")
    return expand(rf, x, point, -1).coefficient(-1).normalize()


def finite_poles(rf: RationalFunction, x: Variable) -> list[Polynomial]:
    """Distinct finite poles of rf in x (before cancellation), as affine expressions."""
    seen: list[Polynomial] = []
    for form in sorted(rf.den, key=lambda f: f.sort_key()):
        a, b = _split_linear(form.poly, x)
        if a == 0:
            continue
        p = b.scale(-1 / a)
        if p not in seen:
            seen.append(p)
    return seen


def residue_sum(rf: RationalFunction, x: Variable) -> RationalFunction:
    """Sum of the residues over all of P^1 with the standard sign at infinity (always 0)."""
    total = residue_at(rf, x, INFINITY, STANDARD)
    for p in finite_poles(rf, x):
        total = total + residue_at(rf, x, p)
    return total.normalize()


def expand_two(rf: RationalFunction, u: Variable, w: Variable, orders: tuple[int, int]) -> dict[tuple[int, int], RationalFunction]:
    """Iterated expansion in the region |u| >> |w|: first in 1/u at u = infinity,
    then each coefficient in w around w = 0.

    Returns {(i, j): c} meaning c * u^(-i) * w^j for 0 <= i <= M, 0 <= j <= N.
    Coefficients are rational in the remaining variables only.
    """
    m_order, n_order = orders
    if m_order < 0 or n_order < 0:
        raise ValueError("truncation orders must be nonnegative")
    outer = _expand_at_infinity(rf, u, m_order)
    table: dict[tuple[int, int], RationalFunction] = {}
    for i in range(min(outer.coeffs, default=0), m_order + 1):
        c = outer.coefficient(i)
        if c.is_zero():
            continue
        inner = expand(c, w, Polynomial.const(0), n_order)
        for j in range(min(inner.coeffs, default=0), n_order + 1):
            cj = inner.coefficient(j).normalize()
            if not cj.is_zero():
                table[(i, j)] = cj
    return table
