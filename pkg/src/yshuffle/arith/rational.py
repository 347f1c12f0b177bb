"""Rational functions whose denominators are products of linear forms.

Every denominator met in the shuffle algebra (the fac kernel, H_v, residue
kernels) is a product of forms like ``l(i,s) - l(j,t) + c*h``.  Keeping the
denominator as a multiset of normalized linear forms means we never need a
multivariate gcd: cancellation is exact trial division by one form at a time.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping

from .polynomial import Polynomial, Scalar, Variable, format_polynomial


class LinearForm:
    """A nonconstant polynomial of degree 1, scaled so its leading coefficient is 1.

    The leading variable is the smallest one in the term order (slot variables
    by (vertex, slot), then hbar).
    """

    __slots__ = ("poly", "lead", "_hash")

    def __init__(self, poly: Polynomial, lead: Variable):
        self.poly = poly
        self.lead = lead
        self._hash = hash(poly)

    @staticmethod
    def normalize(p: Polynomial) -> tuple[Fraction, "LinearForm"]:
        """Return (c, L) with p == c * L.poly."""
        if p.degree() != 1:
            raise ValueError(f"not a linear form: {p}")
        variables = sorted(p.variables())
        lead = variables[0]
        c = p.coefficient({lead: 1})
        return c, LinearForm(p.scale(1 / c), lead)

    @staticmethod
    def of(p: Polynomial) -> "LinearForm":
        c, form = LinearForm.normalize(p)
        if c != 1:
            raise ValueError(f"{p} is not normalized")
        return form

    def rest(self) -> Polynomial:
        """The form minus its leading variable."""
        return self.poly - Polynomial.var(self.lead)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and self.poly == other.poly

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_polynomial(self.poly)

    def __repr__(self) -> str:
        return f"LinearForm({self})"

    def sort_key(self) -> str:
        return str(self)


def divide_by_form(n: Polynomial, form: LinearForm) -> Polynomial | None:
    """Exact quotient n / form, or None if the form does not divide n."""
    if n.is_zero():
        return Polynomial()
    x = form.lead
    r = form.rest()
    coeffs = n.coeffs_in(x)
    top = max(coeffs)
    if top == 0:
        return None
    q: dict[int, Polynomial] = {}
    carry = coeffs[top]
    q[top - 1] = carry
    for e in range(top - 1, 0, -1):
        carry = coeffs.get(e, Polynomial()) - r * carry
        q[e - 1] = carry
    remainder = coeffs.get(0, Polynomial()) - r * carry
    if not remainder.is_zero():
        return None
    return Polynomial.from_coeffs_in(x, {e: c for e, c in q.items() if not c.is_zero()})


_POWER_CACHE: dict[tuple[LinearForm, int], Polynomial] = {}


def form_power(form: LinearForm, k: int) -> Polynomial:
    key = (form, k)
    p = _POWER_CACHE.get(key)
    if p is None:
        p = form.poly**k
        if len(_POWER_CACHE) > 4096:
            _POWER_CACHE.clear()
        _POWER_CACHE[key] = p
    return p


def forms_product(forms: Mapping[LinearForm, int]) -> Polynomial:
    out = Polynomial.const(1)
    for f, k in sorted(forms.items(), key=lambda fk: fk[0].sort_key()):
        out = out * form_power(f, k)
    return out


class RationalFunction:
    """numerator / prod(form ** mult)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial | Scalar, den: Mapping[LinearForm, int] | None = None):
        if not isinstance(num, Polynomial):
            num = Polynomial.const(num)
        den = Counter({f: k for f, k in (den or {}).items() if k})
        if any(k < 0 for k in den.values()):
            raise ValueError("negative denominator multiplicity")
        if num.is_zero():
            den = Counter()
        self.num = num
        self.den = den

    @classmethod
    def from_factors(cls, numerator: Polynomial, denominator: Iterable[Polynomial]) -> "RationalFunction":
        """numerator / prod(denominator), each denominator factor of degree <= 1."""
        num = numerator
        den: Counter = Counter()
        for p in denominator:
            if p.degree() <= 0:
                c = p.constant_term()
                if not c:
                    raise ZeroDivisionError("zero factor in denominator")
                num = num.scale(1 / c)
                continue
            c, form = LinearForm.normalize(p)
            num = num.scale(1 / c)
            den[form] += 1
        return cls(num, den)

    @classmethod
    def inverse_of(cls, p: Polynomial) -> "RationalFunction":
        return cls.from_factors(Polynomial.const(1), [p])

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalFunction(other)
        return NotImplemented

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num.scale(other), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        common = self.den | other.den
        n1 = self.num * forms_product(common - self.den)
        n2 = other.num * forms_product(common - other.den)
        return RationalFunction(n1 + n2, common)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __truediv__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num.scale(1 / Fraction(other)), self.den)
        if isinstance(other, RationalFunction) and other.is_inverse_forms():
            # dividing by 1/prod(forms) multiplies by the forms
            return RationalFunction(self.num * forms_product(other.den), self.den).scale(1 / other.num.constant_term())
        if isinstance(other, Polynomial):
            inv = RationalFunction.inverse_of(other) if other.degree() <= 1 else None
            if inv is None:
                raise ValueError("can only divide by a product of linear forms")
            return self * inv
        raise TypeError(f"cannot divide by {other!r}")

    def is_inverse_forms(self) -> bool:
        return self.num.is_constant() and not self.num.is_zero()

    def divide_by_forms(self, forms: Mapping[LinearForm, int]) -> "RationalFunction":
        return RationalFunction(self.num, self.den + Counter(forms))

    def scale(self, c: Scalar) -> "RationalFunction":
        return RationalFunction(self.num.scale(c), self.den)

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = RationalFunction(1)
        for _ in range(n):
            out = out * self
        return out

    # -- normalization and comparison -----------------------------------
    def normalize(self) -> "RationalFunction":
        """Cancel every denominator form that divides the numerator exactly."""
        num = self.num
        den = Counter(self.den)
        for form in sorted(den, key=lambda f: f.sort_key()):
            while den[form]:
                q = divide_by_form(num, form)
                if q is None:
                    break
                num = q
                den[form] -= 1
        return RationalFunction(num, +den)

    def is_polynomial(self) -> bool:
        return not self.normalize().den

    def to_polynomial(self) -> Polynomial:
        r = self.normalize()
        if r.den:
            raise ValueError(f"not a polynomial: {r}")
        return r.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def denominator_polynomial(self) -> Polynomial:
        return forms_product(self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Polynomial, int, Fraction)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        common = self.den & other.den
        lhs = self.num * forms_product(other.den - common)
        rhs = other.num * forms_product(self.den - common)
        return lhs == rhs

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable; compare with ==")

    # -- substitutions --------------------------------------------------
    def _map_forms(self, num: Polynomial, fn) -> "RationalFunction":
        den: Counter = Counter()
        for form, k in self.den.items():
            image = fn(form.poly)
            if image.degree() <= 0:
                c = image.constant_term()
                if not c:
                    raise ZeroDivisionError(f"denominator form {form} vanishes")
                num = num.scale(Fraction(1) / c**k)
                continue
            c, f = LinearForm.normalize(image)
            num = num.scale(Fraction(1) / c**k)
            den[f] += k
        return RationalFunction(num, den)

    def relabel(self, mapping: Mapping[Variable, Variable]) -> "RationalFunction":
        return self._map_forms(self.num.relabel(mapping), lambda p: p.relabel(mapping))

    def subs_hbar(self, value: Scalar) -> "RationalFunction":
        return self._map_forms(self.num.subs_hbar(value), lambda p: p.subs_hbar(value))

    def at_hbar_zero(self) -> "RationalFunction":
        return self.subs_hbar(0)

    def scale_variable(self, v: Variable, c: Scalar) -> "RationalFunction":
        return self._map_forms(self.num.scale_variable(v, c), lambda p: p.scale_variable(v, c))

    def subs(self, v: Variable, value: Polynomial) -> "RationalFunction":
        """Substitute a polynomial of degree <= 1 for a variable."""
        if value.degree() > 1:
            raise ValueError("only affine substitutions keep denominators linear")
        return self._map_forms(self.num.subs(v, value), lambda p: p.subs(v, value))

    def evaluate(self, values: Mapping[Variable, Scalar]) -> Fraction:
        d = Fraction(1)
        for form, k in self.den.items():
            d *= form.poly.evaluate(values) ** k
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(values) / d

    def variables(self) -> set[Variable]:
        out = set(self.num.variables())
        for form in self.den:
            out |= form.poly.variables()
        return out

    def degree(self) -> int:
        """numerator degree minus number of denominator forms (for homogeneous data)."""
        return self.num.degree() - sum(self.den.values())

    def __str__(self) -> str:
        if not self.den:
            return format_polynomial(self.num)
        parts = []
        for form in sorted(self.den, key=lambda f: f.sort_key()):
            k = self.den[form]
            parts.append(f"({form})" if k == 1 else f"({form})^{k}")
        return f"({format_polynomial(self.num)})/({'*'.join(parts)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"
