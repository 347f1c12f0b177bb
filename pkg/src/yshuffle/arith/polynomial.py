"""Sparse multivariate polynomials over Q in hbar and the slot variables l(k, s).

Coefficients are kept as integers over one common positive denominator, so
the hot loops in :mod:`yshuffle._kernels` never touch ``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping

from .. import _kernels as K

Scalar = int | Fraction

HBAR_KIND = "hbar"
SLOT_KIND = "slot"


def _cantor(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


@lru_cache(maxsize=None)
def _uncantor(z: int) -> tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


@dataclass(frozen=True, order=False)
class Variable:
    """Either hbar or a slot variable l(vertex, slot) with slot >= 1."""

    kind: str
    vertex: int | None = None
    slot: int | None = None

    def __post_init__(self) -> None:
        if self.kind == HBAR_KIND:
            if self.vertex is not None or self.slot is not None:
                raise ValueError("hbar carries no vertex/slot")
        elif self.kind == SLOT_KIND:
            if not isinstance(self.vertex, int) or self.vertex < 0:
                raise ValueError(f"vertex id must be a nonnegative integer, got {self.vertex!r}")
            if not isinstance(self.slot, int) or self.slot < 1:
                raise ValueError(f"slot index must be >= 1, got {self.slot!r}")
        else:
            raise ValueError(f"unknown variable kind {self.kind!r}")

    @property
    def index(self) -> int:
        if self.kind == HBAR_KIND:
            return 0
        return 1 + _cantor(self.vertex, self.slot - 1)

    @property
    def shift(self) -> int:
        return self.index * K.FIELD_BITS

    @staticmethod
    def from_index(i: int) -> "Variable":
        if i == 0:
            return HBAR
        k, s = _uncantor(i - 1)
        return slot(k, s + 1)

    def sort_key(self) -> tuple:
        # term order: (vertex, slot) lexicographic, hbar last
        if self.kind == HBAR_KIND:
            return (1, 0, 0)
        return (0, self.vertex, self.slot)

    def __lt__(self, other: "Variable") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind == HBAR_KIND:
            return "h"
        return f"l({self.vertex},{self.slot})"


HBAR = Variable(HBAR_KIND)


@lru_cache(maxsize=4096)
def slot(vertex: int, s: int) -> Variable:
    return Variable(SLOT_KIND, vertex, s)


def decode_monomial(m: int) -> dict[Variable, int]:
    out = {}
    i = 0
    while m:
        e = m & K.FIELD_MASK
        if e:
            out[Variable.from_index(i)] = e
        m >>= K.FIELD_BITS
        i += 1
    return out


def encode_monomial(exps: Mapping[Variable, int]) -> int:
    m = 0
    for v, e in exps.items():
        if e < 0:
            raise ValueError("negative exponent in a polynomial monomial")
        if e > K.FIELD_MASK:
            raise OverflowError(f"exponent {e} exceeds the packed field width")
        m += e << v.shift
    return m


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported scalar {c!r}")


class Polynomial:
    """Immutable sparse polynomial ``terms / den`` with integer ``terms``."""

    __slots__ = ("_terms", "_den", "_hash", "_maxexp")

    def __init__(self, terms: dict[int, int] | None = None, den: int = 1, *, _normalized: bool = False):
        terms = {} if terms is None else terms
        if not _normalized:
            if den == 0:
                raise ZeroDivisionError("polynomial with zero denominator")
            terms = {m: c for m, c in terms.items() if c}
            if den < 0:
                den = -den
                terms = {m: -c for m, c in terms.items()}
            if not terms:
                den = 1
            elif den != 1:
                g = den
                for c in terms.values():
                    g = math.gcd(g, c)
                    if g == 1:
                        break
                if g != 1:
                    den //= g
                    terms = {m: c // g for m, c in terms.items()}
        self._terms = terms
        self._den = den
        self._hash = None
        self._maxexp = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return cls()
        return cls({0: c.numerator}, c.denominator)

    @classmethod
    def var(cls, v: Variable, power: int = 1) -> "Polynomial":
        return cls({encode_monomial({v: power}): 1}, 1, _normalized=True)

    @classmethod
    def hbar(cls) -> "Polynomial":
        return cls.var(HBAR)

    @classmethod
    def slot(cls, vertex: int, s: int, power: int = 1) -> "Polynomial":
        return cls.var(slot(vertex, s), power)

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Mapping[Variable, int], Scalar]]) -> "Polynomial":
        coeffs: dict[int, Fraction] = {}
        for exps, c in items:
            m = encode_monomial(exps)
            coeffs[m] = coeffs.get(m, Fraction(0)) + _as_fraction(c)
        return cls._from_fractions(coeffs)

    @classmethod
    def _from_fractions(cls, coeffs: Mapping[int, Fraction]) -> "Polynomial":
        coeffs = {m: c for m, c in coeffs.items() if c}
        if not coeffs:
            return cls()
        den = 1
        for c in coeffs.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return cls({m: int(c * den) for m, c in coeffs.items()}, den)

    # -- raw access -----------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return self._terms

    @property
    def den(self) -> int:
        return self._den

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterator[tuple[dict[Variable, int], Fraction]]:
        for m, c in self._terms.items():
            yield decode_monomial(m), Fraction(c, self._den)

    def coefficient(self, exps: Mapping[Variable, int]) -> Fraction:
        return Fraction(self._terms.get(encode_monomial(exps), 0), self._den)

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get(0, 0), self._den)

    def is_constant(self) -> bool:
        return all(m == 0 for m in self._terms)

    def variables(self) -> set[Variable]:
        found: set[Variable] = set()
        for m in self._terms:
            found.update(decode_monomial(m))
        return found

    def max_exponent(self) -> int:
        if self._maxexp is None:
            self._maxexp = K.max_field(self._terms)
        return self._maxexp

    # -- ring operations ------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            acc = dict(self._terms)
            K.add_scaled(acc, other._terms, 1)
            return Polynomial(acc, d1)
        g = math.gcd(d1, d2)
        den = d1 // g * d2
        acc = K.scale(self._terms, den // d1)
        K.add_scaled(acc, other._terms, den // d2)
        return Polynomial(acc, den)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()}, self._den, _normalized=True)

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self._terms or not other._terms:
            return Polynomial()
        if self.max_exponent() + other.max_exponent() > K.FIELD_MASK:
            raise OverflowError("product exponent exceeds the packed field width")
        return Polynomial(K.mul(self._terms, other._terms), self._den * other._den)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial()
        return Polynomial(K.scale(self._terms, c.numerator), self._den * c.denominator)

    def __truediv__(self, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        return self.scale(1 / c)

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._den == other._den and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._terms.items()), self._den))
        return self._hash

    # -- degrees --------------------------------------------------------
    def degree(self) -> int:
        """Total degree in all variables (hbar included); -1 for zero."""
        if not self._terms:
            return -1
        return max(K.monomial_degree(m) for m in self._terms)

    def degree_in(self, v: Variable) -> int:
        if not self._terms:
            return -1
        s = v.shift
        return max((m >> s) & K.FIELD_MASK for m in self._terms)

    def hbar_order(self) -> int:
        """Smallest hbar exponent appearing; -1 for zero."""
        if not self._terms:
            return -1
        return min(m & K.FIELD_MASK for m in self._terms)

    def lambda_degree(self) -> int:
        if not self._terms:
            return -1
        return max(K.monomial_degree(m >> K.FIELD_BITS) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {K.monomial_degree(m) for m in self._terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict[int, int]] = {}
        for m, c in self._terms.items():
            parts.setdefault(K.monomial_degree(m), {})[m] = c
        return {d: Polynomial(t, self._den) for d, t in sorted(parts.items())}

    # -- substitutions --------------------------------------------------
    def relabel(self, mapping: Mapping[Variable, Variable]) -> "Polynomial":
        moves = tuple((a.shift, b.shift) for a, b in mapping.items() if a != b)
        if not moves:
            return self
        if self.max_exponent() * 2 > K.FIELD_MASK:
            raise OverflowError("relabel could overflow a packed field")
        return Polynomial(K.relabel(self._terms, moves), self._den)

    def subs_hbar(self, value: Scalar) -> "Polynomial":
        return self.subs(HBAR, Polynomial.const(value))

    def at_hbar_zero(self) -> "Polynomial":
        return Polynomial({m: c for m, c in self._terms.items() if not m & K.FIELD_MASK}, self._den)

    def scale_variable(self, v: Variable, c: Scalar) -> "Polynomial":
        """Substitute v -> c*v."""
        c = _as_fraction(c)
        s = v.shift
        out: dict[int, Fraction] = {}
        for m, coeff in self._terms.items():
            e = (m >> s) & K.FIELD_MASK
            out[m] = Fraction(coeff, self._den) * c**e
        return Polynomial._from_fractions(out)

    def coeffs_in(self, v: Variable) -> dict[int, "Polynomial"]:
        """Write self = sum_e coeff_e * v^e; coefficients do not involve v."""
        groups = K.split_var(self._terms, v.shift)
        return {e: Polynomial(t, self._den) for e, t in sorted(groups.items())}

    @classmethod
    def from_coeffs_in(cls, v: Variable, coeffs: Mapping[int, "Polynomial"]) -> "Polynomial":
        out = cls()
        s = v.shift
        for e, c in coeffs.items():
            if e > K.FIELD_MASK:
                raise OverflowError("exponent exceeds the packed field width")
            shifted = {m + (e << s): coef for m, coef in c._terms.items()}
            out = out + Polynomial(shifted, c._den, _normalized=True)
        return out

    def subs(self, v: Variable, value: "Polynomial") -> "Polynomial":
        coeffs = self.coeffs_in(v)
        if not coeffs:
            return Polynomial()
        # Horner in v
        top = max(coeffs)
        acc = Polynomial()
        for e in range(top, -1, -1):
            acc = acc * value
            if e in coeffs:
                acc = acc + coeffs[e]
        return acc

    def evaluate(self, values: Mapping[Variable, Scalar]) -> Fraction:
        total = Fraction(0)
        for exps, c in self.items():
            t = c
            for v, e in exps.items():
                if v not in values:
                    raise KeyError(f"no value supplied for {v}")
                t *= _as_fraction(values[v]) ** e
            total += t
        return total

    # -- printing -------------------------------------------------------
    def sorted_items(self) -> list[tuple[dict[Variable, int], Fraction]]:
        items = list(self.items())
        allvars = sorted({v for exps, _ in items for v in exps})
        items.sort(key=lambda it: tuple(it[0].get(v, 0) for v in allvars), reverse=True)
        return items

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def _format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exps: Mapping[Variable, int]) -> str:
    parts = []
    for v in sorted(exps):
        e = exps[v]
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (exps, c) in enumerate(p.sorted_items()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(exps)
        if not mono:
            body = _format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_scalar(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# -- symmetric group actions ---------------------------------------------

def _vertex_perms(v: Mapping[int, int]):
    verts = sorted(k for k, n in v.items() if n > 0)
    per_vertex = [list(permutations(range(1, v[k] + 1))) for k in verts]
    for combo in product(*per_vertex):
        mapping = {}
        for k, perm in zip(verts, combo):
            for s, t in enumerate(perm, start=1):
                if s != t:
                    mapping[slot(k, s)] = slot(k, t)
        yield mapping


def check_in_range(p: Polynomial, v: Mapping[int, int]) -> None:
    for var in p.variables():
        if var.kind == SLOT_KIND and var.slot > v.get(var.vertex, 0):
            raise ValueError(f"variable {var} out of range for weight {dict(v)}")


def symmetrize(p: Polynomial, v: Mapping[int, int]) -> Polynomial:
    """Sum of sigma(p) over the product of symmetric groups S_v."""
    check_in_range(p, v)
    acc: dict[int, int] = {}
    for mapping in _vertex_perms(v):
        moves = tuple((a.shift, b.shift) for a, b in mapping.items())
        K.relabel_accumulate(acc, p.terms, moves, 1)
    return Polynomial(acc, p.den)


def symmetry_violation(p: Polynomial, v: Mapping[int, int]) -> tuple[int, int, int] | None:
    """First adjacent transposition (vertex, s, s+1) that does not fix p, if any."""
    for k in sorted(v):
        for s in range(1, v[k]):
            swap = {slot(k, s): slot(k, s + 1), slot(k, s + 1): slot(k, s)}
            if p.relabel(swap) != p:
                return (k, s, s + 1)
    return None


def group_order(v: Mapping[int, int]) -> int:
    out = 1
    for n in v.values():
        out *= math.factorial(n)
    return out
