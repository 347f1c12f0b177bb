"""The shuffle algebra SH of a quiver and its localized version.

Elements of weight v are polynomials symmetric under the product of symmetric
groups S_v, in the slot variables l(i, s) (1 <= s <= v[i]) and hbar.  In a
product of weights v1 and v2 the first factor keeps its slots and the second
factor's slot t at vertex i becomes slot v1[i] + t.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from . import _kernels as K
from .arith.polynomial import (
    HBAR,
    Polynomial,
    check_in_range,
    slot,
    symmetrize,
    symmetry_violation,
)
from .arith.rational import LinearForm, RationalFunction, divide_by_form
from .quiver import DimensionVector, Quiver

HALF = Fraction(1, 2)


class ShuffleError(RuntimeError):
    """A denominator survived the shuffle sum; this indicates a bug, not bad input."""


class BudgetExceeded(RuntimeError):
    pass


def _dv(v) -> DimensionVector:
    return v if isinstance(v, DimensionVector) else DimensionVector(v)


@dataclass(frozen=True)
class ShuffleElement:
    weight: DimensionVector
    poly: Polynomial

    def __init__(self, weight: Mapping[int, int], poly: Polynomial | int | Fraction, *, check: bool = True):
        weight = _dv(weight)
        if not isinstance(poly, Polynomial):
            poly = Polynomial.const(poly)
        if check:
            check_in_range(poly, weight)
            bad = symmetry_violation(poly, weight)
            if bad is not None:
                k, s, t = bad
                raise ValueError(f"polynomial is not symmetric at weight {weight}: transposition ({s} {t}) at vertex {k}")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "poly", poly)

    @classmethod
    def unit(cls) -> "ShuffleElement":
        return cls(DimensionVector(), Polynomial.const(1), check=False)

    @classmethod
    def generator(cls, k: int, r: int) -> "ShuffleElement":
        """(lambda^(k))^r at weight e_k."""
        if r < 0:
            raise ValueError("generator powers must be nonnegative")
        return cls(DimensionVector.unit(k), Polynomial.slot(k, 1, r), check=False)

    def __add__(self, other: "ShuffleElement") -> "ShuffleElement":
        if other.weight != self.weight:
            if other.poly.is_zero():
                return self
            if self.poly.is_zero():
                return other
            raise ValueError(f"cannot add elements of weights {self.weight} and {other.weight}")
        return ShuffleElement(self.weight, self.poly + other.poly, check=False)

    def __neg__(self) -> "ShuffleElement":
        return ShuffleElement(self.weight, -self.poly, check=False)

    def __sub__(self, other: "ShuffleElement") -> "ShuffleElement":
        return self + (-other)

    def scale(self, c: Polynomial | int | Fraction) -> "ShuffleElement":
        """Multiply by a scalar of Q[hbar]."""
        if isinstance(c, Polynomial):
            if any(v != HBAR for v in c.variables()):
                raise ValueError("scalars may only involve hbar")
            return ShuffleElement(self.weight, self.poly * c, check=False)
        return ShuffleElement(self.weight, self.poly.scale(c), check=False)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def at_hbar_zero(self) -> "ShuffleElement":
        return ShuffleElement(self.weight, self.poly.at_hbar_zero(), check=False)

    def degree(self) -> int:
        return self.poly.degree()

    def __str__(self) -> str:
        return str(self.poly)


@dataclass(frozen=True)
class LocalizedShuffleElement:
    weight: DimensionVector
    value: RationalFunction

    def __init__(self, weight: Mapping[int, int], value: RationalFunction | Polynomial | int | Fraction):
        if not isinstance(value, RationalFunction):
            value = RationalFunction(value)
        object.__setattr__(self, "weight", _dv(weight))
        object.__setattr__(self, "value", value)

    @classmethod
    def unit(cls) -> "LocalizedShuffleElement":
        return cls(DimensionVector(), RationalFunction(1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalizedShuffleElement):
            return NotImplemented
        if self.weight != other.weight:
            return self.value.is_zero() and other.value.is_zero()
        return self.value == other.value

    __hash__ = None

    def degree(self) -> int:
        """Total degree in hbar and the slot variables (numerator minus denominator)."""
        return self.value.normalize().degree()

    def is_symmetric(self) -> bool:
        for k, n in self.weight.items():
            for s in range(1, n):
                swap = {slot(k, s): slot(k, s + 1), slot(k, s + 1): slot(k, s)}
                if self.value.relabel(swap) != self.value:
                    return False
        return True

    def __str__(self) -> str:
        return str(self.value.normalize())


@dataclass(frozen=True)
class GeneratorWord:
    letters: tuple[tuple[int, int], ...]

    def __init__(self, letters: Iterable[tuple[int, int]]):
        letters = tuple((int(k), int(r)) for k, r in letters)
        if any(r < 0 for _, r in letters):
            raise ValueError("generator powers must be nonnegative")
        object.__setattr__(self, "letters", letters)

    def weight(self) -> DimensionVector:
        out: dict[int, int] = {}
        for k, _ in self.letters:
            out[k] = out.get(k, 0) + 1
        return DimensionVector(out)

    def fdegree(self) -> int:
        return sum(r for _, r in self.letters)

    def __str__(self) -> str:
        return "*".join(f"x({k},{r})" for k, r in self.letters) or "1"


# -- index bookkeeping ---------------------------------------------------


def second_slot(v1: Mapping[int, int], vertex: int, t: int) -> int:
    """Merged slot index of the second factor's slot t at a vertex."""
    return v1.get(vertex, 0) + t


def shift_moves(v1: Mapping[int, int], v2: Mapping[int, int]) -> dict:
    """Variable renaming placing the second factor after the first."""
    mapping = {}
    for k, n in v2.items():
        off = v1.get(k, 0)
        if off:
            for t in range(n, 0, -1):
                mapping[slot(k, t)] = slot(k, t + off)
    return mapping


def _shift_poly(p: Polynomial, v1: Mapping[int, int], v2: Mapping[int, int]) -> Polynomial:
    mapping = shift_moves(v1, v2)
    return p.relabel(mapping) if mapping else p


def _shift_rf(f: RationalFunction, v1: Mapping[int, int], v2: Mapping[int, int]) -> RationalFunction:
    mapping = shift_moves(v1, v2)
    return f.relabel(mapping) if mapping else f


def _perm_sign(images: Sequence[int]) -> int:
    inv = 0
    for a in range(len(images)):
        for b in range(a + 1, len(images)):
            if images[a] > images[b]:
                inv += 1
    return -1 if inv % 2 else 1


def shuffles(v1: Mapping[int, int], v2: Mapping[int, int]) -> Iterator[dict[int, tuple[int, ...]]]:
    """All sigma in Sh(v1, v2): per vertex, the images sigma(1..n) (1-based)."""
    verts = sorted(set(v1) | set(v2))
    per_vertex = []
    for k in verts:
        a, b = v1.get(k, 0), v2.get(k, 0)
        n = a + b
        options = []
        for first in combinations(range(1, n + 1), a):
            rest = [x for x in range(1, n + 1) if x not in first]
            options.append(tuple(first) + tuple(rest))
        per_vertex.append(options)
    for combo in product(*per_vertex):
        yield dict(zip(verts, combo))


def _validate_shuffle(sigma: Mapping[int, Sequence[int]], v1, v2) -> None:
    for k in set(v1) | set(v2) | set(sigma):
        a, b = v1.get(k, 0), v2.get(k, 0)
        images = tuple(sigma.get(k, tuple(range(1, a + b + 1))))
        if sorted(images) != list(range(1, a + b + 1)):
            raise ValueError(f"sigma at vertex {k} is not a permutation of 1..{a + b}")
        first, second = images[:a], images[a:]
        if list(first) != sorted(first) or list(second) != sorted(second):
            raise ValueError(f"sigma at vertex {k} is not a ({a},{b})-shuffle")


def _sigma_mapping(sigma: Mapping[int, Sequence[int]]) -> dict:
    return {slot(k, s): slot(k, t) for k, images in sigma.items() for s, t in enumerate(images, start=1) if s != t}


def apply_shuffle_substitution(
    rf: RationalFunction, v1: Mapping[int, int], v2: Mapping[int, int], sigma: Mapping[int, Sequence[int]]
) -> RationalFunction:
    """Apply a (v1, v2)-shuffle to rf written in merged variables (see :func:`split_product`)."""
    _validate_shuffle(sigma, v1, v2)
    return rf.relabel(_sigma_mapping(sigma))


def split_product(f: RationalFunction, g: RationalFunction, v1, v2) -> RationalFunction:
    """f(lambda') * g(lambda'') written in merged variables."""
    return f * _shift_rf(g, v1, v2)


# -- the kernels -----------------------------------------------------------


def _form(terms: Iterable[tuple[int, int, int]], hbar_coef: Fraction) -> Polynomial:
    p = Polynomial.hbar().scale(hbar_coef) if hbar_coef else Polynomial()
    for vertex, s, sign in terms:
        p = p + Polynomial.slot(vertex, s).scale(sign)
    return p


def fac_factors(v1: Mapping[int, int], v2: Mapping[int, int], q: Quiver) -> tuple[list[Polynomial], list[Polynomial], list[Polynomial]]:
    """(diagonal numerators, diagonal denominators, arrow factors) of fac(v1, v2), merged variables."""
    v1, v2 = _dv(v1), _dv(v2)
    diag_num, diag_den, arrows = [], [], []
    for i in sorted(set(v1) | set(v2)):
        for s in range(1, v1.get(i, 0) + 1):
            for t in range(1, v2.get(i, 0) + 1):
                t2 = second_slot(v1, i, t)
                diag_num.append(_form([(i, s, 1), (i, t2, -1)], Fraction(1)))
                diag_den.append(_form([(i, s, 1), (i, t2, -1)], Fraction(0)))
    for h in q.arrows:
        o, n = h.out, h.inc
        for s in range(1, v1.get(o, 0) + 1):
            for t in range(1, v2.get(n, 0) + 1):
                arrows.append(_form([(n, second_slot(v1, n, t), 1), (o, s, -1)], h.m * HALF))
        for s in range(1, v1.get(n, 0) + 1):
            for t in range(1, v2.get(o, 0) + 1):
                arrows.append(_form([(n, s, 1), (o, second_slot(v1, o, t), -1)], -h.m_star * HALF))
    return diag_num, diag_den, arrows


def fac(v1: Mapping[int, int], v2: Mapping[int, int], q: Quiver) -> RationalFunction:
    num, den, arrows = fac_factors(v1, v2, q)
    top = Polynomial.const(1)
    for p in num + arrows:
        top = top * p
    return RationalFunction.from_factors(top, den)


def H_factors(v: Mapping[int, int], q: Quiver) -> list[Polynomial]:
    v = _dv(v)
    out = []
    for h in q.arrows:
        for s in range(1, v.get(h.out, 0) + 1):
            for t in range(1, v.get(h.inc, 0) + 1):
                out.append(_form([(h.inc, t, 1), (h.out, s, -1)], h.m * HALF))
    return out


def H_factor(v: Mapping[int, int], q: Quiver) -> Polynomial:
    out = Polynomial.const(1)
    for p in H_factors(v, q):
        out = out * p
    return out


def localized_kernel(v1: Mapping[int, int], v2: Mapping[int, int], q: Quiver) -> RationalFunction:
    """Degree-zero kernel of the localized product, merged variables; a_ij counts arrows i -> j."""
    v1, v2 = _dv(v1), _dv(v2)
    num, den, _ = fac_factors(v1, v2, q)
    tops, bottoms = list(num), list(den)
    for i in q.vertices:
        for j in q.vertices:
            a = q.directed_count(i, j)
            if not a:
                continue
            for s in range(1, v2.get(i, 0) + 1):
                for t in range(1, v1.get(j, 0) + 1):
                    s2 = second_slot(v1, i, s)
                    tops.append(_form([(j, t, 1), (i, s2, -1)], -a * HALF))
                    bottoms.append(_form([(j, t, 1), (i, s2, -1)], a * HALF))
    top = Polynomial.const(1)
    for p in tops:
        top = top * p
    return RationalFunction.from_factors(top, bottoms)


# -- the product -------------------------------------------------------------


def _vandermonde_forms(v: Mapping[int, int], blocks: Mapping[int, tuple[int, int]] | None = None) -> list[Polynomial]:
    """l(i,a) - l(i,b) for a < b; with ``blocks`` only pairs inside one block."""
    out = []
    for i, n in sorted(v.items()):
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                if blocks is not None:
                    cut = blocks[i][0]
                    if (a <= cut) != (b <= cut):
                        continue
                out.append(_form([(i, a, 1), (i, b, -1)], Fraction(0)))
    return out


@lru_cache(maxsize=256)
def _shuffle_table(v1: DimensionVector, v2: DimensionVector) -> tuple[tuple[tuple, int], ...]:
    """(moves, sign) for every shuffle, ready for the relabel kernels."""
    table = []
    for sigma in shuffles(v1, v2):
        sign = 1
        moves = []
        for k, images in sigma.items():
            sign *= _perm_sign(images)
            for s, t in enumerate(images, start=1):
                if s != t:
                    moves.append((slot(k, s).shift, slot(k, t).shift))
        table.append((tuple(moves), sign))
    return tuple(table)


@lru_cache(maxsize=256)
def _product_prefactor(v1: DimensionVector, v2: DimensionVector, q: Quiver, hbar_zero: bool) -> Polynomial:
    """Polynomial part of fac times the within-block Vandermondes."""
    num, _, arrows = fac_factors(v1, v2, q)
    out = Polynomial.const(1)
    for p in num + arrows:
        out = out * (p.at_hbar_zero() if hbar_zero else p)
    blocks = {i: (v1.get(i, 0), v2.get(i, 0)) for i in set(v1) | set(v2)}
    for p in _vandermonde_forms(v1 + v2, blocks):
        out = out * p
    return out


@lru_cache(maxsize=256)
def _total_vandermonde(v: DimensionVector) -> tuple[LinearForm, ...]:
    return tuple(LinearForm.of(p) for p in _vandermonde_forms(v))


def shuffle_mul(f: ShuffleElement, g: ShuffleElement, q: Quiver, *, hbar_zero: bool = False) -> ShuffleElement:
    """f * g.  With ``hbar_zero`` the kernel fac is replaced by fac at hbar = 0."""
    v1, v2 = f.weight, g.weight
    if f.poly.is_zero() or g.poly.is_zero():
        return ShuffleElement(v1 + v2, Polynomial(), check=False)
    if v1.is_zero():
        return ShuffleElement(v2, g.poly * f.poly, check=False)
    if v2.is_zero():
        return ShuffleElement(v1, f.poly * g.poly, check=False)
    pre = _product_prefactor(v1, v2, q, hbar_zero)
    body = f.poly * _shift_poly(g.poly, v1, v2) * pre
    acc: dict[int, int] = {}
    for moves, sign in _shuffle_table(v1, v2):
        if moves:
            K.relabel_accumulate(acc, body.terms, moves, sign)
        else:
            K.add_scaled(acc, body.terms, sign)
    total = Polynomial(acc, body.den)
    for form in _total_vandermonde(v1 + v2):
        quotient = divide_by_form(total, form)
        if quotient is None:
            raise ShuffleError(f"denominator form {form} survived the shuffle sum at weight {v1 + v2}")
        total = quotient
    return ShuffleElement(v1 + v2, total, check=False)


def shuffle_mul_naive(f: ShuffleElement, g: ShuffleElement, q: Quiver, *, hbar_zero: bool = False) -> RationalFunction:
    """Reference implementation: sum sigma(f' g'' fac) as rational functions, then cancel."""
    v1, v2 = f.weight, g.weight
    kernel = fac(v1, v2, q)
    if hbar_zero:
        kernel = kernel.at_hbar_zero()
    body = split_product(RationalFunction(f.poly), RationalFunction(g.poly), v1, v2) * kernel
    total = RationalFunction(0)
    for sigma in shuffles(v1, v2):
        total = total + body.relabel(_sigma_mapping(sigma))
    return total.normalize()


def localized_mul(f: LocalizedShuffleElement, g: LocalizedShuffleElement, q: Quiver) -> LocalizedShuffleElement:
    v1, v2 = f.weight, g.weight
    if v1.is_zero():
        return LocalizedShuffleElement(v2, f.value * g.value)
    if v2.is_zero():
        return LocalizedShuffleElement(v1, f.value * g.value)
    body = split_product(f.value, g.value, v1, v2) * localized_kernel(v1, v2, q)
    total = RationalFunction(0)
    for sigma in shuffles(v1, v2):
        total = total + body.relabel(_sigma_mapping(sigma))
    return LocalizedShuffleElement(v1 + v2, total.normalize())


def embed_localized(f: ShuffleElement, q: Quiver) -> LocalizedShuffleElement:
    return LocalizedShuffleElement(f.weight, RationalFunction.from_factors(f.poly, H_factors(f.weight, q)))


def symmetric_element(weight: Mapping[int, int], p: Polynomial) -> ShuffleElement:
    """Symmetrize p over S_weight and wrap it."""
    return ShuffleElement(weight, symmetrize(p, _dv(weight)), check=False)


# -- the spherical subalgebra ----------------------------------------------


def psi_image(word: GeneratorWord | Iterable[tuple[int, int]], q: Quiver, cache: dict | None = None) -> ShuffleElement:
    """Left-to-right shuffle product of the generators (lambda^(k))^r."""
    letters = word.letters if isinstance(word, GeneratorWord) else tuple(word)
    if cache is None:
        out = ShuffleElement.unit()
        for k, r in letters:
            out = shuffle_mul(out, ShuffleElement.generator(k, r), q)
        return out
    if letters in cache:
        return cache[letters]
    if not letters:
        value = ShuffleElement.unit()
    else:
        value = shuffle_mul(psi_image(letters[:-1], q, cache), ShuffleElement.generator(*letters[-1]), q)
    cache[letters] = value
    return value


def vertex_orderings(v: Mapping[int, int]) -> list[tuple[int, ...]]:
    """Distinct orderings of the multiset with v[k] copies of k."""
    items = sorted(v.items())
    total = sum(n for _, n in items)
    out: list[tuple[int, ...]] = []

    def rec(prefix, counts):
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for idx, (k, _) in enumerate(items):
            if counts[idx]:
                counts[idx] -= 1
                prefix.append(k)
                rec(prefix, counts)
                prefix.pop()
                counts[idx] += 1

    rec([], [n for _, n in items])
    return out


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of nonnegative integers of the given length and sum."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def words(v: Mapping[int, int], fdeg: int) -> list[GeneratorWord]:
    """All generator words of weight v and F-degree exactly fdeg."""
    out = []
    for order in vertex_orderings(v):
        for powers in compositions(fdeg, len(order)):
            out.append(GeneratorWord(zip(order, powers)))
    return out


@dataclass
class SpanResult:
    weight: DimensionVector
    max_fdeg: int
    rows: list[tuple[GeneratorWord, ShuffleElement]]
    dim_F: list[int]
    elapsed: float

    @property
    def dim_gr(self) -> list[int]:
        return [self.dim_F[0]] + [self.dim_F[d] - self.dim_F[d - 1] for d in range(1, len(self.dim_F))]


DEFAULT_MAX_NORM = 4
DEFAULT_MAX_FDEG = 6


def check_budget(v: Mapping[int, int], max_fdeg: int, max_norm: int = DEFAULT_MAX_NORM, max_deg: int = DEFAULT_MAX_FDEG) -> None:
    n = sum(v.values())
    if n > max_norm:
        raise BudgetExceeded(f"weight norm {n} exceeds the budget {max_norm}")
    if max_fdeg > max_deg:
        raise BudgetExceeded(f"degree {max_fdeg} exceeds the budget {max_deg}")


def spherical_span(
    v: Mapping[int, int],
    max_fdeg: int,
    q: Quiver,
    *,
    max_norm: int = DEFAULT_MAX_NORM,
    max_deg: int = DEFAULT_MAX_FDEG,
    cache: dict | None = None,
) -> SpanResult:
    """Images of all words of weight v and F-degree <= max_fdeg, with dim F_d for each d."""
    from .arith.linalg import exact_rank

    v = _dv(v)
    check_budget(v, max_fdeg, max_norm, max_deg)
    start = time.perf_counter()
    cache = {} if cache is None else cache
    rows: list[tuple[GeneratorWord, ShuffleElement]] = []
    dims = []
    for d in range(max_fdeg + 1):
        for w in words(v, d):
            rows.append((w, psi_image(w, q, cache)))
        dims.append(exact_rank([e.poly for _, e in rows]))
    return SpanResult(v, max_fdeg, rows, dims, time.perf_counter() - start)


def grading_shift(v: Mapping[int, int], q: Quiver) -> int:
    """Total degree of any word image of weight v minus its F-degree (= deg H_v)."""
    return q.h_degree(v)

