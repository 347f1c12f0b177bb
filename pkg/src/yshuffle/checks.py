"""Seeded random elements and the property checks built on them.

Every check returns a VerificationReport; the random streams come from
``random.Random(seed)`` so a seed reproduces the same instances everywhere.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Mapping

from .arith.polynomial import Polynomial, slot
from .arith.rational import RationalFunction
from .arith.series import residue_sum
from .quiver import DimensionVector, Quiver, sub_vectors
from .report import FAIL, PASS, VerificationReport
from .shuffle import (
    ShuffleElement,
    embed_localized,
    localized_mul,
    shuffle_mul,
    shuffle_mul_naive,
    symmetric_element,
)

DEFAULT_SEED = 0xCAFE


def random_monomial(rng: random.Random, weight: Mapping[int, int], degree: int) -> Polynomial:
    """A monomial of total degree ``degree`` in the slots of ``weight`` and hbar."""
    names = [(k, s) for k in sorted(weight) for s in range(1, weight[k] + 1)]
    out = Polynomial.const(1)
    for _ in range(degree):
        pick = rng.randrange(len(names) + 1)
        out = out * (Polynomial.hbar() if pick == len(names) else Polynomial.slot(*names[pick]))
    return out


def random_element(rng: random.Random, weight: Mapping[int, int], max_degree: int, terms: int = 2) -> ShuffleElement:
    """Symmetrization of a few random monomials with small integer coefficients; never zero."""
    weight = DimensionVector(weight)
    while True:
        p = Polynomial()
        for _ in range(terms):
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            p = p + random_monomial(rng, weight, rng.randint(0, max_degree)).scale(c)
        e = symmetric_element(weight, p)
        if not e.poly.is_zero():
            return e


def random_split(rng: random.Random, bound: Mapping[int, int], parts: int) -> list[DimensionVector]:
    """``parts`` nonzero weights whose sum is <= bound."""
    total = sum(bound.values())
    if total < parts:
        raise ValueError("bound too small for the requested number of factors")
    while True:
        budget = {k: rng.randint(0, n) for k, n in bound.items()}
        units = [k for k, n in sorted(budget.items()) for _ in range(n)]
        if len(units) < parts:
            continue
        rng.shuffle(units)
        cuts = sorted(rng.sample(range(1, len(units)), parts - 1)) if parts > 1 else []
        pieces, prev = [], 0
        for c in cuts + [len(units)]:
            piece: dict[int, int] = {}
            for k in units[prev:c]:
                piece[k] = piece.get(k, 0) + 1
            pieces.append(DimensionVector(piece))
            prev = c
        return pieces


def random_elements(rng: random.Random, bound: Mapping[int, int], parts: int, max_degree: int) -> list[ShuffleElement]:
    return [random_element(rng, w, max_degree) for w in random_split(rng, bound, parts)]


def _weights(es) -> list:
    return [sorted(e.weight.items()) for e in es]


def check_closure_associativity(q: Quiver, bound: Mapping[int, int], max_degree: int, count: int, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Products of random pairs are polynomial and (f*g)*h == f*(g*h) for random triples."""
    rng = random.Random(seed)
    start = time.perf_counter()
    bad = []
    for n in range(count):
        f, g = random_elements(rng, bound, 2, max_degree)
        fg = shuffle_mul(f, g, q)  # raises if a denominator survives
        naive = shuffle_mul_naive(f, g, q)
        if not (naive.is_polynomial() and naive.to_polynomial() == fg.poly):
            bad.append({"case": n, "kind": "closure", "weights": _weights([f, g])})
        a, b, c = random_elements(rng, bound, 3, max_degree)
        left = shuffle_mul(shuffle_mul(a, b, q), c, q)
        right = shuffle_mul(a, shuffle_mul(b, c, q), q)
        if left.poly != right.poly:
            bad.append({"case": n, "kind": "associativity", "weights": _weights([a, b, c])})
    return VerificationReport(
        kind="closure-associativity",
        instance={"quiver": q.name, "bound": sorted(bound.items()), "max_degree": max_degree, "count": count, "seed": seed},
        outcome=PASS if not bad else FAIL,
        witness="0" if not bad else repr(bad[:5]),
        stats={"pairs": count, "triples": count},
        elapsed=time.perf_counter() - start,
    )


def check_embedding(q: Quiver, bound: Mapping[int, int], max_degree: int, count: int, seed: int = DEFAULT_SEED) -> VerificationReport:
    """embed(f * g) == embed(f) *' embed(g) in the localized algebra."""
    rng = random.Random(seed)
    start = time.perf_counter()
    bad = []
    for n in range(count):
        f, g = random_elements(rng, bound, 2, max_degree)
        lhs = embed_localized(shuffle_mul(f, g, q), q)
        rhs = localized_mul(embed_localized(f, q), embed_localized(g, q), q)
        if not lhs == rhs:
            bad.append({"case": n, "weights": _weights([f, g])})
    return VerificationReport(
        kind="fac-embedding",
        instance={"quiver": q.name, "bound": sorted(bound.items()), "max_degree": max_degree, "count": count, "seed": seed},
        outcome=PASS if not bad else FAIL,
        witness="0" if not bad else repr(bad[:5]),
        stats={"pairs": count},
        elapsed=time.perf_counter() - start,
    )


def check_hbar_zero(q: Quiver, bound: Mapping[int, int], max_degree: int, count: int, seed: int = DEFAULT_SEED) -> VerificationReport:
    """(f*g)|_{hbar=0} == f|_0 *_0 g|_0, with *_0 the product built from fac at hbar = 0."""
    rng = random.Random(seed)
    start = time.perf_counter()
    bad = []
    for n in range(count):
        f, g = random_elements(rng, bound, 2, max_degree)
        lhs = shuffle_mul(f, g, q).poly.at_hbar_zero()
        rhs = shuffle_mul(f.at_hbar_zero(), g.at_hbar_zero(), q, hbar_zero=True).poly
        naive = shuffle_mul_naive(f.at_hbar_zero(), g.at_hbar_zero(), q, hbar_zero=True)
        if lhs != rhs or not (naive.is_polynomial() and naive.to_polynomial() == rhs):
            bad.append({"case": n, "weights": _weights([f, g])})
    return VerificationReport(
        kind="hbar-zero",
        instance={"quiver": q.name, "bound": sorted(bound.items()), "max_degree": max_degree, "count": count, "seed": seed},
        outcome=PASS if not bad else FAIL,
        witness="0" if not bad else repr(bad[:5]),
        stats={"pairs": count},
        elapsed=time.perf_counter() - start,
    )


def random_rational(rng: random.Random, x: Polynomial, max_poles: int = 4) -> RationalFunction:
    """Random numerator over at most ``max_poles`` distinct simple or repeated linear poles in x."""
    npoles = rng.randint(1, max_poles)
    centers: set = set()
    while len(centers) < npoles:
        centers.add((Fraction(rng.randint(-9, 9), rng.randint(1, 4)), rng.randint(-2, 2)))
    h = Polynomial.hbar()
    factors = []
    for a, b in sorted(centers):
        factors += [x - Polynomial.const(a) - h.scale(b)] * rng.randint(1, 2)
    num = Polynomial()
    for e in range(rng.randint(0, len(factors) + 2)):
        num = num + (x**e).scale(rng.randint(-5, 5)) * h ** rng.randint(0, 1)
    return RationalFunction.from_factors(num, factors)


def check_residue_sum(count: int, seed: int = DEFAULT_SEED, max_poles: int = 4) -> VerificationReport:
    """Sum of residues over all finite poles and infinity vanishes."""
    rng = random.Random(seed)
    start = time.perf_counter()
    x = Polynomial.slot(0, 1)
    var = slot(0, 1)
    bad = []
    for n in range(count):
        rf = random_rational(rng, x, max_poles)
        total = residue_sum(rf, var)
        if not total.is_zero():
            bad.append({"case": n, "function": str(rf), "sum": str(total)})
    return VerificationReport(
        kind="residue-sum",
        instance={"count": count, "max_poles": max_poles, "seed": seed},
        outcome=PASS if not bad else FAIL,
        witness="0" if not bad else repr(bad[:3]),
        elapsed=time.perf_counter() - start,
    )


def all_nonzero(bound: Mapping[int, int]) -> list[DimensionVector]:
    return [v for v in sub_vectors(bound) if not v.is_zero()]
