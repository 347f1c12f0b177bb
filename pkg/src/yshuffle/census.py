"""PBW census: predicted graded dimensions from root data, and their comparison
with exact ranks in the spherical shuffle algebra.

The predicted character is that of Sym(t+) with t+ spanned by
* one generator per positive real root beta and every filtration degree l >= 0,
* rank_fin generators per imaginary root k*delta and every l >= 0,
* one central class K_{k delta}[l] per k and l >= 0, placed in filtration
  degree l (K_AT_L) or l + 1 (K_AT_L_PLUS_1).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

from .arith.linalg import rank_of_columns
from .arith.polynomial import Polynomial
from . import _kernels as K
from .quiver import (
    DimensionVector,
    Quiver,
    QuiverError,
    delta_vector,
    finite_positive_roots,
    is_positive_definite,
    sub_vectors,
)
from .report import FAIL, INFO, PASS, VerificationReport
from .shuffle import psi_image, spherical_span, words

K_AT_L = "K_AT_L"
K_AT_L_PLUS_1 = "K_AT_L_PLUS_1"
CONVENTIONS = (K_AT_L, K_AT_L_PLUS_1)
DEFAULT_CONVENTION = K_AT_L_PLUS_1


@dataclass(frozen=True)
class AffineRootDatum:
    """Root data of a symmetric Cartan matrix of finite or affine type.

    Vertex 0 of the quiver order (the first vertex) is the extended node in
    the affine case.
    """

    vertices: tuple[int, ...]
    cartan: tuple[tuple[int, ...], ...]
    kind: str  # "finite" or "affine"
    finite_roots: tuple[tuple[int, ...], ...]  # full-length coordinate tuples
    delta: tuple[int, ...] | None
    rank_fin: int

    @classmethod
    def from_quiver(cls, q: Quiver) -> "AffineRootDatum":
        if q.has_loops():
            raise QuiverError("root data are only defined for loopless quivers")
        c = q.cartan()
        n = len(c)
        if is_positive_definite(c):
            roots = tuple(finite_positive_roots(c))
            return cls(tuple(q.vertices), tuple(map(tuple, c)), "finite", roots, None, n)
        delta = tuple(delta_vector(c))
        if delta[0] != 1:
            raise QuiverError("the first vertex must be the extended node (delta coefficient 1)")
        sub = [row[1:] for row in c[1:]]
        fin = finite_positive_roots(sub)
        roots = tuple((0,) + tuple(r) for r in fin)
        return cls(tuple(q.vertices), tuple(map(tuple, c)), "affine", roots, delta, n - 1)

    def weight(self, coords: Sequence[int]) -> DimensionVector:
        return DimensionVector(dict(zip(self.vertices, coords)))

    def coords(self, v: Mapping[int, int]) -> tuple[int, ...]:
        return tuple(v.get(k, 0) for k in self.vertices)

    def positive_real_roots(self, bound: Mapping[int, int]) -> list[tuple[int, ...]]:
        """All positive real roots <= bound."""
        b = self.coords(bound)

        def fits(r):
            return all(0 <= x <= y for x, y in zip(r, b))

        if self.kind == "finite":
            return [r for r in self.finite_roots if fits(r)]
        out = set()
        d = self.delta
        kmax = min(y // x for x, y in zip(d, b))
        for alpha in self.finite_roots:
            for k in range(0, kmax + 2):
                plus = tuple(a + k * x for a, x in zip(alpha, d))
                if fits(plus):
                    out.add(plus)
                if k >= 1:
                    minus = tuple(-a + k * x for a, x in zip(alpha, d))
                    if fits(minus):
                        out.add(minus)
        return sorted(out, key=lambda r: (sum(r), r))

    def imaginary_roots(self, bound: Mapping[int, int]) -> list[tuple[int, tuple[int, ...]]]:
        """(k, k*delta) for k >= 1 with k*delta <= bound; empty for finite type."""
        if self.kind == "finite":
            return []
        b = self.coords(bound)
        out = []
        k = 1
        while all(k * x <= y for x, y in zip(self.delta, b)):
            out.append((k, tuple(k * x for x in self.delta)))
            k += 1
        return out


@dataclass(frozen=True)
class Generator:
    weight: tuple[int, ...]
    degree: int
    mult: int
    label: str


def tplus_generators(datum: AffineRootDatum, bound: Mapping[int, int], max_degree: int, convention: str) -> list[Generator]:
    """Generators of t+ with weight <= bound and filtration degree <= max_degree."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown central-class convention {convention!r}")
    gens = []
    for beta in datum.positive_real_roots(bound):
        for l in range(max_degree + 1):
            gens.append(Generator(beta, l, 1, "real"))
    for k, beta in datum.imaginary_roots(bound):
        for l in range(max_degree + 1):
            gens.append(Generator(beta, l, datum.rank_fin, "imaginary"))
        shift = 0 if convention == K_AT_L else 1
        for l in range(max_degree + 1 - shift):
            gens.append(Generator(beta, l + shift, 1, "central"))
    return gens


Character = dict  # (weight coords, degree) -> count


def character(gens: Iterable[Generator], bound: Sequence[int], max_degree: int) -> Character:
    """Truncated character of Sym(span of gens): coefficients of z^w q^d, w <= bound, d <= max_degree."""
    bound = tuple(bound)
    zero = tuple(0 for _ in bound)
    series: Character = {(zero, 0): 1}
    for g in gens:
        if g.mult == 0:
            continue
        new: Character = {}
        for (w, d), c in series.items():
            n = 0
            while True:
                ww = tuple(x + n * y for x, y in zip(w, g.weight))
                dd = d + n * g.degree
                if dd > max_degree or any(a > b for a, b in zip(ww, bound)):
                    break
                key = (ww, dd)
                new[key] = new.get(key, 0) + c * comb(n + g.mult - 1, n)
                n += 1
                if not any(g.weight) and g.degree == 0:
                    raise ValueError("generator of weight 0 and degree 0 has an infinite character")
        series = new
    return series


def pbw_predicted_gr(v: Mapping[int, int], d: int, datum: AffineRootDatum, convention: str = DEFAULT_CONVENTION) -> int:
    """Predicted dim of the degree-d graded piece at weight v."""
    gens = tplus_generators(datum, v, d, convention)
    ch = character(gens, datum.coords(v), d)
    return ch.get((datum.coords(v), d), 0)


def pbw_predicted_dim(v: Mapping[int, int], d: int, datum: AffineRootDatum, convention: str = DEFAULT_CONVENTION) -> int:
    """Predicted dim F_d at weight v (graded pieces summed over degrees <= d)."""
    gens = tplus_generators(datum, v, d, convention)
    ch = character(gens, datum.coords(v), d)
    w = datum.coords(v)
    return sum(c for (ww, dd), c in ch.items() if ww == w)


def predicted_gr_table(v: Mapping[int, int], d_max: int, datum: AffineRootDatum, convention: str) -> list[int]:
    gens = tplus_generators(datum, v, d_max, convention)
    ch = character(gens, datum.coords(v), d_max)
    w = datum.coords(v)
    return [ch.get((w, d), 0) for d in range(d_max + 1)]


def require_pbw_scope(q: Quiver, force: bool = False) -> None:
    if q.has_loops():
        raise QuiverError("PBW commands refuse quivers with edge loops")
    if q.is_affine_a1() and not force:
        raise QuiverError("type A1^(1) is excluded from the PBW statement (override with force)")


@dataclass
class CensusRow:
    weight: list[int]
    computed_gr: list[int]
    predicted_gr: dict[str, list[int]]
    matching: list[str]


def pbw_compare(
    v: Mapping[int, int],
    d_max: int,
    q: Quiver,
    *,
    convention: str = DEFAULT_CONVENTION,
    force: bool = False,
    cache: dict | None = None,
    max_norm: int = 4,
    max_deg: int = 6,
) -> tuple[VerificationReport, CensusRow]:
    """Computed dim gr_F^d of the spherical subalgebra at weight v versus the census."""
    require_pbw_scope(q, force)
    datum = AffineRootDatum.from_quiver(q)
    v = v if isinstance(v, DimensionVector) else DimensionVector(v)
    start = time.perf_counter()
    span = spherical_span(v, d_max, q, cache=cache, max_norm=max_norm, max_deg=max_deg)
    computed = span.dim_gr
    predicted = {c: predicted_gr_table(v, d_max, datum, c) for c in CONVENTIONS}
    if datum.kind == "finite":
        assert not datum.imaginary_roots(v), "finite-type census must not use imaginary roots"
    matching = [c for c in CONVENTIONS if predicted[c] == computed]
    row = CensusRow(datum.coords(v), computed, predicted, matching)
    report = VerificationReport(
        kind="pbw",
        instance={"weight": list(datum.coords(v)), "max_degree": d_max, "convention": convention},
        outcome=PASS if convention in matching else FAIL,
        witness="0" if convention in matching else f"computed {computed} vs predicted {predicted[convention]}",
        stats={
            "computed_gr": computed,
            "computed_origin": "exact rank of spherical word images",
            "predicted_gr": predicted[convention],
            "predicted_origin": "Sym(t+) character",
            "predicted_by_convention": predicted,
            "matching_conventions": matching,
            "words": len(span.rows),
        },
        elapsed=time.perf_counter() - start,
    )
    return report, row


def pbw_grid(vmax: Mapping[int, int], d_max: int, q: Quiver, *, convention: str = DEFAULT_CONVENTION, force: bool = False):
    """pbw_compare for every nonzero v <= vmax, sharing one word cache."""
    cache: dict = {}
    reports, rows = [], []
    for v in sub_vectors(vmax):
        if v.is_zero():
            continue
        rep, row = pbw_compare(v, d_max, q, convention=convention, force=force, cache=cache)
        reports.append(rep)
        rows.append(row)
    consistent = [c for c in CONVENTIONS if all(c in r.matching for r in rows)]
    return reports, rows, consistent


# -- bigrade identity ------------------------------------------------------------


def _lambda_degree(m: int) -> int:
    return K.monomial_degree(m >> K.FIELD_BITS)


def _hbar_exp(m: int) -> int:
    return m & K.FIELD_MASK


def graded_span(v: Mapping[int, int], m: int, q: Quiver, cache: dict | None = None) -> list[tuple[int, Polynomial]]:
    """Spanning set of G_m at weight v: hbar^(m - |w|) * psi(w) for all words |w| <= m, tagged by |w|."""
    cache = {} if cache is None else cache
    h = Polynomial.hbar()
    rows = []
    for s in range(m + 1):
        for w in words(v, s):
            rows.append((s, psi_image(w, q, cache).poly * h ** (m - s)))
    return rows


def bigrade_tables(v: Mapping[int, int], m_max: int, q: Quiver) -> dict:
    """dim(F_r cap G_m) with F read as slot-degree filtration, dim(F'_{r-m} cap G_m)
    with F' the hbar-order filtration, and (informational) the filtration by word degree."""
    v = v if isinstance(v, DimensionVector) else DimensionVector(v)
    shift = q.h_degree(v)
    cache: dict = {}
    lam, hb, gen, total = {}, {}, {}, {}
    for m in range(m_max + 1):
        rows = graded_span(v, m, q, cache)
        polys = [p for _, p in rows]
        full = rank_of_columns(polys, lambda mono: True)
        total[m] = full
        for r in range(m + 1):
            # x lies in the piece iff its coordinates outside the piece vanish
            lam[(r, m)] = full - rank_of_columns(polys, lambda mono, r=r: _lambda_degree(mono) > r + shift)
            hb[(r, m)] = full - rank_of_columns(polys, lambda mono, r=r, m=m: _hbar_exp(mono) < m - r)
            gen[(r, m)] = rank_of_columns([p for s, p in rows if s <= r], lambda mono: True)
    return {"slot_degree": lam, "hbar_order": hb, "word_degree": gen, "dim_G": total, "shift": shift}


def bigrade_identity_check(v: Mapping[int, int], m_max: int, q: Quiver) -> list[VerificationReport]:
    start = time.perf_counter()
    tables = bigrade_tables(v, m_max, q)
    lam, hb, gen = tables["slot_degree"], tables["hbar_order"], tables["word_degree"]
    keys = sorted(lam, key=lambda rm: (rm[1], rm[0]))
    bad = [k for k in keys if lam[k] != hb[k]]
    coords = [v.get(k, 0) for k in q.vertices]

    def fmt(t):
        return {f"{r},{m}": t[(r, m)] for r, m in keys}

    main = VerificationReport(
        kind="bigrade",
        instance={"weight": coords, "max_m": m_max},
        outcome=PASS if not bad else FAIL,
        witness="0" if not bad else repr([{"r": r, "m": m, "F": lam[(r, m)], "F'": hb[(r, m)]} for r, m in bad]),
        stats={"F_cap_G": fmt(lam), "Fprime_cap_G": fmt(hb), "dim_G": {str(m): d for m, d in tables["dim_G"].items()}},
        elapsed=time.perf_counter() - start,
    )
    differs = [k for k in keys if gen[k] != hb[k]]
    info = VerificationReport(
        kind="bigrade-word-filtration",
        instance={"weight": coords, "max_m": m_max},
        outcome=INFO,
        witness="equal" if not differs else f"differs at (r,m) = {[list(k) for k in differs]}",
        stats={"word_filtration_cap_G": fmt(gen)},
    )
    return [main, info]


# -- triangular bookkeeping ------------------------------------------------------


@dataclass(frozen=True)
class TriGenerator:
    plus: tuple[int, ...]
    minus: tuple[int, ...]
    degree: int
    mult: int


def triangular_generators(datum: AffineRootDatum, bound: Mapping[int, int], d: int, convention: str) -> dict[str, list[Generator]]:
    """Generators of the three factors.

    t+ as in the census; the Cartan loop algebra h[lambda] has |I| generators
    in each degree r + 1; t- mirrors t+ with every degree shifted by one, as
    E_{i,-k-1} corresponds to F_{i,k}.
    """
    plus = tplus_generators(datum, bound, d, convention)
    n = len(datum.vertices)
    zero = tuple(0 for _ in datum.vertices)
    cartan = [Generator(zero, r + 1, n, "cartan") for r in range(d)]
    minus = [Generator(g.weight, g.degree + 1, g.mult, g.label) for g in plus if g.degree + 1 <= d]
    return {"plus": plus, "cartan": cartan, "minus": minus}


def _convolve(chp: Character, ch0: Character, chm: Character, wp, wm, d: int) -> int:
    zero = tuple(0 for _ in wp)
    total = 0
    for d1 in range(d + 1):
        for d2 in range(d + 1 - d1):
            d3 = d - d1 - d2
            total += chp.get((wp, d1), 0) * ch0.get((zero, d2), 0) * chm.get((wm, d3), 0)
    return total


def _brute_force_counts(gens: list[TriGenerator], bound_plus, bound_minus, d: int) -> dict:
    """Count monomials in the combined generator set by direct enumeration."""
    units = []
    for g in gens:
        units.extend([g] * g.mult)
    counts: dict = {}
    zero = tuple(0 for _ in bound_plus)

    def rec(idx, wp, wm, deg):
        key = (wp, wm, deg)
        counts[key] = counts.get(key, 0) + 1
        for k in range(idx, len(units)):
            g = units[k]
            np_ = tuple(a + b for a, b in zip(wp, g.plus))
            nm = tuple(a + b for a, b in zip(wm, g.minus))
            nd = deg + g.degree
            if nd > d or any(a > b for a, b in zip(np_, bound_plus)) or any(a > b for a, b in zip(nm, bound_minus)):
                continue
            rec(k, np_, nm, nd)

    rec(0, zero, zero, 0)
    return counts


def triangular_count(
    bound_plus: Mapping[int, int],
    bound_minus: Mapping[int, int],
    d_max: int,
    q: Quiver,
    convention: str = DEFAULT_CONVENTION,
) -> VerificationReport:
    """Dimension of every (v+, v-, d) piece of Sym(t+) (x) Sym(h[lambda]) (x) Sym(t-),
    by direct enumeration of monomials, against the convolution of the three characters."""
    start = time.perf_counter()
    datum = AffineRootDatum.from_quiver(q)
    bp, bm = datum.coords(bound_plus), datum.coords(bound_minus)
    big = DimensionVector({k: max(bound_plus.get(k, 0), bound_minus.get(k, 0)) for k in q.vertices})
    factors = triangular_generators(datum, big, d_max, convention)
    zero = tuple(0 for _ in bp)
    chp = character(factors["plus"], bp, d_max)
    ch0 = character(factors["cartan"], zero, d_max)
    chm = character(factors["minus"], bm, d_max)
    combined = (
        [TriGenerator(g.weight, zero, g.degree, g.mult) for g in factors["plus"]]
        + [TriGenerator(zero, zero, g.degree, g.mult) for g in factors["cartan"]]
        + [TriGenerator(zero, g.weight, g.degree, g.mult) for g in factors["minus"]]
    )
    counts = _brute_force_counts(combined, bp, bm, d_max)
    checked = 0
    bad = []
    for wp in sub_vectors(DimensionVector(dict(zip(datum.vertices, bp)))):
        for wm in sub_vectors(DimensionVector(dict(zip(datum.vertices, bm)))):
            cp, cm = datum.coords(wp), datum.coords(wm)
            for d in range(d_max + 1):
                direct = counts.get((cp, cm, d), 0)
                conv = _convolve(chp, ch0, chm, cp, cm, d)
                checked += 1
                if direct != conv:
                    bad.append({"plus": list(cp), "minus": list(cm), "d": d, "direct": direct, "convolution": conv})
    return VerificationReport(
        kind="triangular",
        instance={"plus": list(bp), "minus": list(bm), "max_degree": d_max, "convention": convention},
        outcome=PASS if not bad else FAIL,
        witness="0" if not bad else repr(bad[:5]),
        stats={"pieces_checked": checked, "sample": {f"{list(bp)}|{list(bm)}|{d}": counts.get((bp, bm, d), 0) for d in range(d_max + 1)}},
        elapsed=time.perf_counter() - start,
    )

