from itertools import product
from math import comb

import pytest

from conftest import load
from yshuffle.census import (
    K_AT_L,
    K_AT_L_PLUS_1,
    AffineRootDatum,
    bigrade_identity_check,
    bigrade_tables,
    character,
    pbw_compare,
    pbw_predicted_dim,
    pbw_predicted_gr,
    predicted_gr_table,
    tplus_generators,
    triangular_count,
    triangular_generators,
)
from yshuffle.quiver import DimensionVector, Quiver, QuiverError
from yshuffle.report import INFO, PASS


def norm(beta, c):
    n = len(beta)
    return sum(beta[i] * c[i][j] * beta[j] for i in range(n) for j in range(n))


def brute_roots(c, bound):
    """Positive real roots <= bound of an affine (or finite) simply-laced system: (beta, beta) = 2."""
    return sorted(
        (b for b in product(*(range(x + 1) for x in bound)) if any(b) and norm(b, c) == 2),
        key=lambda r: (sum(r), r),
    )


@pytest.mark.parametrize("name,bound", [("a2aff", (2, 2, 2)), ("a3aff", (2, 2, 1, 2)), ("d4aff", (1, 1, 1, 1, 3)), ("a2", (3, 3))])
def test_real_roots_match_norm_oracle(name, bound):
    q = load(name)
    datum = AffineRootDatum.from_quiver(q)
    v = DimensionVector(dict(zip(q.vertices, bound)))
    assert datum.positive_real_roots(v) == brute_roots(q.cartan(), bound)


def test_imaginary_roots_are_isotropic():
    q = load("d4aff")
    datum = AffineRootDatum.from_quiver(q)
    assert datum.delta == (1, 1, 1, 1, 2)
    assert datum.rank_fin == 4
    imag = datum.imaginary_roots(DimensionVector({0: 2, 1: 2, 2: 2, 3: 2, 4: 4}))
    assert [k for k, _ in imag] == [1, 2]
    assert all(norm(b, q.cartan()) == 0 for _, b in imag)


def brute_predicted_gr(q, v, d, convention):
    """Count multisets of t+ generators of total weight v and degree d, one generator at a time."""
    datum = AffineRootDatum.from_quiver(q)
    target = datum.coords(v)
    basis = []
    for beta in brute_roots(q.cartan(), target):
        basis += [(beta, l) for l in range(d + 1)]
    if datum.kind == "affine":
        k = 1
        while all(k * x <= y for x, y in zip(datum.delta, target)):
            kd = tuple(k * x for x in datum.delta)
            for l in range(d + 1):
                basis += [(kd, l)] * datum.rank_fin
            start = 0 if convention == K_AT_L else 1
            basis += [(kd, l) for l in range(start, d + 1)]
            k += 1
    zero = tuple(0 for _ in target)

    def count(i, w, deg):
        if w == target and deg == d:
            return 1
        total = 0
        for j in range(i, len(basis)):
            beta, l = basis[j]
            nw = tuple(a + b for a, b in zip(w, beta))
            if deg + l <= d and all(a <= b for a, b in zip(nw, target)):
                total += count(j, nw, deg + l)
        return total

    return count(0, zero, 0)


@pytest.mark.parametrize("convention", [K_AT_L, K_AT_L_PLUS_1])
@pytest.mark.parametrize("v", [(1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 1, 1), (2, 2, 1)])
def test_character_matches_brute_force(a2aff, v, convention):
    datum = AffineRootDatum.from_quiver(a2aff)
    w = DimensionVector(dict(zip(a2aff.vertices, v)))
    for d in range(3):
        assert pbw_predicted_gr(w, d, datum, convention) == brute_predicted_gr(a2aff, w, d, convention)


def test_predicted_examples(a2aff):
    datum = AffineRootDatum.from_quiver(a2aff)
    e0 = DimensionVector.unit(0)
    assert [pbw_predicted_dim(e0, d, datum) for d in range(5)] == [1, 2, 3, 4, 5]
    assert predicted_gr_table(DimensionVector({0: 1, 1: 1}), 5, datum, K_AT_L_PLUS_1) == [2, 3, 4, 5, 6, 7]
    delta = DimensionVector({0: 1, 1: 1, 2: 1})
    assert pbw_predicted_gr(delta, 0, datum, K_AT_L_PLUS_1) == 6
    assert pbw_predicted_gr(delta, 0, datum, K_AT_L) == 7


def test_predicted_dim_is_monotone(a2aff):
    datum = AffineRootDatum.from_quiver(a2aff)
    v = DimensionVector({0: 2, 1: 1, 2: 1})
    dims = [pbw_predicted_dim(v, d, datum) for d in range(5)]
    assert dims == sorted(dims)


def test_finite_type_additivity():
    q = Quiver([0, 1], [])
    datum = AffineRootDatum.from_quiver(q)
    assert datum.kind == "finite"
    a = predicted_gr_table(DimensionVector({0: 1}), 4, datum, K_AT_L_PLUS_1)
    b = predicted_gr_table(DimensionVector({1: 1}), 4, datum, K_AT_L_PLUS_1)
    ab = predicted_gr_table(DimensionVector({0: 1, 1: 1}), 4, datum, K_AT_L_PLUS_1)
    assert ab == [sum(a[i] * b[d - i] for i in range(d + 1)) for d in range(5)]


def test_compare_adjacent_weights(a2aff):
    for v in ({0: 1}, {0: 1, 1: 1}, {1: 1}):
        report, row = pbw_compare(DimensionVector(v), 4, a2aff)
        assert report.outcome == PASS
        assert row.computed_gr == row.predicted_gr[K_AT_L_PLUS_1]


def test_compare_delta_picks_one_convention(a2aff):
    report, row = pbw_compare(DimensionVector({0: 1, 1: 1, 2: 1}), 2, a2aff)
    assert report.outcome == PASS
    assert row.computed_gr == [6, 12, 18]
    assert row.matching == [K_AT_L_PLUS_1]
    other, _ = pbw_compare(DimensionVector({0: 1, 1: 1, 2: 1}), 2, a2aff, convention=K_AT_L)
    assert other.outcome != PASS


def test_compare_finite_a2(a2):
    report, row = pbw_compare(DimensionVector({0: 1, 1: 1}), 4, a2)
    assert report.outcome == PASS
    assert row.predicted_gr[K_AT_L] == row.predicted_gr[K_AT_L_PLUS_1] == [2, 3, 4, 5, 6]
    datum = AffineRootDatum.from_quiver(a2)
    assert all(g.label == "real" for g in tplus_generators(datum, DimensionVector({0: 3, 1: 3}), 3, K_AT_L))


def test_scope_refusals(a1aff):
    with pytest.raises(QuiverError):
        pbw_compare(DimensionVector({0: 1}), 1, a1aff)
    report, _ = pbw_compare(DimensionVector({0: 1}), 1, a1aff, force=True)
    assert report.outcome == PASS
    with pytest.raises(QuiverError):
        pbw_compare(DimensionVector({0: 1}), 1, load("jordan"))


def test_bigrade_rank_one(a2aff):
    tables = bigrade_tables(DimensionVector({0: 1}), 3, a2aff)
    lam = tables["slot_degree"]
    for m in range(4):
        for r in range(m + 1):
            graded = lam[(r, m)] - (lam[(r - 1, m)] if r else 0)
            assert graded == 1
    assert tables["slot_degree"] == tables["hbar_order"]


def test_bigrade_degree_zero_equals_hbar_free_span(a2aff):
    for v in ({0: 1, 1: 1}, {0: 1, 1: 1, 2: 1}):
        tables = bigrade_tables(DimensionVector(v), 0, a2aff)
        assert tables["slot_degree"][(0, 0)] == tables["hbar_order"][(0, 0)] == tables["dim_G"][0]


def test_bigrade_a2aff(a2aff):
    main, info = bigrade_identity_check(DimensionVector({0: 1, 1: 1}), 3, a2aff)
    assert main.outcome == PASS
    assert info.outcome == INFO
    assert main.stats["F_cap_G"]["3,3"] == 14


def test_triangular_examples(a2aff):
    datum = AffineRootDatum.from_quiver(a2aff)
    zero = DimensionVector()
    report = triangular_count(zero, zero, 2, a2aff)
    assert report.outcome == PASS
    assert report.stats["sample"]["[0, 0, 0]|[0, 0, 0]|0"] == 1
    # Cartan-only weight 0: three generators in every degree >= 1
    cartan = triangular_generators(datum, zero, 2, K_AT_L_PLUS_1)["cartan"]
    ch = character(cartan, (0, 0, 0), 2)
    assert [ch[((0, 0, 0), d)] for d in range(3)] == [1, 3, 3 + comb(4, 2)]
    assert report.stats["sample"]["[0, 0, 0]|[0, 0, 0]|2"] == 3 + comb(4, 2)
    mixed = triangular_count(DimensionVector.unit(0), DimensionVector.unit(0), 1, a2aff)
    assert mixed.outcome == PASS
    # degree 1: the degree-0 positive generator times the lowest negative one
    assert mixed.stats["sample"]["[1, 0, 0]|[1, 0, 0]|1"] == 1
