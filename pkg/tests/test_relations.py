from fractions import Fraction

import pytest

from yshuffle.arith import Polynomial
from yshuffle.quiver import DimensionVector
from yshuffle.relations import (
    UNCHECKED_RELATIONS,
    WordAlgebra,
    check_serre,
    check_y4,
    not_checked_reports,
    serre_suite,
    serre_terms,
    series_oracle_y4,
    series_suite,
    y4_suite,
    y4_terms,
)
from yshuffle.report import FAIL, NOT_CHECKED, PASS


def test_y4_single_vertex(a1):
    for r in range(3):
        for s in range(3):
            assert check_y4(0, 0, r, s, a1).outcome == PASS


def test_y4_suite_a2aff_small(a2aff):
    reports = y4_suite(a2aff, 1)
    assert len(reports) == 9 * 4
    assert all(r.outcome == PASS for r in reports)


def test_serre_a2(a2):
    assert check_serre(0, 1, (0, 0), 0, a2).outcome == PASS
    assert check_serre(1, 0, (1, 2), 1, a2).outcome == PASS


def test_serre_double_edge(a1aff):
    # c = -2 needs three modes
    assert check_serre(0, 1, (0, 0, 1), 0, a1aff).outcome == PASS
    with pytest.raises(ValueError):
        check_serre(0, 1, (0, 0), 0, a1aff)


def test_serre_suite_a2aff_small(a2aff):
    reports = serre_suite(a2aff, 1)
    assert reports and all(r.outcome == PASS for r in reports)


def test_wrong_sign_in_y4_is_detected(a2aff):
    algebra = WordAlgebra(a2aff)
    weight = DimensionVector({0: 1, 1: 1})
    terms = y4_terms(0, 1, 1, 0, a2aff.c(0, 1))
    flipped = [(c if i < 4 else -c, w) for i, (c, w) in enumerate(terms)]
    assert algebra.combo(terms, weight).is_zero()
    assert not algebra.combo(flipped, weight).is_zero()


def test_wrong_cartan_entry_is_detected(a2aff):
    algebra = WordAlgebra(a2aff)
    weight = DimensionVector({0: 1, 1: 1})
    assert not algebra.combo(y4_terms(0, 1, 0, 0, 2), weight).is_zero()


def test_non_serre_combination_is_nonzero(a2):
    algebra = WordAlgebra(a2)
    weight = DimensionVector({0: 2, 1: 1})
    # drop one permutation of the symmetrization
    partial = [(c, w) for c, w in serre_terms(0, 1, (0, 1), 0)][:-1]
    assert not algebra.combo(partial, weight).is_zero()


def test_series_oracle(a2aff, a1):
    assert series_oracle_y4(0, 1, 3, a2aff).outcome == PASS
    assert series_oracle_y4(0, 0, 2, a1).outcome == PASS
    assert all(r.outcome == PASS for r in series_suite(a2aff, 2))


def test_series_oracle_flags_a_broken_relation(a2aff, monkeypatch):
    import yshuffle.relations as rel

    real = rel.y4_series_sides

    def broken(i, j, R, c_ij):
        lhs, rhs = real(i, j, R, c_ij)
        h = Polynomial.hbar()
        lhs.setdefault((0, 0), []).append((h * h, [(i, 0), (j, 0)]))
        return lhs, rhs

    monkeypatch.setattr(rel, "y4_series_sides", broken)
    assert rel.series_oracle_y4(0, 1, 2, a2aff).outcome == FAIL


def test_unchecked_relations_are_listed():
    reports = not_checked_reports()
    assert {r.kind for r in reports} == {k.lower() for k in UNCHECKED_RELATIONS}
    assert all(r.outcome == NOT_CHECKED for r in reports)


def test_negative_modes_rejected(a2):
    with pytest.raises(ValueError):
        check_y4(0, 1, -1, 0, a2)
