import json
import warnings

import pytest

from conftest import data_path, load
from yshuffle.quiver import (
    DimensionVector,
    Quiver,
    QuiverError,
    PBWScopeWarning,
    delta_vector,
    finite_positive_roots,
    sub_vectors,
)


def test_cartan_from_arrows_and_back(a2aff):
    assert a2aff.cartan() == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert Quiver.from_cartan(a2aff.cartan()).to_dict() == a2aff.to_dict()


def test_directed_counts_follow_orientation(a2aff):
    assert a2aff.directed_count(0, 1) == 1
    assert a2aff.directed_count(1, 0) == 0


def test_parallel_arrow_weights(a1aff):
    ms = sorted((a.m, a.m_star) for a in a1aff.arrows)
    # a = 2 parallel arrows: p = 1, 2
    assert ms == [(0, 2), (2, 0)]


def test_loops_need_opt_in():
    with pytest.raises(QuiverError):
        Quiver([0], [(0, 0)])
    q = load("jordan")
    assert q.has_loops()
    assert q.cartan() == [[0]]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        q.warn_scope()
    assert any(issubclass(w.category, PBWScopeWarning) for w in caught)


def test_a1_affine_is_flagged(a1aff, a2aff):
    assert a1aff.is_affine_a1()
    assert not a2aff.is_affine_a1()
    assert a1aff.scope_warnings()


@pytest.mark.parametrize(
    "doc",
    [
        {"vertices": [0, 1], "cartan": [[2, -1], [-2, 2]]},
        {"vertices": [0, 1], "cartan": [[2, 1], [1, 2]]},
        {"vertices": [0], "cartan": [[1]]},
        {"vertices": [0, 0], "arrows": []},
        {"vertices": [0], "arrows": [{"out": 0, "inc": 3}]},
        {"arrows": []},
        {"vertices": [0, 1], "arrows": [{"out": 0}]},
    ],
)
def test_malformed_documents(doc):
    with pytest.raises(QuiverError):
        Quiver.from_dict(doc)


def test_json_errors_carry_line_and_column(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "vertices": [0,\n}')
    with pytest.raises(QuiverError, match=r"line 3, column 1"):
        Quiver.load(str(bad))


def test_fingerprint_is_canonical(tmp_path):
    q = load("a2")
    other = tmp_path / "same.json"
    other.write_text(json.dumps({"vertices": [0, 1], "arrows": [{"out": 0, "inc": 1}]}))
    assert Quiver.load(str(other)).fingerprint() == q.fingerprint()
    flipped = Quiver([0, 1], [(1, 0)])
    assert flipped.fingerprint() != q.fingerprint()


def test_delta_vectors():
    assert delta_vector(load("a2aff").cartan()) == [1, 1, 1]
    assert delta_vector(load("a1aff").cartan()) == [1, 1]
    assert delta_vector(load("d4aff").cartan()) == [1, 1, 1, 1, 2]
    assert delta_vector(load("a3aff").cartan()) == [1, 1, 1, 1]
    with pytest.raises(QuiverError):
        delta_vector(load("a2").cartan())


def test_finite_root_counts():
    assert sorted(finite_positive_roots([[2, -1], [-1, 2]])) == [(0, 1), (1, 0), (1, 1)]
    assert finite_positive_roots([[2]]) == [(1,)]
    a3 = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert len(finite_positive_roots(a3)) == 6
    d4 = [[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -1], [-1, -1, -1, 2]]
    roots = finite_positive_roots(d4)
    assert len(roots) == 12
    assert max(roots, key=sum) == (1, 1, 1, 2)
    with pytest.raises(QuiverError):
        finite_positive_roots(load("a2aff").cartan())


def test_finite_roots_have_norm_two():
    d4 = [[2, 0, 0, -1], [0, 2, 0, -1], [0, 0, 2, -1], [-1, -1, -1, 2]]
    for r in finite_positive_roots(d4):
        assert sum(r[i] * d4[i][j] * r[j] for i in range(4) for j in range(4)) == 2


def test_dimension_vectors():
    v = DimensionVector({0: 2, 1: 0, 2: 1})
    assert dict(v) == {0: 2, 2: 1}
    assert v.norm() == 3
    assert DimensionVector.unit(0) <= v
    assert (v - DimensionVector.unit(2)) == DimensionVector({0: 2})
    assert len(list(sub_vectors(v))) == 6
    assert hash(v) == hash(DimensionVector({2: 1, 0: 2}))
