import io
import json
import subprocess
import sys

import pytest

from conftest import data_path
from yshuffle.cli import run
from yshuffle.elements import dump_element_file, parse_element_file


def test_shuffle_mul_prints_product(capsys):
    code, _ = run(["shuffle", "mul", "--quiver", data_path("a1"), "--lhs", "x(0,0)", "--rhs", "x(0,0)"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "2"


def test_shuffle_mul_with_polynomial_weights(capsys):
    code, _ = run(["shuffle", "mul", "--quiver", data_path("a1"), "--lhs", "l(0,1)+l(0,2)", "--lhs-weight", "2", "--rhs", "x(0,0)"])
    assert code == 0
    out = capsys.readouterr().out.strip()
    assert "l(0,3)" in out


def test_asymmetric_polynomial_is_a_usage_error(capsys):
    code, _ = run(["shuffle", "mul", "--quiver", data_path("a1"), "--lhs", "l(0,1)", "--lhs-weight", "2", "--rhs", "x(0,0)"])
    assert code == 2
    assert "(1 2)" in capsys.readouterr().err


def test_verify_serre_exit_zero(capsys):
    code, doc = run(["verify", "serre", "--quiver", data_path("a2aff"), "--max-mode", "2", "--format", "json"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["summary"]["status"] == "PASS"
    assert {"y1", "y2", "y3", "y5"} <= {r["kind"] for r in report["reports"] if r["outcome"] == "NOT-CHECKED"}


def test_pbw_table_reports_both_columns(capsys):
    code, _ = run(["pbw", "table", "--quiver", data_path("a2aff"), "--weight", "1,1,1", "--max-degree", "2", "--format", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    row = doc["tables"]["census"][0]
    assert row["computed_gr"] == row["predicted_gr"]["K_AT_L_PLUS_1"] == [6, 12, 18]
    assert row["matching_conventions"] == ["K_AT_L_PLUS_1"]
    assert row["computed_origin"] and row["predicted_origin"]


def test_failing_check_exits_one(capsys):
    code, _ = run(["pbw", "table", "--quiver", data_path("a2aff"), "--weight", "1,1,1", "--max-degree", "1", "--convention", "k-at-l"])
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["verify"],
        ["verify", "y4"],
        ["verify", "y4", "--quiver", "missing.json"],
        ["pbw", "table", "--quiver", data_path("a2aff"), "--weight", "1,1"],
        ["pbw", "table", "--quiver", data_path("a2aff"), "--weight", "3,3,3"],
        ["pbw", "table", "--quiver", data_path("a1aff"), "--weight", "1,1"],
        ["verify", "y4", "--quiver", data_path("a2aff"), "--pairs", "0:1"],
        ["pair", "rank-one", "--vertex", "0", "--f", "l(1,1)", "--g", "1"],
        ["shuffle", "mul", "--quiver", data_path("a1"), "--lhs", "x(0,", "--rhs", "1"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    code, _ = run(argv)
    assert code == 2


def test_exit_code_matrix(capsys):
    passing = [
        ["quiver", "validate", "--quiver", data_path("d4aff")],
        ["verify", "y4", "--quiver", data_path("a2"), "--max-mode", "1"],
        ["verify", "series-oracle", "--quiver", data_path("a2"), "--order", "2"],
        ["verify", "fac-embedding", "--quiver", data_path("a2"), "--count", "3"],
        ["verify", "closure", "--quiver", data_path("a2"), "--count", "2"],
        ["verify", "hbar-zero", "--quiver", data_path("a2"), "--count", "2"],
        ["pair", "rank-one", "--vertex", "0", "--f", "l(0,1)^2", "--g", "l(0,1)^-3"],
        ["pair", "cartan", "--quiver", data_path("a2aff"), "--vertex", "1", "--orders", "2,2"],
        ["bigrade", "check", "--quiver", data_path("a2aff"), "--weight", "1,1,0", "--max-m", "2"],
        ["triangular", "count", "--quiver", data_path("a2aff"), "--plus", "1,1,0", "--minus", "1,0,0", "--max-degree", "2"],
        ["pbw", "table", "--quiver", data_path("a2aff"), "--weight", "1,1,0", "--max-degree", "2", "--grid"],
    ]
    for argv in passing:
        code, _ = run(argv)
        assert code == 0, argv


def test_pair_rank_one_value(capsys):
    code, _ = run(["pair", "rank-one", "--vertex", "0", "--f", "l(0,1)^2", "--g", "l(0,1)^-3"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "-1"


def test_json_is_deterministic(tmp_path):
    argv = ["verify", "fac-embedding", "--quiver", data_path("a2aff"), "--count", "4", "--seed", "17", "--format", "json"]
    outs = []
    for n in range(2):
        out = tmp_path / f"r{n}.json"
        code, _ = run(argv + ["--out", str(out)])
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["schema_version"] == 1
    assert doc["provenance"]["seed"] == 17


def test_time_cap(monkeypatch, capsys):
    monkeypatch.setenv("YSH_BUDGET_SECONDS", "0.05")
    code, _ = run(["pbw", "table", "--quiver", data_path("a2aff"), "--weight", "2,1,1", "--max-degree", "3"])
    assert code == 2
    assert "time cap" in capsys.readouterr().err
    monkeypatch.setenv("YSH_BUDGET_SECONDS", "nope")
    assert run(["quiver", "validate", "--quiver", data_path("a2")])[0] == 2


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "yshuffle", "shuffle", "mul", "--quiver", data_path("a1"), "--lhs", "x(0,0)", "--rhs", "x(0,0)"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "2"


def test_element_file_round_trip(tmp_path):
    path = tmp_path / "el.json"
    path.write_text(json.dumps([{"weight": [2], "poly": "l(0,1)+l(0,2)"}, {"weight": [1, 1], "poly": "h*l(0,1)*l(1,1)"}]))
    elements = parse_element_file(str(path))
    assert [list(w.values()) for w, _ in elements] == [[2], [1, 1]]
    again = tmp_path / "again.json"
    again.write_text(dump_element_file(elements[:1], [0]))
    assert parse_element_file(str(again)) == elements[:1]


def test_element_file_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([{"weight": [2], "poly": "l(0,1)"}]))
    with pytest.raises(ValueError, match=r"\(1 2\)"):
        parse_element_file(str(path))
    path.write_text(json.dumps([{"weight": [-1], "poly": "1"}]))
    with pytest.raises(ValueError, match="malformed weight"):
        parse_element_file(str(path))
    path.write_text("")
    assert parse_element_file(str(path)) == []


def test_a1aff_is_permitted_with_a_warning():
    out, err = io.StringIO(), io.StringIO()
    code, doc = run(["quiver", "validate", "--quiver", data_path("a1aff")], stdout=out, stderr=err)
    assert code == 0
    assert "warning: type A1^(1)" in err.getvalue()
    assert doc.provenance["scope_warnings"]
