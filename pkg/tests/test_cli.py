import json

import pytest

from nmaximal.catalog import build, emit
from nmaximal.cli import main
from nmaximal.exactcore import FieldSpec


@pytest.fixture
def table(tmp_path):
    def write(spec, p, name=None):
        path = tmp_path / f"{name or spec.split('(')[0]}.lie"
        path.write_text(emit(build(spec, FieldSpec.gf(p))))
        return str(path)
    return write


def test_analyze_heisenberg(table, capsys):
    assert main(["analyze", table("heisenberg", 2), "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["frattini_ideal"]["dim"] == 1 and rep["frattini_ideal"]["basis"] == [["0", "0", "1"]]
    assert rep["maximal_subalgebras"]["count"] == 3
    assert rep["chains"]["2"]["count"] == 7
    assert rep["nilpotent"] is True


def test_analyze_text_sl2(table, capsys):
    assert main(["analyze", table("sl2", 5)]) == 0
    out = capsys.readouterr().out
    assert "simple: true" in out
    assert "count: 16" in out


def test_analyze_envelope_marks_unavailable(table, capsys):
    assert main(["analyze", table("abelian(n=3)", 5), "--budget", "10", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["frattini_subalgebra"] == "unavailable: envelope"
    assert rep["subspace_estimate"] == 64


def test_analyze_rational(tmp_path, capsys):
    f = tmp_path / "q.lie"
    f.write_text("field q\ndim 2\nb 0 1 1:1/2\n")
    assert main(["analyze", str(f), "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["solvable"] and rep["nilradical"] == "unavailable: rational field"


def test_chains_exit_codes(table, capsys):
    assert main(["chains", table("heisenberg", 2), "--n", "2", "--predicate", "ideal"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and out.strip().endswith("holds: false")
    assert main(["chains", table("affine2", 3), "--n", "2", "--predicate", "ideal", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 1 and doc["n_maximals"][0]["subalgebra"]["dim"] == 0
    assert main(["chains", table("abelian(n=3)", 7), "--n", "1", "--budget", "5"]) == 2
    assert "exceeds budget 5" in capsys.readouterr().err


def test_parse_error_exits_2(tmp_path, capsys):
    f = tmp_path / "bad.lie"
    f.write_text("field gf 5\ndim 2\nb 1 0 0:1\n")
    assert main(["analyze", str(f)]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["analyze", str(tmp_path / "missing.lie")]) == 2


def test_catalog_list_and_emit(tmp_path, capsys):
    assert main(["catalog", "list"]) == 0
    assert "cor26c" in capsys.readouterr().out
    out = tmp_path / "c.lie"
    assert main(["catalog", "emit", "cor26c(p=3,alpha=1)", "--field", "gf3", "-o", str(out)]) == 0
    assert out.read_text().startswith("field gf 3\ndim 5\nname cor26c(p=3,alpha=1)@gf3\n")
    assert main(["catalog", "emit", "sl2", "--field", "gf2"]) == 2


def test_verify_sweep_and_usage(tmp_path, capsys):
    js = tmp_path / "r.json"
    assert main(["verify", "--scope", "sweep", "--fields", "2", "--dims", "2", "--json", str(js)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("scope sweep gf2 dim 2 exhaustive\nalgebras 4\n")
    assert json.loads(js.read_text())["ok"] is True
    assert main(["verify", "--theorems", "T9_9"]) == 2
    assert main(["verify", "--scope", "sweep", "--fields", "4"]) == 2
    assert main(["verify", "--scope", "sweep", "--sample", "x"]) == 2
    assert main(["verify", "--threads", "0"]) == 2


def test_verify_files(table, capsys):
    files = [table("heisenberg", 5), table("affine2", 7)]
    assert main(["verify", "--scope", "files", "--files", *files, "--theorems", "T1_1,T2_3"]) == 0
    out = capsys.readouterr().out
    assert "algebras 2" in out and "T1_1 checked=2 agreed=2" in out


def test_verify_catalog_reports_findings(capsys):
    assert main(["verify", "--scope", "catalog", "--theorems", "T2_5", "--format", "json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    rep = doc["reports"][0]
    assert rep["violations"] == 0 and rep["findings"] == 2
    assert "cor26c(p=2,alpha=1)@gf2" in rep["documents"]
