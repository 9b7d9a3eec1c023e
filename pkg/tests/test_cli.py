"""Command line interface: exit codes, JSON output, determinism."""

import json

import pytest

from csymcomp.cli import main, parse_complex, symbol_from_spec, to_jsonable
from csymcomp.mobius import SymbolKind, classify


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- helpers ----------------------------------------------------------------------


def test_parse_complex_forms():
    assert parse_complex("0.5") == 0.5
    assert parse_complex("0.5,0.2") == 0.5 + 0.2j
    assert parse_complex("0.5+0.2j") == 0.5 + 0.2j


def test_symbol_from_spec_families():
    assert classify(symbol_from_spec({"family": "rotation", "theta": 0.0})).kind is (
        SymbolKind.ROTATION
    )
    m = symbol_from_spec({"family": "involution", "a": [0.5, 0.0]})
    assert classify(m).kind is SymbolKind.ELLIPTIC_AUT
    m = symbol_from_spec({"a": [0.5, 0], "b": [0.25, 0], "c": [0, 0], "d": [1, 0]})
    assert m.b == pytest.approx(0.25)


def test_symbol_from_spec_unknown_family():
    with pytest.raises(ValueError):
        symbol_from_spec({"family": "nope"})


def test_to_jsonable_complex_and_floats():
    out = to_jsonable({"z": 0.1 + 0.2j, "x": 1 / 3})
    assert out["z"] == [0.1, 0.2]
    assert out["x"] == float(f"{1/3:.15g}")


# -- classify ----------------------------------------------------------------------


def test_classify_cs_symbol(capsys):
    code, out, _ = run(
        capsys, "classify", "--json", "--symbol", '{"family":"involution","a":[0.5,0]}'
    )
    assert code == 0
    data = json.loads(out)
    assert data["verdict"]["is_cs"] is True
    assert "involutive_automorphism" in data["verdict"]["witnesses"]


def test_classify_non_cs_symbol(capsys):
    code, out, _ = run(
        capsys, "classify", "--json", "--symbol", '{"family":"elliptic3","a":[0.5,0]}'
    )
    assert code == 0
    assert json.loads(out)["verdict"]["is_cs"] is False


def test_classify_not_selfmap_exits_2(capsys):
    code, out, _ = run(
        capsys,
        "classify",
        "--json",
        "--symbol",
        '{"a":[2,0],"b":[0,0],"c":[0,0],"d":[1,0]}',
    )
    assert code == 2
    assert json.loads(out)["error"] == "not a self-map of the unit disk"


def test_classify_malformed_symbol_exits_1(capsys):
    code, _, err = run(capsys, "classify", "--symbol", "not json")
    assert code == 1
    assert "invalid symbol" in err


def test_classify_text_output(capsys):
    code, out, _ = run(capsys, "classify", "--symbol", '{"family":"rotation","theta":1.0}')
    assert code == 0
    assert "is_cs: true" in out


# -- verify -------------------------------------------------------------------------


def test_verify_identities_suite_passes(capsys):
    code, out, _ = run(
        capsys, "verify", "--json", "--suite", "identities", "--a", "0.5", "--truncation", "256"
    )
    assert code == 0
    data = json.loads(out)
    assert data["all_pass"] is True
    assert all(ch["pass"] for ch in data["checks"])


def test_verify_schroeder_suite(capsys):
    code, out, _ = run(
        capsys, "verify", "--json", "--suite", "schroeder", "--b", "0.5", "--c", "0.25"
    )
    assert code == 0
    assert json.loads(out)["all_pass"] is True


def test_verify_order3_suite(capsys):
    code, out, _ = run(
        capsys, "verify", "--json", "--suite", "order3", "--a", "0.3", "--truncation", "512"
    )
    assert code == 0
    data = json.loads(out)
    names = [ch["name"] for ch in data["checks"]]
    assert "gap_strictly_positive" in names


# -- residual -----------------------------------------------------------------------


def test_residual_rotation_is_zero(capsys):
    code, out, _ = run(
        capsys,
        "residual",
        "--json",
        "--symbol",
        '{"family":"rotation","theta":1.0}',
        "--truncation-schedule",
        "8,16",
        "--restarts",
        "2",
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["truncation"] for r in rows] == [8, 16]
    assert all(r["best_residual"] <= 1e-12 for r in rows)


def test_residual_rejects_non_selfmap(capsys):
    code, _, err = run(
        capsys,
        "residual",
        "--symbol",
        '{"a":[2,0],"b":[0,0],"c":[0,0],"d":[1,0]}',
    )
    assert code == 2


# -- sweep --------------------------------------------------------------------------


def test_sweep_writes_csv(capsys, tmp_path):
    out_file = tmp_path / "sweep.csv"
    code, out, _ = run(
        capsys,
        "sweep",
        "--family",
        "involution",
        "--grid",
        "a=0.1:0.8:4",
        "--out",
        str(out_file),
    )
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0].startswith("family,a,class,is_cs")
    assert len(lines) == 5
    assert all("True" in ln for ln in lines[1:])


def test_sweep_bad_grid_exits_1(capsys, tmp_path):
    code, _, err = run(
        capsys, "sweep", "--family", "involution", "--grid", "a=bad", "--out", str(tmp_path / "x.csv")
    )
    assert code == 1


# -- corpus -------------------------------------------------------------------------


def test_bundled_corpus_all_match(capsys):
    code, out, _ = run(capsys, "corpus", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["symbols"] == 30
    assert data["mismatches"] == 0
    assert data["malformed"] == 0


def test_corpus_reports_mismatch_exit_3(capsys, tmp_path):
    f = tmp_path / "bad.jsonl"
    f.write_text('{"name":"x","family":"involution","a":[0.5,0],"expected_cs":false}\n')
    code, out, _ = run(capsys, "corpus", "--json", "--in", str(f))
    assert code == 3
    assert json.loads(out)["mismatches"] == 1


def test_corpus_malformed_line_exit_1(capsys, tmp_path):
    f = tmp_path / "bad.jsonl"
    f.write_text("{not json}\n")
    code, out, _ = run(capsys, "corpus", "--json", "--in", str(f))
    assert code == 1
    assert json.loads(out)["malformed"] == 1


# -- determinism ----------------------------------------------------------------------


def test_reports_byte_identical(capsys):
    outputs = []
    for _ in range(2):
        _, out, _ = run(
            capsys, "verify", "--json", "--suite", "order3", "--a", "0.5"
        )
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_residual_report_byte_identical(capsys):
    outputs = []
    for _ in range(2):
        _, out, _ = run(
            capsys,
            "residual",
            "--json",
            "--symbol",
            '{"family":"involution","a":[0.5,0]}',
            "--truncation-schedule",
            "8",
            "--restarts",
            "3",
            "--seed",
            "42",
        )
        outputs.append(out)
    assert outputs[0] == outputs[1]
