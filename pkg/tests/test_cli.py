import json

import pytest

from quiddities import harness
from quiddities.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_formula(capsys):
    code, out, _ = run(capsys, "count", "--ring", "zmod:5", "--n", "6", "--target", "minus", "--method", "formula")
    assert code == 0
    assert json.loads(out) == {"ring": "zmod:5", "n": 6, "target": "minus", "method": "formula", "value": 149}


def test_count_dp_over_f4(capsys):
    code, out, _ = run(capsys, "count", "--ring", "gf:2^2", "--n", "6", "--target", "minus", "--method", "dp")
    assert code == 0 and json.loads(out)["value"] == 79


def test_count_dp_equals_naive(capsys):
    values = []
    for method in ("dp", "naive"):
        _, out, _ = run(capsys, "count", "--ring", "zmod:9", "--n", "5", "--target", "plus", "--method", method)
        values.append(json.loads(out)["value"])
    assert values[0] == values[1]


def test_count_all_targets(capsys):
    code, out, _ = run(capsys, "count", "--ring", "zmod:5", "--n", "7", "--target", "all", "--method", "recurrence")
    assert code == 0 and json.loads(out)["value"] == {"plus": 651, "minus": 651}


def test_count_small_n_formula(capsys):
    _, out, _ = run(capsys, "count", "--ring", "gf:5", "--n", "4", "--target", "plus", "--method", "formula")
    assert json.loads(out)["value"] == 9


@pytest.mark.parametrize(
    "argv",
    [
        ("count", "--ring", "zmod:9", "--n", "6", "--method", "formula"),
        ("count", "--ring", "gf:4", "--n", "6", "--target", "plus", "--method", "formula"),
        ("count", "--ring", "zmod:8", "--n", "6", "--method", "recurrence"),
        ("count", "--ring", "gf:6", "--n", "6"),
    ],
)
def test_unsupported_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_resource_exit_code(capsys):
    code, _, err = run(capsys, "count", "--ring", "zmod:7", "--n", "14", "--method", "naive")
    assert code == 3 and "guard" in err


def test_irreducible_command(capsys, tmp_path):
    out_file = tmp_path / "classes.txt"
    code, out, _ = run(capsys, "irreducible", "--ring", "zmod:5", "--max-len", "8", "--emit-classes", str(out_file))
    assert code == 0
    assert json.loads(out) == {"N": 5, "v": 9, "ell": 6, "complete": True, "truncated_branches": 0}
    lines = out_file.read_text().splitlines()
    assert len(lines) == 9 and lines[0] == "(1,1,1)"


def test_irreducible_incomplete_is_reported(capsys):
    code, out, err = run(capsys, "irreducible", "--ring", "zmod:7", "--max-len", "8", "--jobs", "2")
    assert code == 0 and json.loads(out)["complete"] is False and "incomplete" in err


def test_tables_match_golden_fixtures(tmp_path, capsys):
    assert main(["tables", "--out", str(tmp_path)]) == 0
    for name in harness.TABLE_NAMES:
        assert (tmp_path / f"{name}.csv").read_bytes() == harness.golden_path(name).read_bytes()


def test_tables_rows(capsys):
    _, out, _ = run(capsys, "tables", "w-minus")
    assert "8,43,260,1344,3224,11180,17100,138632,162260,349440" in out.splitlines()
    _, out, _ = run(capsys, "tables", "st")
    assert out.splitlines()[-1] == "10,21760,21760,21760,22016"
    _, out, _ = run(capsys, "tables", "census")
    assert "9,229,12" in out.splitlines()


def test_tables_json(capsys):
    _, out, _ = run(capsys, "tables", "st", "--format", "json")
    doc = json.loads(out)
    assert doc["columns"] == ["n", "S", "-S", "T", "-T"] and len(doc["rows"]) == 9


@pytest.mark.parametrize("suite", ["st", "formulas", "recurrence"])
def test_verify_clean_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", suite)
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["summary"]["mismatch"] == 0


def test_verify_tables_flags_registered_cell(capsys):
    run(capsys, "verify", "tables", "-v")
    report = harness.verify_tables()
    rec = {r.check: r for r in report.records}["w-plus n=6 N=11"]
    assert (rec.status, rec.expected, rec.computed) == ("flagged-typo", 130, 1330)
    assert len(report.records) == 90


def test_typo_registry_default_has_one_cell():
    typos = harness.load_typos()
    assert [(t["table"], t["n"], t["N"], t["printed_value"]) for t in typos] == [("w-plus", 6, 11, 130)]


def test_registered_cell_without_arbitration_stays_mismatch(monkeypatch):
    monkeypatch.setattr(harness, "crt_count", lambda n, N, sign: -1)
    report = harness.verify_tables()
    rec = {r.check: r for r in report.records}["w-plus n=6 N=11"]
    assert rec.status == "mismatch"


def test_unregistered_config_turns_flag_into_mismatch(tmp_path):
    path = tmp_path / "typos.json"
    path.write_text("[]")
    report = harness.verify_tables(harness.load_typos(path))
    rec = {r.check: r for r in report.records}["w-plus n=6 N=11"]
    assert rec.status == "mismatch"


def test_tables_are_deterministic():
    assert harness.render_table("census") == harness.render_table("census")
