import json
import os

import pytest

from rankgrad.cli import main

S3_PRES_TEXT = """# format: presentation v1
gens: 2
rel: aa
rel: bbb
rel: abab
"""

GRADIENT_SPEC = {
    "format": "gradient-spec",
    "version": 1,
    "kind": "fiber-product",
    "rank": 2,
    "name": "cli-test",
    "levels": [
        {"name": "V4", "relators": ["aa", "bb", "abAB"]},
        {"name": "S3", "relators": ["aa", "bbb", "abab"]},
    ],
}


def test_witt_csv_golden(tmp_path, capsys):
    out = tmp_path / "witt.csv"
    code = main(["witt", "--p", "2", "--n-max", "10", "-o", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# format: witt-table v1")
    assert lines[1] == "n,r,a,b,index_exponent,ratio_num,ratio_den"
    assert lines[2] == "1,2,2,2,,,"
    assert lines[5] == "4,3,8,18,10,8,10"


def test_witt_byte_identical_across_runs(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["witt", "--p", "2", "--n-max", "32", "--epsilon", "1/10",
                 "-o", str(out1)]) == 0
    assert main(["witt", "--p", "2", "--n-max", "32", "--epsilon", "1/10",
                 "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_witt_epsilon_summary(tmp_path, capsys):
    out = tmp_path / "w.csv"
    assert main(["witt", "--p", "2", "--n-max", "8", "--epsilon", "1/10",
                 "-o", str(out)]) == 0
    summary = json.loads(capsys.readouterr().out.strip())
    assert summary["check"] == "ratio-threshold"
    assert summary["witnesses"] == [2, 3]


def test_witt_figures(tmp_path):
    figdir = tmp_path / "figs"
    out = tmp_path / "w.csv"
    assert main(["witt", "--p", "2", "--n-max", "12", "-o", str(out),
                 "--figures", str(figdir)]) == 0
    assert (figdir / "witt_growth.png").stat().st_size > 0


def test_verify_unknown_suite_usage_exit(tmp_path):
    assert main(["verify", "--suite", "nosuch"]) == 2


def test_verify_schur_small(tmp_path):
    out = tmp_path / "report.jsonl"
    code = main(["verify", "--suite", "schur", "--max-order", "8",
                 "-o", str(out)])
    assert code == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert rows[0]["format"] == "verify-report"
    assert rows[0]["passed"] is True
    assert len(rows) == 1 + 14  # header + one row per group


def test_verify_normality_small(tmp_path):
    out = tmp_path / "report.jsonl"
    assert main(["verify", "--suite", "normality", "--max-order", "4",
                 "-o", str(out)]) == 0


def test_gradient_csv_and_summary(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(GRADIENT_SPEC))
    out = tmp_path / "records.csv"
    code = main(["gradient", "--spec", str(spec), "-o", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# format: gradient-records v1")
    assert lines[1].split(",")[0] == "n"
    assert len(lines) == 2 + 2
    summary = json.loads(capsys.readouterr().out.strip())
    assert "rank_gradient_estimate_upper_bound" in summary
    assert summary["estimates_are_minima_over_computed_range"] is True


def test_gradient_json_format(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(GRADIENT_SPEC))
    out = tmp_path / "records.jsonl"
    assert main(["gradient", "--spec", str(spec), "--format", "json",
                 "-o", str(out)]) == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert rows[0]["format"] == "gradient-records"
    assert rows[1]["index"] == 4


def test_gradient_bad_spec_exits_2(tmp_path, capsys):
    spec = tmp_path / "bad.json"
    spec.write_text("{")
    assert main(["gradient", "--spec", str(spec)]) == 2
    spec.write_text(json.dumps({"format": "gradient-spec", "kind": "fiber-product",
                                "levels": []}))
    assert main(["gradient", "--spec", str(spec)]) == 2
    assert main(["gradient", "--spec", str(tmp_path / "missing.json")]) == 2


def test_gradient_overflow_exits_3(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(GRADIENT_SPEC))
    assert main(["--max-cosets", "2", "gradient", "--spec", str(spec)]) == 3


def test_bounds_report(tmp_path):
    out = tmp_path / "bounds.jsonl"
    code = main(["bounds", "--a", "S3", "--b", "Z2", "-o", str(out)])
    assert code == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    header, body = rows[0], rows[1:]
    assert header["format"] == "bounds-report"
    assert header["product_order"] == 12
    for row in body:
        assert set(row) >= {"A", "B", "H_index", "dH", "bounds", "pass"}
        assert all(row["pass"])


def test_bounds_accepts_json_group_file(tmp_path):
    path = tmp_path / "z3.json"
    path.write_text(json.dumps({
        "kind": "cayley",
        "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
        "generators": [1],
    }))
    out = tmp_path / "bounds.jsonl"
    assert main(["bounds", "--a", str(path), "--b", "Z2", "-o", str(out)]) == 0


def test_present_pipeline(tmp_path, capsys):
    pres = tmp_path / "s3.pres"
    pres.write_text(S3_PRES_TEXT)
    sub = tmp_path / "sub.txt"
    sub.write_text("# format: subgroup v1\ngen: a\n")
    out = tmp_path / "out.txt"
    code = main(["present", "--pres", str(pres), "--subgroup", str(sub),
                 "--rewrite", "--abelian", "-o", str(out)])
    assert code == 0
    text = out.read_text()
    assert text.splitlines()[0] == "index: 3"
    assert "abelianization:" in text


def test_present_parse_error_exits_2(tmp_path, capsys):
    pres = tmp_path / "bad.pres"
    pres.write_text("gens: two\n")
    assert main(["present", "--pres", str(pres)]) == 2


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2
