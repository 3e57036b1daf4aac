"""CLI contract: parsing, report serialization, exit codes, determinism."""

import json

import pytest

from rcbs import InvariantViolation, ParseError
from rcbs.cli import analyze_dataset, main, parse_dataset, render_json


@pytest.fixture
def fixture_csv(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("re_a,re_b\n3,1\n1,1\n")
    return str(path)


class TestParseDataset:
    def test_csv_defaults(self, fixture_csv):
        ds = parse_dataset(fixture_csv, "csv")
        assert ds.a == (3 + 0j, 1 + 0j)
        assert ds.b == (1 + 0j, 1 + 0j)
        assert ds.w == (1.0, 1.0)

    def test_csv_full_columns(self, tmp_path):
        p = tmp_path / "full.csv"
        p.write_text("re_a,im_a,re_b,im_b,weight\n1,2,3,4,5\n")
        ds = parse_dataset(str(p), "csv")
        assert ds.a == (1 + 2j,)
        assert ds.b == (3 + 4j,)
        assert ds.w == (5.0,)

    def test_json_direct_mapping(self, tmp_path):
        p = tmp_path / "d.json"
        p.write_text('{"a": [[0, 1]], "b": [[1, 0]], "w": [2]}')
        ds = parse_dataset(str(p), "json")
        assert ds.a == (1j,)
        assert ds.b == (1 + 0j,)
        assert ds.w == (2.0,)

    def test_json_scalar_entries(self, tmp_path):
        p = tmp_path / "d.json"
        p.write_text('{"a": [3, 1], "b": [1, 1]}')
        ds = parse_dataset(str(p), "json")
        assert ds.a == (3 + 0j, 1 + 0j)
        assert ds.w == (1.0, 1.0)

    def test_negative_weight_rejected(self, tmp_path):
        p = tmp_path / "neg.csv"
        p.write_text("re_a,re_b,weight\n1,1,-1\n")
        with pytest.raises(InvariantViolation):
            parse_dataset(str(p), "csv")

    def test_unknown_column(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("re_a,re_b,foo\n1,1,1\n")
        with pytest.raises(ParseError):
            parse_dataset(str(p), "csv")

    def test_missing_required_column(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("re_a,im_a\n1,1\n")
        with pytest.raises(ParseError):
            parse_dataset(str(p), "csv")

    def test_bad_number(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("re_a,re_b\nx,1\n")
        with pytest.raises(ParseError) as exc:
            parse_dataset(str(p), "csv")
        assert exc.value.line == 2
        assert exc.value.field == "re_a"

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        with pytest.raises(ParseError):
            parse_dataset(str(p), "csv")

    def test_header_only(self, tmp_path):
        p = tmp_path / "hdr.csv"
        p.write_text("re_a,re_b\n")
        with pytest.raises(ParseError):
            parse_dataset(str(p), "csv")

    def test_json_length_mismatch(self, tmp_path):
        p = tmp_path / "d.json"
        p.write_text('{"a": [1, 2], "b": [1]}')
        with pytest.raises(InvariantViolation):
            parse_dataset(str(p), "json")

    def test_json_nan_rejected(self, tmp_path):
        p = tmp_path / "d.json"
        p.write_text('{"a": [NaN], "b": [1]}')
        with pytest.raises((ParseError, InvariantViolation)):
            parse_dataset(str(p), "json")


class TestAnalyze:
    def test_fixture_report_values(self, fixture_csv):
        ds = parse_dataset(fixture_csv, "csv")
        report = analyze_dataset(ds)
        assert report.disk.alpha == pytest.approx(2 + 0j, abs=1e-12)
        assert report.disk.r == pytest.approx(1.0, abs=1e-12)
        by_id = {rep.bound_id: rep for rep in report.bounds}
        assert by_id["thm22"].rhs_chain[0] == pytest.approx(16.0 / 3.0, rel=1e-12)
        assert by_id["cassels"].rhs_chain[0] == pytest.approx(16.0 / 12.0, rel=1e-12)
        assert not report.violations
        ids = [rep.bound_id for rep in report.bounds]
        assert len(ids) == len(set(ids))

    def test_json_round_trip_byte_identical(self, fixture_csv, capsys):
        code = main(["analyze", fixture_csv, "--format", "json"])
        out = capsys.readouterr().out
        assert code == 0
        obj = json.loads(out)
        assert render_json(obj) == out

    def test_determinism(self, fixture_csv, capsys):
        main(["analyze", fixture_csv, "--format", "json"])
        first = capsys.readouterr().out
        main(["analyze", fixture_csv, "--format", "json"])
        second = capsys.readouterr().out
        assert first == second

    def test_text_and_json_same_precision(self, fixture_csv, capsys):
        main(["analyze", fixture_csv, "--format", "text"])
        text = capsys.readouterr().out
        main(["analyze", fixture_csv, "--format", "json"])
        out = capsys.readouterr().out
        rhs = json.loads(out)["bounds"]
        thm22 = next(b for b in rhs if b["id"] == "thm22")
        assert repr(thm22["rhs_chain"][0]) in text

    def test_override_hypothesis_failure(self, fixture_csv, capsys):
        code = main(
            ["analyze", fixture_csv, "--alpha", "2", "--radius", "0.5",
             "--format", "json"]
        )
        out = capsys.readouterr().out
        assert code == 0
        obj = json.loads(out)
        by_id = {b["id"]: b for b in obj["bounds"]}
        for bid in ("thm21", "thm22"):
            assert by_id[bid]["hypothesis_ok"] is False
            assert by_id[bid]["hypothesis_worst_index"] == 0
        assert obj["fit"]["disk"]["source"] == "override"

    def test_exit_1_on_empty_file(self, tmp_path, capsys):
        p = tmp_path / "empty.csv"
        p.write_text("")
        assert main(["analyze", str(p)]) == 1
        assert "error:" in capsys.readouterr().err

    def test_exit_1_on_missing_file(self, capsys):
        assert main(["analyze", "/nonexistent/nope.csv"]) == 1

    def test_exit_2_on_bad_erratum_choice(self, tmp_path, capsys):
        p = tmp_path / "km.csv"
        p.write_text("re_a,re_b,weight\n0.4,1,1\n0.1,1,2\n")
        code = main(["analyze", str(p), "--km-variant", "literal", "--format", "json"])
        out = capsys.readouterr().out
        assert code == 2
        obj = json.loads(out)
        assert any("klamkin" in v for v in obj["violations"])

    def test_corrected_form_exits_zero(self, tmp_path, capsys):
        p = tmp_path / "km.csv"
        p.write_text("re_a,re_b,weight\n0.4,1,1\n0.1,1,2\n")
        assert main(["analyze", str(p)]) == 0
        capsys.readouterr()

    def test_band_override(self, fixture_csv, capsys):
        code = main(
            ["analyze", fixture_csv, "--gamma", "1", "--Gamma", "3",
             "--format", "json"]
        )
        out = capsys.readouterr().out
        assert code == 0
        obj = json.loads(out)
        assert obj["fit"]["band"]["source"] == "override"
        by_id = {b["id"]: b for b in obj["bounds"]}
        assert by_id["thm31"]["rhs_chain"][0] == pytest.approx(16 / 3, rel=1e-12)

    def test_tol_env_override(self, fixture_csv, capsys, monkeypatch):
        monkeypatch.setenv("RCBS_TOL", "1e-6")
        main(["analyze", fixture_csv, "--format", "json"])
        obj = json.loads(capsys.readouterr().out)
        assert obj["policy"]["verify_tol"] == 1e-6

    def test_tol_flag_beats_env(self, fixture_csv, capsys, monkeypatch):
        monkeypatch.setenv("RCBS_TOL", "1e-6")
        main(["analyze", fixture_csv, "--tol", "1e-3", "--format", "json"])
        obj = json.loads(capsys.readouterr().out)
        assert obj["policy"]["verify_tol"] == 1e-3

    def test_errata_notes_present(self, fixture_csv, capsys):
        main(["analyze", fixture_csv, "--format", "json"])
        obj = json.loads(capsys.readouterr().out)
        notes = " ".join(obj["errata_notes"])
        assert "klamkin_mclenaghan" in notes
        assert "generalized_dm" in notes
        assert "thm31" in notes

    def test_mismatched_override_flags(self, fixture_csv, capsys):
        assert main(["analyze", fixture_csv, "--alpha", "2"]) == 1

    def test_complex_json_dataset(self, tmp_path, capsys):
        p = tmp_path / "c.json"
        p.write_text('{"a": [[0, 1], [1, 0]], "b": [[1, 0], [0, 1]]}')
        code = main(["analyze", str(p), "--format", "json"])
        out = capsys.readouterr().out
        assert code == 0
        obj = json.loads(out)
        assert obj["dataset"]["real_only"] is False
        assert not obj["fit"]["applicability"]["classical"]["ok"]


class TestWitnessCommand:
    def test_thm61(self, capsys):
        code = main(["witness", "thm61"])
        out = capsys.readouterr().out
        assert code == 0
        assert "limit gap" in out

    def test_thm21_single_row(self, capsys):
        code = main(["witness", "thm21", "--format", "json"])
        out = capsys.readouterr().out
        assert code == 0
        obj = json.loads(out)
        assert obj["schedule"] == [1.0]
        assert obj["estimates"] == [2.0]

    def test_unknown_theorem(self, capsys):
        assert main(["witness", "nosuch"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_sweep_flag(self, capsys):
        code = main(["witness", "thm51", "--sweep", "1e-1,1e-4,4", "--format", "json"])
        out = capsys.readouterr().out
        assert code == 0
        obj = json.loads(out)
        assert len(obj["schedule"]) == 4
        assert obj["schedule"][0] == pytest.approx(0.1)
        assert obj["schedule"][-1] == pytest.approx(1e-4)

    def test_bad_sweep_flag(self, capsys):
        assert main(["witness", "thm51", "--sweep", "1e-6,1e-1,4"]) == 1

    def test_usage_error_exits_one(self, capsys):
        assert main(["analyze"]) == 1
        assert main(["frobnicate"]) == 1


class TestFormFlags:
    def test_thm31_half_form_holds(self, fixture_csv, capsys):
        code = main(
            ["analyze", fixture_csv, "--thm31-form", "half", "--format", "json"]
        )
        out = capsys.readouterr().out
        assert code == 0  # the printed half form is weaker but still true
        obj = json.loads(out)
        thm31 = next(b for b in obj["bounds"] if b["id"] == "thm31")
        assert "form=paper_literal_half" in thm31["notes"]
        assert thm31["rhs_chain"][0] == pytest.approx(32.0 / 3.0, rel=1e-12)
        notes = " ".join(obj["errata_notes"])
        assert "printed first denominator" in notes
