import csv
import io
import json

import seedsense.cli as cli_mod
from seedsense.cli import run
from seedsense.selfcheck import CheckResult


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestExitCodes:
    def test_success(self, capsys):
        code, out, _ = invoke(capsys, "count", "--length", "5", "--score", "3",
                              "--match", "1", "--mismatch", "1")
        assert code == 0
        assert out == "1\n"

    def test_usage_errors(self, capsys):
        assert invoke(capsys, "count")[0] == 2
        assert invoke(capsys, "count", "--length", "0")[0] == 2
        assert invoke(capsys, "nonsense")[0] == 2
        assert invoke(capsys, "sensitivity", "--seed", "011", "--length", "5",
                      "--score", "3")[0] == 2
        assert invoke(capsys, "sensitivity", "--seed", "101", "--length", "9",
                      "--score", "3", "--max-overlap", "3")[0] == 2
        assert invoke(capsys, "count", "--length", "5", "--score", "3",
                      "--model", "all", "--format", "yaml")[0] == 2

    def test_all_model_requires_score(self, capsys):
        assert invoke(capsys, "count", "--length", "5", "--model", "all")[0] == 2

    def test_infeasible(self, capsys):
        code, _, err = invoke(capsys, "sensitivity", "--seed", "11", "--length", "5",
                              "--score", "2")
        assert code == 3
        assert "error" in err

    def test_curve_infeasible_range(self, capsys):
        code, _, _ = invoke(capsys, "curve", "--seed", "11", "--score", "5",
                            "--length-range", "2:4")
        assert code == 3

    def test_help(self, capsys):
        assert invoke(capsys, "--help")[0] == 0

    def test_selfcheck_failure_maps_to_4(self, capsys, monkeypatch):
        monkeypatch.setattr(
            cli_mod, "run_selfcheck",
            lambda max_length: [CheckResult("stub", False, "forced failure")])
        code, out, err = invoke(capsys, "selfcheck")
        assert code == 4
        assert "FAIL stub" in out


class TestCount:
    def test_free_score(self, capsys):
        code, out, _ = invoke(capsys, "count", "--length", "5", "--match", "1",
                              "--mismatch", "1")
        assert code == 0 and out == "2\n"

    def test_infeasible_counts_zero(self, capsys):
        code, out, _ = invoke(capsys, "count", "--length", "5", "--score", "2")
        assert code == 0 and out == "0\n"

    def test_all_model(self, capsys):
        code, out, _ = invoke(capsys, "count", "--length", "40", "--score", "12",
                              "--model", "all")
        assert code == 0 and out == "18643560\n"

    def test_csv_fields(self, capsys):
        code, out, _ = invoke(capsys, "count", "--length", "6", "--score", "4",
                              "--match", "1", "--mismatch", "1", "--format", "csv")
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 1
        assert rows[0]["count"] == "2"
        assert rows[0]["model"] == "homogeneous"


class TestGenerate:
    def test_unique_member_text(self, capsys):
        code, out, _ = invoke(capsys, "generate", "--length", "5", "--score", "3",
                              "--match", "1", "--mismatch", "1", "--samples", "3",
                              "--rng-seed", "7")
        assert code == 0
        lines = out.splitlines()
        assert lines[:3] == ["11011", "11011", "11011"]
        assert lines[3].startswith("# match=1 mismatch=1 length=5 score=3")

    def test_identical_invocations_byte_identical(self, capsys):
        args = ("generate", "--length", "12", "--score", "8", "--samples", "5",
                "--rng-seed", "41")
        first = invoke(capsys, *args)
        second = invoke(capsys, *args)
        assert first == second

    def test_threads_do_not_change_output(self, capsys):
        base = ("generate", "--length", "12", "--score", "8", "--samples", "6",
                "--rng-seed", "3")
        serial = invoke(capsys, *base, "--threads", "1")
        forked = invoke(capsys, *base, "--threads", "2")
        assert serial == forked

    def test_json_fields_match_csv(self, capsys):
        args = ("generate", "--length", "10", "--score", "6", "--samples", "2",
                "--rng-seed", "1")
        _, csv_out, _ = invoke(capsys, *args, "--format", "csv")
        _, json_out, _ = invoke(capsys, *args, "--format", "json")
        csv_rows = parse_csv(csv_out)
        json_rows = json.loads(json_out)
        assert [set(r) for r in csv_rows] == [set(r) for r in json_rows]
        assert [r["alignment"] for r in csv_rows] == [r["alignment"] for r in json_rows]

    def test_infeasible(self, capsys):
        assert invoke(capsys, "generate", "--length", "5", "--score", "2")[0] == 3


class TestSensitivity:
    def test_text_is_decimal_line(self, capsys):
        code, out, _ = invoke(capsys, "sensitivity", "--seed", "11", "--length", "5",
                              "--score", "3", "--match", "1", "--mismatch", "1")
        assert code == 0 and out == "1.000000\n"

    def test_precision(self, capsys):
        code, out, _ = invoke(capsys, "sensitivity", "--seed", "111", "--length", "12",
                              "--score", "4", "--match", "1", "--mismatch", "1",
                              "--precision", "3")
        assert code == 0
        value = out.strip()
        assert len(value.split(".")[1]) == 3

    def test_csv_roundtrip_lossless(self, capsys):
        code, out, _ = invoke(capsys, "sensitivity", "--seed", "1011", "--length", "14",
                              "--score", "6", "--format", "csv")
        assert code == 0
        row = parse_csv(out)[0]
        assert int(row["numerator"]) <= int(row["denominator"])
        assert row["seed"] == "1011"
        assert row["model"] == "homogeneous"
        assert (int(row["length"]), int(row["score"])) == (14, 6)
        from seedsense.sensitivity import decimal_ratio
        assert row["probability"] == decimal_ratio(
            int(row["numerator"]), int(row["denominator"]), 6)

    def test_occurrence_flags(self, capsys):
        base = ("sensitivity", "--seed", "101", "--length", "14", "--score", "4",
                "--match", "1", "--mismatch", "1", "--format", "csv")
        _, single, _ = invoke(capsys, *base)
        _, double, _ = invoke(capsys, *base, "--occurrences", "2", "--max-overlap", "1")
        p1 = parse_csv(single)[0]
        p2 = parse_csv(double)[0]
        assert int(p2["numerator"]) <= int(p1["numerator"])
        assert p2["occurrences"] == "2" and p2["max_overlap"] == "1"


class TestMc:
    def test_deterministic_and_fields(self, capsys):
        args = ("mc", "--seed", "1011", "--length", "14", "--score", "6",
                "--samples", "400", "--rng-seed", "11", "--format", "json")
        first = invoke(capsys, *args)
        second = invoke(capsys, *args)
        assert first == second
        row = json.loads(first[1])[0]
        assert row["samples"] == 400
        assert 0.0 <= float(row["estimate"]) <= 1.0
        assert "stderr" in row


class TestOptimize:
    def test_csv_schema_and_ranking(self, capsys):
        code, out, _ = invoke(capsys, "optimize", "--weight", "3", "--max-span", "6",
                              "--length", "12", "--score", "4", "--match", "1",
                              "--mismatch", "1", "--top", "3", "--threads", "1",
                              "--format", "csv")
        assert code == 0
        rows = parse_csv(out)
        assert list(rows[0]) == ["rank", "seed", "span", "weight", "numerator",
                                 "denominator", "probability"]
        assert [r["rank"] for r in rows] == ["1", "2", "3"]
        assert rows[0]["seed"] == "100101"
        probabilities = [float(r["probability"]) for r in rows]
        assert probabilities == sorted(probabilities, reverse=True)

    def test_text_footer(self, capsys):
        code, out, _ = invoke(capsys, "optimize", "--weight", "2", "--max-span", "3",
                              "--length", "10", "--score", "4", "--match", "1",
                              "--mismatch", "1", "--threads", "1")
        assert code == 0
        assert out.splitlines()[-1] == "# candidates=2"


class TestCurve:
    def test_schema_and_sorting(self, capsys):
        code, out, _ = invoke(capsys, "curve", "--seed", "1011", "--score", "8",
                              "--length-range", "8:24", "--format", "csv")
        assert code == 0
        rows = parse_csv(out)
        assert list(rows[0]) == ["n", "score", "seed", "model", "numerator",
                                 "denominator", "probability"]
        pairs = [(int(r["n"]), r["model"]) for r in rows]
        assert pairs == sorted(pairs)
        assert len(pairs) == len(set(pairs))
        # both models present for every feasible length; (1,3) needs n % 4 == 0
        assert {n for n, _ in pairs} == {8, 12, 16, 20, 24}
        assert {m for _, m in pairs} == {"all", "homogeneous"}

    def test_single_model_and_step(self, capsys):
        code, out, _ = invoke(capsys, "curve", "--seed", "11", "--score", "4",
                              "--match", "1", "--mismatch", "1",
                              "--length-range", "8:16:4", "--model", "homogeneous",
                              "--format", "csv")
        assert code == 0
        rows = parse_csv(out)
        assert {r["model"] for r in rows} == {"homogeneous"}
        assert [int(r["n"]) for r in rows] == [8, 12, 16]

    def test_bad_range(self, capsys):
        assert invoke(capsys, "curve", "--seed", "11", "--score", "4",
                      "--length-range", "9")[0] == 2
        assert invoke(capsys, "curve", "--seed", "11", "--score", "4",
                      "--length-range", "5:1")[0] == 2


class TestOutputFile:
    def test_output_flag_writes_file(self, capsys, tmp_path):
        target = tmp_path / "out.csv"
        code, out, _ = invoke(capsys, "count", "--length", "5", "--score", "3",
                              "--match", "1", "--mismatch", "1", "--format", "csv",
                              "--output", str(target))
        assert code == 0
        assert out == ""
        rows = parse_csv(target.read_text())
        assert rows[0]["count"] == "1"


class TestSelfcheckCommand:
    def test_small_run_passes(self, capsys):
        code, out, _ = invoke(capsys, "selfcheck", "--max-length", "8")
        assert code == 0
        lines = out.splitlines()
        assert all(line.startswith(("PASS", "#")) for line in lines)
        assert lines[-1].startswith("# 9/9")
