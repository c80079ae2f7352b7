"""Command-line interface: outputs, formats, and the exit-code contract."""

import json
import subprocess
import sys

import pytest

from proxima.cli import main
from proxima.report import from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestValidate:
    def test_valid_instance_exit_zero(self, capsys, four_points_path):
        code, out, _ = run(capsys, "validate", str(four_points_path))
        assert code == 0
        assert "valid" in out

    def test_invalid_document_exit_two(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"schema_version": 1, "alpha_hint": 1}))
        code, _, err = run(capsys, "validate", str(path))
        assert code == 2
        assert "error" in err

    def test_axiom_failure_exit_two(self, capsys, tmp_path):
        doc = {
            "schema_version": 1,
            "space": {"kind": "matrix", "distances": [["0", "2"], ["5", "0"]]},
            "points": [{"id": 0}, {"id": 1}],
            "sets": {
                "a": {"kind": "finite", "members": [0]},
                "b": {"kind": "finite", "members": [1]},
            },
            "mapping": {"kind": "table", "entries": [{"from": 0, "to": {"point": 1}}]},
        }
        path = tmp_path / "asym.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "validate", str(path))
        assert code == 2
        assert "FAIL" in out and "matrix-symmetric" in out

    def test_missing_file_exit_two(self, capsys, tmp_path):
        code, _, err = run(capsys, "validate", str(tmp_path / "nope.json"))
        assert code == 2
        assert "error" in err


class TestAnalyze:
    def test_text_output(self, capsys, four_points_path):
        code, out, _ = run(capsys, "analyze", str(four_points_path))
        assert code == 0
        assert "gap d(A, B) = 1" in out
        assert "(-3, -3)" in out and "(0, 4)" in out
        assert "T(A0) within B0: no" in out

    def test_json_output_round_trips(self, capsys, four_points_path):
        code, out, _ = run(capsys, "analyze", str(four_points_path), "--format", "json")
        assert code == 0
        report = from_json(out)
        assert report.command == "analyze"
        assert report.payload["table"]["gap"] == 1.0
        assert [[-3.0, -3.0], [3.0, 3.0], [0.0, 4.0]] == report.payload["table"]["pairs"]

    def test_continuum_a_gets_note(self, capsys, segments_path):
        code, out, _ = run(capsys, "analyze", str(segments_path))
        assert code == 0
        assert "gap d(A, B) = 1" in out
        assert "note" in out

    def test_truncate_flag(self, capsys, progressions_path):
        code, out, _ = run(capsys, "analyze", str(progressions_path), "--truncate", "10")
        assert code == 0
        assert "(7, 7)" in out


class TestVerify:
    def test_contraction_exit_zero(self, capsys, four_points_path):
        code, out, _ = run(
            capsys, "verify", str(four_points_path), "--kind", "perimetric1"
        )
        assert code == 0
        assert "contraction" in out
        assert "0.857142857143" in out

    def test_not_contraction_exit_one(self, capsys, four_points_path):
        code, out, _ = run(
            capsys, "verify", str(four_points_path), "--kind", "proximal1"
        )
        assert code == 1
        assert "not-contraction" in out

    def test_vacuous_exit_zero(self, capsys, tmp_path):
        doc = {
            "schema_version": 1,
            "space": {"kind": "euclidean-1d"},
            "points": [
                {"id": 0, "coords": ["0"]},
                {"id": 1, "coords": ["2"]},
                {"id": 2, "coords": ["1"]},
                {"id": 3, "coords": ["10"]},
            ],
            "sets": {
                "a": {"kind": "finite", "members": [0, 1]},
                "b": {"kind": "finite", "members": [2, 3]},
            },
            "mapping": {
                "kind": "table",
                "entries": [
                    {"from": 0, "to": {"point": 2}},
                    {"from": 1, "to": {"point": 3}},
                ],
            },
        }
        path = tmp_path / "vacuous.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", str(path), "--kind", "proximal1")
        assert code == 0
        assert "vacuous" in out

    def test_triangle_on_non_selfmap_exit_two(self, capsys, four_points_path):
        code, _, err = run(capsys, "verify", str(four_points_path), "--kind", "triangle")
        assert code == 2
        assert "self-map" in err

    def test_json_payload_has_witness(self, capsys, four_points_path):
        code, out, _ = run(
            capsys,
            "verify",
            str(four_points_path),
            "--kind",
            "perimetric1",
            "--format",
            "json",
        )
        report = from_json(out)
        assert report.payload["status"] == "contraction"
        assert report.payload["witness"]["lhs"] == 12.0
        assert report.payload["witness"]["rhs"] == 14.0


class TestLambdaSolveEnumerate:
    def test_lambda_satisfied_exit_zero(self, capsys, seven_points_path):
        code, out, _ = run(capsys, "lambda", str(seven_points_path))
        assert code == 0
        assert "satisfied" in out

    def test_lambda_violated_exit_one(self, capsys, tmp_path):
        doc = {
            "schema_version": 1,
            "space": {"kind": "euclidean-1d"},
            "points": [
                {"id": 0, "coords": ["0"]},
                {"id": 1, "coords": ["4"]},
                {"id": 2, "coords": ["1"]},
                {"id": 3, "coords": ["5"]},
            ],
            "sets": {
                "a": {"kind": "finite", "members": [0, 1]},
                "b": {"kind": "finite", "members": [2, 3]},
            },
            "mapping": {
                "kind": "table",
                "entries": [
                    {"from": 0, "to": {"point": 3}},
                    {"from": 1, "to": {"point": 2}},
                ],
            },
        }
        path = tmp_path / "swapped.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "lambda", str(path))
        assert code == 1
        assert "violated" in out

    def test_solve_converged_exit_zero(self, capsys, seven_points_path):
        code, out, _ = run(capsys, "solve", str(seven_points_path), "--start", "s")
        assert code == 0
        assert "converged-fixed" in out
        assert "result: (1, 1)" in out
        assert "image-repeat" in out

    def test_solve_negative_exit_one(self, capsys, four_points_path):
        code, out, _ = run(capsys, "solve", str(four_points_path), "--start", "0")
        assert code == 1
        assert "no-proximal-successor" in out

    def test_solve_coordinate_start(self, capsys, segments_path):
        code, out, _ = run(capsys, "solve", str(segments_path), "--start", "1,1")
        assert code == 0
        assert "converged-cauchy" in out

    def test_solve_bad_start_exit_two(self, capsys, four_points_path):
        code, _, err = run(capsys, "solve", str(four_points_path), "--start", "zz")
        assert code == 2
        assert "error" in err

    def test_solve_max_iter_flag(self, capsys, segments_path):
        code, out, _ = run(
            capsys, "solve", str(segments_path), "--start", "1,1", "--max-iter", "2"
        )
        assert code == 1
        assert "max-iterations" in out

    def test_enumerate_exit_zero(self, capsys, four_points_path):
        code, out, _ = run(capsys, "enumerate", str(four_points_path))
        assert code == 0
        assert "-3" in out and "3" in out

    def test_enumerate_empty_exit_one(self, capsys, tmp_path):
        doc = {
            "schema_version": 1,
            "space": {"kind": "euclidean-1d"},
            "points": [
                {"id": 0, "coords": ["0"]},
                {"id": 1, "coords": ["1"]},
                {"id": 2, "coords": ["10"]},
            ],
            "sets": {
                "a": {"kind": "finite", "members": [0]},
                "b": {"kind": "finite", "members": [1, 2]},
            },
            "mapping": {
                "kind": "table",
                "entries": [{"from": 0, "to": {"point": 2}}],
            },
        }
        path = tmp_path / "no-bpp.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "enumerate", str(path))
        assert code == 1
        assert "none" in out


class TestCorpus:
    def test_all_entries_pass(self, capsys):
        code, out, _ = run(capsys, "corpus", "--all")
        assert code == 0
        assert "0 failed" in out
        assert "FAIL" not in out

    def test_default_is_all(self, capsys):
        code, out, _ = run(capsys, "corpus")
        assert code == 0
        assert "0 failed" in out

    def test_single_entry(self, capsys):
        code, out, _ = run(capsys, "corpus", "--name", "parallel-segments")
        assert code == 0
        assert "parallel-segments ::" in out

    def test_unknown_entry_exit_two(self, capsys):
        code, _, err = run(capsys, "corpus", "--name", "missing-entry")
        assert code == 2
        assert "available" in err

    def test_env_override_corpus_dir(self, capsys, tmp_path, monkeypatch):
        manifest = {"version": 1, "entries": []}
        (tmp_path / "golden.json").write_text(json.dumps(manifest))
        monkeypatch.setenv("PROXIMA_CORPUS_DIR", str(tmp_path))
        code, out, _ = run(capsys, "corpus", "--all")
        assert code == 0
        assert "0 checks" in out

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "corpus", "--name", "parallel-segments", "--format", "json")
        assert code == 0
        payload = from_json(out).payload
        assert payload["all_passed"] is True
        assert all(c["passed"] for c in payload["checks"])


class TestEntryPoint:
    def test_console_script_help(self):
        out = subprocess.run(
            [sys.executable, "-m", "proxima.cli", "--help"],
            capture_output=True,
            text=True,
        )
        assert out.returncode == 0
        assert "validate" in out.stdout and "corpus" in out.stdout

    def test_unknown_command_exit_two(self):
        out = subprocess.run(
            [sys.executable, "-m", "proxima.cli", "frobnicate"],
            capture_output=True,
            text=True,
        )
        assert out.returncode == 2
