"""End-to-end tests for the command line interface."""

import json
import logging

import pytest

from gwvirasoro.cli import create_parser, main, parse_checks, setup_config_from_args
from gwvirasoro.core import CHECKS


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture(autouse=True)
def _reset_logging():
    """Drops handlers main() installs so later tests see fresh streams."""
    yield
    logger = logging.getLogger("gwvirasoro")
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)


class TestParser:
    """Argument parsing and config building."""

    def test_parse_checks(self):
        assert parse_checks("wdvv, unit,,") == ["wdvv", "unit"]
        assert parse_checks(None) == []

    def test_config_from_args(self):
        args = create_parser().parse_args(
            ["check", "-m", "builtin:p1", "-t", "a.json", "-t", "b.json", "--t-max", "6", "--d-max", "2", "-c", "unit"]
        )
        config = setup_config_from_args(args)

        assert config.model == "builtin:p1"
        assert config.tables == ["a.json", "b.json"]
        assert (config.truncation.t_max, config.truncation.d_max) == (6, 2)
        assert config.checks == ["unit"]
        assert config.output_format == "json"

    def test_validate_positional_overrides_model(self):
        args = create_parser().parse_args(["validate", "builtin:point"])
        config = setup_config_from_args(args)

        assert config.model == "builtin:point"
        assert config.output_format == "text"

    def test_usage_errors(self, capsys):
        assert main([]) == 2
        assert main(["check", "--format", "xml"]) == 2
        assert main(["check", "--t-max", "2"]) == 2
        assert "gwvirasoro: error" in capsys.readouterr().err


class TestValidate:
    """The validate command."""

    def test_builtin_plane(self, capsys):
        assert main(["validate", "builtin:p2"]) == 0
        out = capsys.readouterr().out

        assert "b = (-1/2, 1/2, 3/2)" in out
        assert "divisors = g2" in out

    def test_json_summary(self, capsys):
        assert main(["validate", "builtin:p1", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)

        assert data["name"] == "P1"
        assert data["b"] == [0, 1]

    def test_model_file(self, capsys, write_json, p2_document):
        path = write_json("plane.json", p2_document)
        assert main(["validate", str(path)]) == 0
        assert "model P2" in capsys.readouterr().out

    def test_missing_file(self, capsys, tmp_path):
        assert main(["validate", str(tmp_path / "absent.json")]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_conflicting_triple(self, write_json, p2_document):
        p2_document["triple"].append([3, 1, 1, 2])
        path = write_json("broken.json", p2_document)
        assert main(["validate", str(path)]) == 2


class TestBuild:
    """The build command."""

    def test_p1_artifact(self, tmp_path):
        path = tmp_path / "artifacts" / "p1.json"
        assert main(["build", "--model", "builtin:p1", "--out", str(path)]) == 0

        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["potential"]["F1"] == "-1/24*t2"
        assert data["potential"]["window"] == {"t_degree": 8, "novikov": [4]}
        assert data["config"]["truncation"] == {"t_max": 8, "d_max": 4}

    def test_inconsistent_table(self, write_json):
        path = write_json(
            "table.json",
            [
                {"g": 0, "beta": [1], "insertions": [3, 3], "value": 1},
                {"g": 0, "beta": [1], "insertions": [2, 3, 3], "value": 2},
            ],
        )
        assert main(["build", "--table", str(path), "--t-max", "6", "--d-max", "1"]) == 1

    def test_window_too_small(self, write_json):
        path = write_json("cubics.json", [{"g": 0, "beta": [3], "insertions": [3] * 8, "value": 12}])
        assert main(["build", "--table", str(path), "--t-max", "3", "--d-max", "1"]) == 2


class TestSolveGenus1:
    """The solve-genus1 command."""

    def test_degree_zero(self, capsys):
        assert main(["solve-genus1", "--d-max", "0"]) == 0
        assert capsys.readouterr().out == "[]\n"

    def test_through_degree_three(self, tmp_path):
        path = tmp_path / "p2.json"
        assert main(["solve-genus1", "--t-max", "12", "--d-max", "3", "--out", str(path)]) == 0

        rows = json.loads(path.read_text(encoding="utf-8"))
        genus1 = [row for row in rows if row["g"] == 1]
        assert [row["value"] for row in rows if row["g"] == 0] == [1, 1, 12]
        assert [row["value"] for row in genus1] == [0, 0, 1]
        assert genus1[2] == {"g": 1, "beta": [3], "insertions": [3] * 9, "value": 1}

    def test_non_plane_model_needs_tables(self, capsys):
        assert main(["solve-genus1", "--model", "builtin:p1", "--d-max", "2"]) == 2
        assert "needs genus-0 tables" in capsys.readouterr().err

    def test_model_file_needs_tables(self, write_json, p2_document):
        path = write_json("plane.json", p2_document)
        assert main(["solve-genus1", "--model", str(path), "--d-max", "1"]) == 2

    def test_rejects_non_plane_table(self, write_json):
        path = write_json("lines.json", [{"g": 0, "beta": [1], "insertions": [], "value": 1}])
        argv = ["solve-genus1", "--model", "builtin:p1", "--table", str(path), "--d-max", "1"]
        assert main(argv) == 1


class TestCheck:
    """The check command."""

    def test_p1_main_theorem(self, capsys):
        assert main(["check", "--model", "builtin:p1", "--checks", "virasoro_small,main_theorem"]) == 0
        reports = json_lines(capsys.readouterr().out)

        assert [r["name"] for r in reports] == ["main_theorem", "virasoro_small"]
        assert all(r["pass"] for r in reports)
        assert reports[0]["millis"] is None

    def test_point_all(self, capsys):
        assert main(["check", "--model", "builtin:point"]) == 0
        reports = json_lines(capsys.readouterr().out)

        assert len(reports) == len(CHECKS)
        assert all(r["window"] == {"t_degree": None, "novikov": None} for r in reports)

    def test_output_is_deterministic(self, capsys):
        argv = ["check", "--model", "builtin:point", "--checks", "all"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first

    def test_unknown_check(self, capsys):
        assert main(["check", "--model", "builtin:point", "--checks", "bogus"]) == 2
        assert "unknown check" in capsys.readouterr().err

    def test_text_format_and_timings(self, capsys):
        assert main(["check", "-m", "builtin:point", "-c", "unit", "-f", "text", "--timings"]) == 0
        out = capsys.readouterr().out

        assert out.startswith("[PASS] unit: verified through Unbounded (")
        assert " ms)" in out
        assert out.endswith("1/1 checks passed\n")

    def test_wrong_cubic_count_fails_wdvv(self, write_json):
        path = write_json(
            "mutated.json",
            [
                {"g": 0, "beta": [1], "insertions": [3, 3], "value": 1},
                {"g": 0, "beta": [2], "insertions": [3] * 5, "value": 1},
                {"g": 0, "beta": [3], "insertions": [3] * 8, "value": 13},
            ],
        )
        argv = ["check", "--table", str(path), "--checks", "wdvv", "--t-max", "8", "--d-max", "3"]
        assert main(argv) == 1

    def test_report_and_log_files(self, tmp_path):
        out = tmp_path / "reports.jsonl"
        log = tmp_path / "logs" / "run.log"
        argv = ["check", "-m", "builtin:point", "-c", "unit", "-o", str(out), "--log-file", str(log)]

        assert main(argv) == 0
        assert json_lines(out.read_text(encoding="utf-8"))[0]["name"] == "unit"
        assert "Running check on builtin:point" in log.read_text(encoding="utf-8")
