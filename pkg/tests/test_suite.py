"""Tests for the check registry and suite runner."""

from dataclasses import replace
from fractions import Fraction

import pytest

from gwvirasoro import quick_check
from gwvirasoro.core import CHECKS, CheckSuite, build_potential, resolve_check_names, run_suite
from gwvirasoro.core.suite import PROOF_IDENTITIES
from gwvirasoro.exceptions import SchemaError
from gwvirasoro.models import InvariantEntry, Series, Window


class TestRegistry:
    """Check names and their resolution."""

    def test_registry_contents(self):
        assert len(CHECKS) == 33
        assert set(PROOF_IDENTITIES) <= set(CHECKS)
        for name in ("wdvv", "dhomog_g1", "getzler_residual", "main_theorem", "virasoro_small"):
            assert name in CHECKS

    def test_all_selects_everything(self):
        assert resolve_check_names(None) == sorted(CHECKS)
        assert resolve_check_names([]) == sorted(CHECKS)
        assert resolve_check_names(["unit", "all"]) == sorted(CHECKS)

    def test_names_are_sorted_and_deduplicated(self):
        assert resolve_check_names(["wdvv", "unit", "wdvv"]) == ["unit", "wdvv"]

    def test_unknown_name(self):
        with pytest.raises(SchemaError, match="unknown check"):
            resolve_check_names(["unit", "bogus"])


class TestRunSuite:
    """Running checks against built potentials."""

    def test_point_passes_everything(self, point_potential):
        reports = run_suite(point_potential)

        assert [report.name for report in reports] == sorted(CHECKS)
        assert all(report.passed for report in reports)
        assert all(report.window.is_unbounded for report in reports)

    def test_p1_passes_everything(self, p1_potential):
        failed = [report.name for report in run_suite(p1_potential, ["all"]) if not report.passed]
        assert failed == []

    def test_reports_sorted_by_name(self, p1_potential):
        reports = run_suite(p1_potential, ["virasoro_small", "deuler", "main_theorem"])
        assert [report.name for report in reports] == ["deuler", "main_theorem", "virasoro_small"]

    def test_timings(self, point_potential):
        (plain,) = run_suite(point_potential, ["unit"])
        (timed,) = run_suite(point_potential, ["unit"], timings=True)

        assert plain.millis is None
        assert isinstance(timed.millis, float)
        assert timed.millis >= 0

    def test_case_counts_in_notes(self, p1_potential):
        suite = CheckSuite(p1_potential)

        assert suite.wdvv().notes == ["4 case(s)"]
        assert suite.deuler().notes == ["3 case(s)"]
        assert suite.classical_gaua().notes == ["classical Delta = [2]*g2"]

    def test_failing_wdvv_names_the_case(self, p2_model):
        table = [InvariantEntry(0, (1,), (2, 2), Fraction(1)), InvariantEntry(0, (2,), (2,) * 5, Fraction(2))]
        potential = build_potential(p2_model, table, Window(5, (2,)))

        (report,) = run_suite(potential, ["wdvv"])
        assert not report.passed
        assert report.residual
        assert report.notes[0].startswith("first failing term")
        assert report.notes[1] == "10 case(s)"
        assert report.notes[2].startswith("failing: ")

    def test_tampered_genus1_potential(self, p1_potential):
        tampered = replace(p1_potential, f1=p1_potential.f1 + Series.variable(0, 2, 1))
        reports = {r.name: r for r in run_suite(tampered, ["quasi_homogeneity_g1", "virasoro_small", "wdvv"])}

        assert not reports["quasi_homogeneity_g1"].passed
        assert not reports["virasoro_small"].passed
        assert reports["wdvv"].passed

    def test_report_dict(self, point_potential):
        (report,) = run_suite(point_potential, ["string_property"])
        assert report.to_dict() == {
            "name": "string_property",
            "pass": True,
            "window": {"t_degree": None, "novikov": None},
            "residual": "",
            "millis": None,
        }

    @pytest.mark.slow
    def test_plane_passes_everything(self, p2_potential):
        failed = [report.name for report in run_suite(p2_potential) if not report.passed]
        assert failed == []


class TestQuickCheck:
    """One-call build and check of a built-in model."""

    def test_p1_selected_checks(self):
        result = quick_check("p1", checks=["virasoro_small", "main_theorem"])

        assert result["passed"] is True
        assert [report["name"] for report in result["reports"]] == ["main_theorem", "virasoro_small"]
        assert result["potential"]["window"] == {"t_degree": 8, "novikov": [4]}
        assert result["potential"]["table"] == [{"g": 0, "beta": [1], "insertions": [2, 2], "value": 1}]

    def test_point_runs_everything(self):
        result = quick_check("point")

        assert result["passed"] is True
        assert len(result["reports"]) == len(CHECKS)
        assert result["potential"]["window"] == {"t_degree": None, "novikov": None}

    def test_unknown_model(self):
        with pytest.raises(SchemaError, match="unknown built-in"):
            quick_check("cubic")
