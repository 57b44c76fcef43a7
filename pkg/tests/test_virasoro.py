"""Tests for Phi, Psi, the Getzler tensors and the genus-1 Virasoro checks."""

from dataclasses import replace
from fractions import Fraction

import pytest

from gwvirasoro.core import VirasoroChecker, build_potential, g0_tensor, g1_tensor, phi, psi
from gwvirasoro.models import InvariantEntry, Monomial, Series, Window


def m(*t, q=(0,)):
    return Monomial(tuple(t), tuple(q))


@pytest.fixture(scope="module")
def p1_checker(p1_potential):
    return VirasoroChecker(p1_potential)


@pytest.fixture
def tampered_p1(p1_potential):
    """P1 with a spurious t1 term in F1."""
    return replace(p1_potential, f1=p1_potential.f1 + Series.variable(0, 2, 1))


class TestPoint:
    """The point target, where everything is a polynomial."""

    def test_psi_vanishes_identically(self, point_potential):
        value = psi(point_potential)
        assert value.is_zero
        assert value.window.is_unbounded

    def test_checks_pass(self, point_potential):
        checker = VirasoroChecker(point_potential)
        assert checker.check_virasoro_small().passed
        assert checker.check_main_theorem().passed
        assert all(report.passed for report in checker.check_proof_identities())


class TestProjectiveLine:
    """Closed forms on the projective line."""

    def test_trace_weights(self, p1_checker):
        assert p1_checker.trace_weights() == (Fraction(-1, 6), Fraction(-1, 6))

    def test_phi_and_genus1_part(self, p1_potential, p1_checker):
        """<<E^2>>_1 = Phi = -t1/6, so Psi vanishes."""
        expected = {m(1, 0): Fraction(-1, 6)}

        assert dict(phi(p1_potential).terms) == expected
        assert dict(p1_checker.genus1_e2().terms) == expected
        assert p1_checker.eeaa_trace().is_zero
        assert p1_checker.psi().is_zero

    def test_getzler_tensors_cancel(self, p1_potential, p1_checker):
        omega = p1_checker.calc.basis[1]
        fields = (omega, omega, omega, omega)

        total = g0_tensor(p1_potential, *fields) + g1_tensor(p1_potential, *fields)
        assert total.is_zero
        assert p1_checker.getzler_series(*fields).is_zero
        assert p1_checker.getzler_residual(*fields).passed

    @pytest.mark.parametrize(
        "check",
        [
            "check_lemma_g0",
            "check_lemma_g1",
            "check_getzler_assembly",
            "check_main_theorem",
            "check_virasoro_small",
            "check_EPsi",
            "check_string_psi",
            "check_psi_phi_identity",
            "check_psi_constant_term",
        ],
    )
    def test_checks_pass(self, p1_checker, check):
        report = getattr(p1_checker, check)()
        assert report.passed
        assert Window(8, (4,)).covers(report.window)

    def test_proof_identities(self, p1_checker):
        reports = p1_checker.check_proof_identities()

        assert [report.name for report in reports] == list(p1_checker.proof_identities())
        assert all(report.passed for report in reports)

    def test_main_theorem_notes(self, p1_checker):
        report = p1_checker.check_main_theorem()
        assert report.notes == ["direct pass", "via Getzler contraction pass"]

    def test_constant_term_note(self, p1_checker):
        assert p1_checker.check_psi_constant_term().notes == ["constant term 0"]


class TestDetection:
    """Broken inputs make the Virasoro checks fail."""

    def test_spurious_genus1_term(self, tampered_p1):
        checker = VirasoroChecker(tampered_p1)
        small = checker.check_virasoro_small()

        assert not small.passed
        assert small.residual
        assert small.notes[0].startswith("first failing term")
        assert not checker.check_main_theorem().passed

    def test_genus0_checks_survive_tampering(self, tampered_p1):
        """Checks that only involve genus 0 or definitions still hold."""
        checker = VirasoroChecker(tampered_p1)
        assert checker.check_lemma_g0().passed
        assert checker.check_psi_phi_identity().passed

    @pytest.mark.slow
    def test_plane_full_chain(self, p2_potential):
        checker = VirasoroChecker(p2_potential)

        assert checker.check_virasoro_small().passed
        assert checker.check_main_theorem().passed
        assert checker.check_lemma_g0().passed
        assert checker.check_lemma_g1().passed

    @pytest.mark.slow
    def test_wrong_cubic_count_is_detected(self, p2_model, p2_table3):
        table = [
            replace(entry, value=Fraction(13)) if entry.key == (0, (3,), (2,) * 8) else entry
            for entry in p2_table3
        ]
        assert InvariantEntry(0, (3,), (2,) * 8, Fraction(13)) in table

        checker = VirasoroChecker(build_potential(p2_model, table, Window(12, (3,))))
        assert not checker.check_virasoro_small().passed
        assert not checker.check_main_theorem().passed

    @pytest.mark.slow
    def test_wrong_elliptic_cubic_count_is_detected(self, p2_model, p2_table3):
        key = (1, (3,), (2,) * 9)
        table = [replace(entry, value=Fraction(2)) if entry.key == key else entry for entry in p2_table3]
        assert InvariantEntry(1, (3,), (2,) * 9, Fraction(2)) in table

        checker = VirasoroChecker(build_potential(p2_model, table, Window(12, (3,))))
        assert not checker.check_virasoro_small().passed
        assert not checker.check_main_theorem().passed
