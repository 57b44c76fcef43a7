"""Tests for potential assembly and its self-checks."""

from dataclasses import replace
from fractions import Fraction

import pytest

from gwvirasoro.core import (
    build_potential,
    check_quasi_homogeneity,
    check_string_property,
    classical_limit,
    normalize_table,
)
from gwvirasoro.core.potentials import classical_f0, insertion_degree
from gwvirasoro.exceptions import InconsistentTableError, WindowError
from gwvirasoro.models import InvariantEntry, Monomial, Series, Window, equal_within_window
from gwvirasoro.models.series import exponential_of_linear

F = Fraction
LINE = InvariantEntry(0, (1,), (2, 2), F(1))


def m(*t, q=(0,)):
    return Monomial(tuple(t), tuple(q))


class TestClosedForms:
    """Potentials of the point and the projective line."""

    def test_point_potential(self, point_potential):
        assert point_potential.f0 == Series({Monomial((3,), ()): F(1, 6)}, 1, 0)
        assert point_potential.f1.is_zero
        assert point_potential.window.is_unbounded

    def test_p1_genus0(self, p1_model, p1_potential):
        """F0 = (1/2) (t1)^2 t2 + q exp(t2)."""
        window = Window(8, (4,))
        expected = classical_f0(p1_model, window) + exponential_of_linear([0, 1], (1,), window, 1)

        equal, checked = equal_within_window(p1_potential.f0, expected)
        assert equal
        assert checked == window
        assert p1_potential.f0.coefficient(m(2, 1)) == F(1, 2)
        assert p1_potential.f0.coefficient(m(0, 3, q=(1,))) == F(1, 6)

    def test_p1_genus1(self, p1_potential):
        """F1 = -(1/24) t2."""
        assert p1_potential.f1.coefficient(m(0, 1)) == F(-1, 24)
        assert len(p1_potential.f1) == 1

    def test_p2_coefficients(self, p2_potential):
        f0 = p2_potential.f0
        # N_d t3^(3d-1) / (3d-1)!
        assert f0.coefficient(m(0, 0, 2, q=(1,))) == F(1, 2)
        assert f0.coefficient(m(0, 0, 5, q=(2,))) == F(1, 120)
        assert f0.coefficient(m(0, 0, 8, q=(3,))) == F(12, 40320)
        # divisor equation: t2 q^d picks up a factor d
        assert f0.coefficient(m(0, 1, 2, q=(1,))) == F(1, 2)
        assert f0.coefficient(m(0, 1, 5, q=(2,))) == F(2, 120)
        assert p2_potential.f1.coefficient(m(0, 0, 9, q=(3,))) == F(1, 362880)
        assert p2_potential.f1.coefficient(m(0, 1, 0)) == F(-3, 24)

    def test_artifact_dict(self, p1_potential):
        data = p1_potential.to_dict()
        assert data["F1"] == "-1/24*t2"
        assert data["table"] == [{"g": 0, "beta": [1], "insertions": [], "value": 1}]
        assert "F0 curve class [1]: 1 invariant(s) from table" in data["provenance"]


class TestNormalization:
    """Table normalization and consistency errors."""

    def test_divisor_insertions_are_stripped(self, p2_model):
        with_divisor = InvariantEntry(0, (1,), (1, 2, 2), F(1))
        assert normalize_table(p2_model, [with_divisor]) == [LINE]

        window = Window(6, (2,))
        assert build_potential(p2_model, [with_divisor], window).f0 == build_potential(p2_model, [LINE], window).f0

    def test_repeated_consistent_entries(self, p2_model):
        entries = [LINE, InvariantEntry(0, (1,), (1, 1, 2, 2), F(1)), LINE]
        assert normalize_table(p2_model, entries) == [LINE]

    def test_conflicting_entries(self, p2_model):
        with pytest.raises(InconsistentTableError, match="same invariant"):
            normalize_table(p2_model, [LINE, InvariantEntry(0, (1,), (1, 2, 2), F(2))])

    def test_classical_entries_checked(self, p2_model):
        consistent = [InvariantEntry(0, (0,), (0, 0, 2), F(1)), InvariantEntry(1, (0,), (1,), F(-1, 8))]
        assert normalize_table(p2_model, consistent) == []

        with pytest.raises(InconsistentTableError, match="classical"):
            normalize_table(p2_model, [InvariantEntry(0, (0,), (0, 0, 2), F(2))])

    def test_dimension_axiom(self, p2_model):
        with pytest.raises(InconsistentTableError, match="dimension axiom"):
            normalize_table(p2_model, [InvariantEntry(0, (1,), (2,), F(5))])

        # zero entries of the wrong dimension are harmless
        assert normalize_table(p2_model, [InvariantEntry(0, (1,), (2,), F(0))]) == []

    def test_identity_insertion_at_nonzero_class(self, p2_model):
        with pytest.raises(InconsistentTableError):
            normalize_table(p2_model, [InvariantEntry(0, (1,), (0, 2, 2), F(1))])

    def test_insertion_degree(self, p2_model):
        assert insertion_degree(p2_model, 2) == 2
        assert insertion_degree(p2_model, 0) == 0


class TestWindows:
    """Window handling while building."""

    def test_empty_window(self, p2_model):
        with pytest.raises(WindowError):
            build_potential(p2_model, [LINE], Window(-1, (0,)))

    def test_wrong_novikov_rank(self, p2_model):
        with pytest.raises(WindowError):
            build_potential(p2_model, [LINE], Window(8, (1, 1)))

    def test_window_too_small_for_table(self, p2_model):
        cubics = InvariantEntry(0, (3,), (2,) * 8, F(12))
        with pytest.raises(WindowError, match="too small"):
            build_potential(p2_model, [cubics], Window(3, (1,)))

    def test_out_of_window_entries_dropped(self, p2_model):
        cubics = InvariantEntry(0, (3,), (2,) * 8, F(12))
        potential = build_potential(p2_model, [LINE, cubics], Window(6, (3,)))

        assert potential.f0.at_novikov((3,)).is_zero
        assert cubics in potential.table


class TestSelfChecks:
    """Quasi-homogeneity and the string property."""

    @pytest.mark.parametrize("fixture", ["point_potential", "p1_potential", "p2_potential"])
    @pytest.mark.parametrize("genus", [0, 1])
    def test_quasi_homogeneity(self, request, fixture, genus):
        potential = request.getfixturevalue(fixture)
        assert check_quasi_homogeneity(potential, genus).passed

    @pytest.mark.parametrize("fixture", ["point_potential", "p1_potential", "p2_potential"])
    def test_string_property(self, request, fixture):
        assert check_string_property(request.getfixturevalue(fixture)).passed

    def test_self_checks_catch_tampering(self, p1_potential):
        tampered = replace(p1_potential, f1=p1_potential.f1 + Series.variable(0, 2, 1))

        result = check_quasi_homogeneity(tampered, 1)
        assert not result.passed
        assert result.residual.coefficient(m(1, 0)) == 1
        assert not check_string_property(tampered).passed

    def test_classical_limit(self, p2_model, p2_potential):
        limit = classical_limit(p2_potential)

        assert limit.window.is_unbounded
        assert limit.f0 == classical_f0(p2_model)
        assert limit.table == ()
        assert check_quasi_homogeneity(limit, 0).passed
