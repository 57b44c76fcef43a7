"""Tests for the genus 0 and genus 1 coefficient solvers."""

from fractions import Fraction

import pytest

from gwvirasoro.core import (
    GetzlerSolver,
    WDVVSolver,
    build_potential,
    builtin_table,
    genus0_p2_table,
    kontsevich_numbers,
    solve_genus1_getzler,
)
from gwvirasoro.core.solvers import solve_affine
from gwvirasoro.exceptions import SchemaError, SolverError, WindowError
from gwvirasoro.models import InvariantEntry, Series, Window
from gwvirasoro.models.constants import P2_GENUS0_NUMBERS, P2_GENUS1_NUMBERS

F = Fraction


def constant(value):
    return Series.constant(value, 1, 0)


class TestSolveAffine:
    """Exact solve of affine coefficient systems."""

    def test_single_unknown(self):
        (value,) = solve_affine(lambda x: [constant(2 * x[0] - 6), constant(4 * x[0] - 12)], 1)
        assert value == 3

    def test_two_unknowns(self):
        def residual(x):
            return [constant(x[0] + x[1] - 3), constant(x[0] - x[1] - F(1, 2))]

        assert solve_affine(residual, 2) == (F(7, 4), F(5, 4))

    def test_inconsistent(self):
        with pytest.raises(SolverError, match="inconsistent"):
            solve_affine(lambda x: [constant(x[0] - 1), constant(x[0] - 2)], 1)

    def test_underdetermined(self):
        with pytest.raises(SolverError, match="underdetermined"):
            solve_affine(lambda x: [constant(x[0] + x[1] - 1)], 2)

    def test_no_equations(self):
        with pytest.raises(SolverError, match="no equations"):
            solve_affine(lambda x: [Series.zero(1, 0)], 1)


class TestKontsevichNumbers:
    """Closed recursion for rational plane curves."""

    def test_first_five(self):
        assert kontsevich_numbers(5) == list(P2_GENUS0_NUMBERS)

    def test_empty(self):
        assert kontsevich_numbers(0) == []

    def test_agrees_with_associativity_solver(self, p2_model):
        """Both routes give 1, 1, 12 through degree 3."""
        entries = WDVVSolver(p2_model).solve(3)
        assert [entry.value for entry in entries] == kontsevich_numbers(3) == [1, 1, 12]


class TestWDVVSolver:
    """Genus 0 plane invariants from associativity."""

    def test_first_three_degrees(self, p2_model):
        entries = WDVVSolver(p2_model).solve(3)

        assert [entry.value for entry in entries] == [1, 1, 12]
        assert entries[2] == InvariantEntry(0, (3,), (2,) * 8, F(12))

    def test_seed_scales_by_symmetry(self, p2_model):
        """Seeding N_1 = s rescales q, so N_d picks up s^d."""
        entries = WDVVSolver(p2_model).solve(3, seed=2)
        assert [entry.value for entry in entries] == [2, 4, 96]

    def test_needs_positive_degree(self, p2_model):
        with pytest.raises(ValueError):
            WDVVSolver(p2_model).solve(0)

    def test_rejects_non_plane_models(self, p1_model):
        with pytest.raises(SolverError, match="not shaped like"):
            WDVVSolver(p1_model)

    @pytest.mark.slow
    def test_matches_recursion_to_degree_five(self):
        values = [entry.value for entry in genus0_p2_table(5)]
        assert values == kontsevich_numbers(5)


class TestGetzlerSolver:
    """Genus 1 plane invariants from Getzler's relation."""

    def test_first_three_degrees(self, p2_table3):
        genus1 = [entry for entry in p2_table3 if entry.genus == 1]

        assert [entry.value for entry in genus1] == list(P2_GENUS1_NUMBERS[:3])
        assert genus1[2] == InvariantEntry(1, (3,), (2,) * 9, F(1))

    def test_zero_degree(self, p2_model, p2_table3):
        assert GetzlerSolver(p2_model).solve(p2_table3, 0) == []

    def test_rejects_non_plane_models(self, p1_model):
        with pytest.raises(SolverError):
            GetzlerSolver(p1_model)

    def test_window_below_requested_degree(self, p2_model, p2_potential):
        with pytest.raises(WindowError, match="Novikov degree"):
            solve_genus1_getzler(p2_model, p2_potential, 4)

    def test_missing_genus0_degree(self, p2_model):
        line = InvariantEntry(0, (1,), (2, 2), F(1))
        potential = build_potential(p2_model, [line], Window(8, (2,)))
        with pytest.raises(WindowError, match=r"degrees \[2\]"):
            solve_genus1_getzler(p2_model, potential, 2)

    @pytest.mark.slow
    def test_degree_five(self, p2_model):
        genus0 = genus0_p2_table(5, p2_model)
        potential = build_potential(p2_model, genus0, Window(14, (5,)))
        values = [entry.value for entry in solve_genus1_getzler(p2_model, potential, 5)]
        assert values == list(P2_GENUS1_NUMBERS)


class TestBuiltinTables:
    """Tables shipped for the built-in models."""

    def test_p1_table(self):
        assert builtin_table("p1", 4) == [InvariantEntry(0, (1,), (1, 1), F(1))]

    def test_empty_tables(self):
        assert builtin_table("point", 3) == []
        assert builtin_table("p2", 0) == []

    def test_p2_table_layout(self, p2_table3):
        assert [(entry.genus, entry.beta) for entry in p2_table3] == [
            (0, (1,)),
            (0, (2,)),
            (0, (3,)),
            (1, (1,)),
            (1, (2,)),
            (1, (3,)),
        ]

    def test_unknown_name(self):
        with pytest.raises(SchemaError):
            builtin_table("cubic", 1)
