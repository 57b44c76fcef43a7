"""Tests for the quantum product, the Euler field and related identities."""

from fractions import Fraction

import pytest

from gwvirasoro.core import (
    FrobeniusCalculus,
    apply_field,
    correlator,
    delta_field,
    euler_field,
    euler_power,
    lie_bracket,
    quantum_product,
)
from gwvirasoro.core.frobenius import check_dEuler, constant_field
from gwvirasoro.exceptions import ShapeMismatchError, WindowError
from gwvirasoro.models import Monomial, Series, VectorField


def m(*t, q=(0,)):
    return Monomial(tuple(t), tuple(q))


@pytest.fixture(scope="module")
def p1_calc(p1_potential):
    return FrobeniusCalculus(p1_potential)


class TestProducts:
    """Correlators and quantum products on the projective line."""

    def test_three_point_function(self, p1_potential, p1_calc):
        omega = p1_calc.basis[1]
        value = correlator(p1_potential, 0, [omega, omega, omega])

        assert value.coefficient(m(0, 0, q=(1,))) == 1
        assert value.coefficient(m(0, 2, q=(1,))) == Fraction(1, 2)
        assert value.coefficient(m(0, 0)) == 0

    def test_genus1_one_point_function(self, p1_calc):
        value = p1_calc.correlator(1, [p1_calc.basis[1]])
        assert value == Series.constant(Fraction(-1, 24), 2, 1, value.window)

    def test_omega_squared(self, p1_potential, p1_calc):
        """omega o omega = q exp(t2) times the identity."""
        omega = p1_calc.basis[1]
        square = quantum_product(p1_potential, omega, omega)

        assert square.components[0].coefficient(m(0, 0, q=(1,))) == 1
        assert square.components[0].coefficient(m(0, 1, q=(1,))) == 1
        assert square.components[1].is_zero

    def test_euler_square(self, p1_potential):
        """(t1 + 2 omega)^2 = t1^2 + 4 t1 omega + 4 q exp(t2)."""
        square = euler_power(p1_potential, 2)

        assert square.components[0].coefficient(m(2, 0)) == 1
        assert square.components[0].coefficient(m(0, 0, q=(1,))) == 4
        assert square.components[1].coefficient(m(1, 0)) == 4

    def test_euler_power_zero_is_identity(self, p1_calc):
        assert p1_calc.euler_power(0) == p1_calc.basis[0]
        with pytest.raises(ValueError):
            p1_calc.euler_power(-1)

    def test_correlator_arguments(self, p1_calc):
        with pytest.raises(ValueError):
            p1_calc.correlator(0, [])
        with pytest.raises(ValueError):
            p1_calc.correlator(2, [p1_calc.basis[0]])

    def test_delta(self, point_potential, p1_potential):
        assert delta_field(point_potential).constant_coefficients() == (1,)
        assert delta_field(p1_potential).constant_coefficients() == (0, 2)

    @pytest.mark.parametrize("triple", [(1, 1, 1), (1, 1, 2), (1, 2, 2)])
    def test_p2_associativity(self, p2_potential, triple):
        calc = FrobeniusCalculus(p2_potential)
        u, v, w = (calc.basis[i] for i in triple)
        assert calc.check_associativity(u, v, w).passed


class TestEulerField:
    """Euler field, grading and the trivial connection."""

    def test_p2_euler_field(self, p2_model):
        field = euler_field(p2_model)

        assert field.components[0] == Series.variable(0, 3, 1)
        assert field.components[1] == Series.constant(3, 3, 1)
        assert field.components[2] == Series.variable(2, 3, 1, -1)
        assert field.constant_coefficients() is None

    def test_apply_field(self, p1_model):
        f = Series({m(2, 1): Fraction(1, 2)}, 2, 1)
        assert apply_field(euler_field(p1_model), f) == Series({m(2, 1): 1, m(2, 0): 1}, 2, 1)

    def test_apply_field_shape_mismatch(self, p1_model):
        with pytest.raises(ShapeMismatchError):
            apply_field(euler_field(p1_model), Series.variable(0, 3, 1))

    def test_bracket(self, p1_model, p1_calc):
        identity = p1_calc.basis[0]
        bracket = lie_bracket(euler_field(p1_model), identity)
        assert (bracket + identity).is_zero

    @pytest.mark.parametrize("name", ["point_model", "p1_model", "p2_model"])
    def test_dEuler(self, request, name):
        model = request.getfixturevalue(name)
        for a in range(model.n):
            assert check_dEuler(model, VectorField.basis(a, model.n, model.curve_rank)).passed

    def test_constant_field(self, p2_model):
        assert constant_field(p2_model, [0, 1, 0]).constant_coefficients() == (0, 1, 0)
        with pytest.raises(ShapeMismatchError):
            constant_field(p2_model, [0, 1])


class TestIdentities:
    """Frobenius manifold identities on the projective line."""

    def test_unit_and_commutativity(self, p1_calc):
        for v in p1_calc.basis:
            assert p1_calc.check_unit(v).passed
            for w in p1_calc.basis:
                assert p1_calc.check_commutativity(v, w).passed

    def test_associativity_and_frobenius(self, p1_calc):
        for a, b, c in p1_calc.basis_multisets(3):
            u, v, w = p1_calc.basis[a], p1_calc.basis[b], p1_calc.basis[c]
            assert p1_calc.check_associativity(u, v, w).passed
            assert p1_calc.check_frobenius(u, v, w).passed
            assert p1_calc.check_product_rule(u, v, w).passed

    @pytest.mark.parametrize("genus", [0, 1])
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_dhomog(self, p1_calc, genus, k):
        for indices in p1_calc.basis_multisets(k):
            fields = [p1_calc.basis[i] for i in indices]
            assert p1_calc.check_dhomog(genus, fields).passed

    def test_dhomog_arguments(self, p1_calc):
        with pytest.raises(ValueError, match="derivative order"):
            p1_calc.check_dhomog(0, [])
        with pytest.raises(ValueError, match="derivative order"):
            p1_calc.check_dhomog(0, [p1_calc.basis[0]] * 5)
        with pytest.raises(ValueError, match="constant fields"):
            p1_calc.check_dhomog(0, [p1_calc.euler])

    def test_Eg04pt(self, p1_calc):
        for a, b in p1_calc.basis_multisets(2):
            assert p1_calc.check_Eg04pt(p1_calc.basis[a], p1_calc.basis[b]).passed

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_dEkD(self, p1_calc, k):
        assert p1_calc.check_dEkD(k).passed

    def test_dEkD_range(self, p1_calc):
        with pytest.raises(ValueError):
            p1_calc.check_dEkD(4)

    def test_delta_identities(self, p1_calc):
        assert p1_calc.check_dDE2().passed
        assert p1_calc.check_bracket_E2_Delta().passed
        assert p1_calc.check_dual_grading().passed
        assert p1_calc.check_gaua_symmetry().passed

    def test_ensure_window(self, p1_calc):
        p1_calc.ensure_window(8)
        with pytest.raises(WindowError):
            p1_calc.ensure_window(9)
