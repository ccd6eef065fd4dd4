"""Exact arithmetic over Q(q), Q(q)(x) and Q[q]/((q-1)^2)."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from core.errors import (
    CompositionError,
    DivisionByZeroError,
    ModSquareError,
    QDeformError,
    SubstitutionError,
)
from core.rings import (
    QField,
    QXField,
    ModSquareElem,
    compose_x,
    d_dx,
    evaluate,
    evaluate_numeric,
    format_poly,
    format_ratfunc,
    has_nonnegative_coefficients,
    lift,
    lower,
    mod_square_reduce,
    poly_coefficients,
    power,
    q,
    qx,
    ratfunc_arith,
    s,
    substitute_q,
    swap_qx,
    to_s_field,
    x,
)

from .strategies import (
    polynomials_in_q,
    polynomials_in_x,
    rational_points,
    ratfuncs_in_q,
    ratfuncs_in_x,
    small_ints,
)

# Non-constant images in x, so composition never lands on a pole identically
MOEBIUS_IMAGES = st.sampled_from([
    (qx * x + 1) / (x + 2),
    x ** 2 - qx,
    1 / x,
    (1 + (x - 1) * qx) / (1 + (qx - 1) * x),
])


class TestArithmetic:
    def test_canonical_form_cancels(self):
        assert (q ** 2 - 1) / (q - 1) == q + 1

    def test_negative_power(self):
        assert power(q, -2) == 1 / q ** 2
        assert power(1 + q, 0) == QField.one

    def test_zero_to_negative_power(self):
        with pytest.raises(DivisionByZeroError):
            power(QField.zero, -1)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroError):
            ratfunc_arith(q, QField.zero, "div")

    def test_unknown_operation(self):
        with pytest.raises(QDeformError, match="Unknown operation"):
            ratfunc_arith(q, q, "pow")

    @given(ratfuncs_in_q(), ratfuncs_in_q())
    @settings(max_examples=40, deadline=None)
    def test_div_inverts_mul(self, f, g):
        if not g:
            return
        assert ratfunc_arith(ratfunc_arith(f, g, "mul"), g, "div") == f

    @given(ratfuncs_in_q(), ratfuncs_in_q())
    @settings(max_examples=40, deadline=None)
    def test_sub_inverts_add(self, f, g):
        assert ratfunc_arith(ratfunc_arith(f, g, "add"), g, "sub") == f


class TestSubstitution:
    def test_q_to_inverse(self):
        assert substitute_q(q ** 2 + 1, 1 / q) == (1 + q ** 2) / q ** 2

    def test_pole_hit_identically(self):
        with pytest.raises(SubstitutionError):
            substitute_q(1 / (q - 1), QField.one)

    @given(polynomials_in_q(), polynomials_in_q())
    @settings(max_examples=30, deadline=None)
    def test_substitution_is_a_ring_map(self, f, g):
        image = (q + 2) / (q - 3)
        assert substitute_q(f * g, image) == substitute_q(f, image) * substitute_q(g, image)
        assert substitute_q(f + g, image) == substitute_q(f, image) + substitute_q(g, image)

    def test_composition(self):
        assert compose_x(x ** 2 + 1, x + qx) == (x + qx) ** 2 + 1

    def test_composition_on_pole(self):
        with pytest.raises(CompositionError):
            compose_x(1 / x, QXField.zero)

    @given(polynomials_in_x())
    @settings(max_examples=30, deadline=None)
    def test_composition_is_associative(self, f):
        g = (qx * x + 1) / (x + 2)
        h = x ** 2 - qx
        assert compose_x(compose_x(f, g), h) == compose_x(f, compose_x(g, h))

    def test_identity_composition(self):
        f = (x + qx) / (x - 1)
        assert compose_x(f, x) == f
        assert compose_x(x, f) == f

    @pytest.mark.parametrize("f", [
        q ** 2 - q + 1,
        1 + q + q ** 2,
        1 - q,
        q / (q + 1),
        (q ** 3 + q ** 2 + 2 * q + 1) / (q ** 2 + q + 1),
    ])
    def test_inverting_q_is_an_involution(self, f):
        assert substitute_q(substitute_q(f, 1 / q), 1 / q) == f

    @given(ratfuncs_in_q())
    @settings(max_examples=40, deadline=None)
    def test_inverting_q_is_an_involution_everywhere(self, f):
        assert substitute_q(substitute_q(f, 1 / q), 1 / q) == f

    @given(ratfuncs_in_x(), MOEBIUS_IMAGES, rational_points(), rational_points())
    @settings(max_examples=40, deadline=None)
    def test_composition_agrees_with_evaluation(self, f, phi, q0, x0):
        try:
            expected = evaluate(f, q0, evaluate(phi, q0, x0))
            actual = evaluate(compose_x(f, phi), q0, x0)
        except DivisionByZeroError:
            assume(False)
        assert actual == expected


class TestFields:
    def test_lift_and_lower(self):
        f = (q + 1) / (q - 2)
        assert lower(lift(f)) == f
        assert lift(q) == qx

    def test_lower_rejects_x(self):
        with pytest.raises(QDeformError, match="depends on x"):
            lower(x + qx)

    def test_swap(self):
        assert swap_qx(qx * x ** 2) == qx ** 2 * x
        assert swap_qx(swap_qx((qx + x ** 3) / (1 + qx))) == (qx + x ** 3) / (1 + qx)

    def test_derivative(self):
        assert d_dx(x ** 3 + qx * x) == 3 * x ** 2 + qx

    @given(ratfuncs_in_x(), ratfuncs_in_x())
    @settings(max_examples=30, deadline=None)
    def test_leibniz_rule(self, f, g):
        assert d_dx(f * g) == d_dx(f) * g + f * d_dx(g)

    @given(ratfuncs_in_x(), MOEBIUS_IMAGES)
    @settings(max_examples=30, deadline=None)
    def test_chain_rule(self, f, phi):
        assert d_dx(compose_x(f, phi)) == compose_x(d_dx(f), phi) * d_dx(phi)

    def test_square_root_field(self):
        assert to_s_field(q) == s ** 2
        assert to_s_field(1 / (1 + q)) == 1 / (1 + s ** 2)


class TestEvaluation:
    def test_exact_value(self):
        assert evaluate((q ** 2 + q + 1) / (q + 1), 2) == Fraction(7, 3)

    def test_pole(self):
        with pytest.raises(DivisionByZeroError):
            evaluate(1 / (q - 2), 2)

    def test_two_variables(self):
        assert evaluate((qx + x) / x, 3, Fraction(1, 2)) == 7

    def test_numeric(self):
        assert evaluate_numeric(q ** 2 + 1, 1j) == 0
        assert evaluate_numeric((qx + x) / x, 2.0, 4.0) == pytest.approx(1.5)

    @given(polynomials_in_q(), st.integers(min_value=-5, max_value=5))
    @settings(max_examples=40, deadline=None)
    def test_evaluation_is_a_ring_map(self, f, q0):
        g = q ** 2 + 1
        assert evaluate(f * g, q0) == evaluate(f, q0) * evaluate(g, q0)


class TestFormatting:
    def test_descending_powers(self):
        assert format_poly((q ** 3 + q ** 2 + 2 * q + 1).numer) == "q^3+q^2+2*q+1"

    def test_signs(self):
        assert format_poly((1 - q).numer) == "-q+1"
        assert format_poly(QField.zero.numer) == "0"

    def test_fraction(self):
        assert format_ratfunc((q + 1) / q) == "(q+1)/q"
        assert format_ratfunc(q ** 2 + 1) == "q^2+1"
        assert format_ratfunc(1 / (2 * q)) == "1/(2*q)"

    def test_coefficients(self):
        p = (q ** 3 + 2 * q + 1).numer
        assert poly_coefficients(p) == [1, 2, 0, 1]
        assert has_nonnegative_coefficients(p)
        assert not has_nonnegative_coefficients((q - 1).numer)


class TestModSquare:
    def test_reduction(self):
        assert mod_square_reduce(q ** 2 - q + 1) == ModSquareElem(1, 1)
        assert mod_square_reduce(1 / q) == ModSquareElem(1, -1)
        assert not mod_square_reduce((q - 1) ** 2)

    def test_lift(self):
        assert ModSquareElem(1, 1).lift() == q
        assert str(ModSquareElem(2, 0)) == "2"

    def test_pole_at_one(self):
        with pytest.raises(ModSquareError):
            mod_square_reduce(1 / (q - 1))

    def test_nilpotent_has_no_inverse(self):
        with pytest.raises(ModSquareError):
            ModSquareElem(0, 1).inverse()

    def test_nilpotent_squares_to_zero(self):
        eps = ModSquareElem(0, 1)
        assert eps * eps == ModSquareElem(0)

    @given(polynomials_in_q(), polynomials_in_q())
    @settings(max_examples=40, deadline=None)
    def test_reduction_is_a_ring_map(self, f, g):
        assert mod_square_reduce(f * g) == mod_square_reduce(f) * mod_square_reduce(g)
        assert mod_square_reduce(f - g) == mod_square_reduce(f) - mod_square_reduce(g)

    @given(st.tuples(small_ints, small_ints).filter(lambda t: t[0] != 0), st.tuples(small_ints, small_ints))
    @settings(max_examples=60, deadline=None)
    def test_division(self, unit, other):
        u, v = ModSquareElem(*unit), ModSquareElem(*other)
        assert (v / u) * u == v

    def test_integers_coerce(self):
        assert ModSquareElem(1, 1) + 1 == ModSquareElem(2, 1)
        assert 3 * ModSquareElem(0, 1) == ModSquareElem(0, 3)
        assert 1 - ModSquareElem(1, 1) == ModSquareElem(0, -1)
