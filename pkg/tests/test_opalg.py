"""First-order operators over Q(q)(x) and the generators D_n."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core.errors import PreconditionError
from core.moebius import G_Q, IDENTITY, S_Q, T_Q, ProjMap, g_function
from core.opalg import (
    ONE,
    PARTIAL,
    AntiCommFamily,
    FirstOrderOp,
    anticommuting_family_check,
    as_function,
    bracket,
    classical_generator,
    conjugate_by,
    d_hat_0,
    discriminant_identity,
    eigencheck,
    generator,
    gq_action_suite,
    in_basis,
    jacobi_residual,
    multiplication,
    opalg_suite,
    reparametrize,
    vector_field,
)
from core.rings import QField, compose_x, q, qx, x

from .strategies import polynomials_in_x, ratfuncs_in_q

R = q ** 2 - q + 1


@st.composite
def operators(draw):
    return FirstOrderOp(draw(polynomials_in_x()), draw(polynomials_in_x()))


class TestFirstOrderOp:
    def test_application(self):
        op = FirstOrderOp.of(qx, x ** 2)
        assert op(x ** 3) == qx * x ** 3 + 3 * x ** 4

    def test_coercion_of_constants(self):
        assert multiplication(Fraction(1, 2))(x) == x / 2
        assert vector_field(q)(x ** 2) == 2 * qx * x

    def test_specialization(self):
        assert generator(-1).at_q(2) == vector_field(1 + x)

    def test_str(self):
        assert str(PARTIAL) == "(1)∂"
        assert generator(1).to_dict() == {'mult': '0', 'vec': 'q*x^2-q*x+x'}

    @given(operators(), operators())
    @settings(max_examples=30, deadline=None)
    def test_bracket_is_antisymmetric(self, A, B):
        assert bracket(A, B) == -bracket(B, A)

    @given(operators(), operators(), operators())
    @settings(max_examples=20, deadline=None)
    def test_jacobi(self, A, B, C):
        assert jacobi_residual(A, B, C).is_zero()

    @given(operators(), operators(), polynomials_in_x())
    @settings(max_examples=30, deadline=None)
    def test_bracket_is_the_commutator(self, A, B, f):
        assert bracket(A, B)(f) == A(B(f)) - B(A(f))


class TestGenerators:
    def test_low_generators(self):
        assert generator(-1) == vector_field(1 + (qx - 1) * x)
        assert generator(0) == vector_field((1 + (qx - 1) * x) * (1 + (x - 1) * qx))
        assert generator(1) == vector_field((1 + (x - 1) * qx) * x)

    def test_recursion(self):
        g = g_function()
        assert generator(3) == generator(2).scaled(g)
        assert generator(-3) == generator(-2).scaled(qx / g)

    @pytest.mark.parametrize("n", range(-4, 5))
    def test_classical_limit(self, n):
        assert generator(n).at_q(1) == classical_generator(n)

    def test_low_brackets(self):
        Dm1, D0, D1 = generator(-1), generator(0), generator(1)
        assert bracket(D0, Dm1) == vector_field(-qx * (1 + (qx - 1) * x) ** 2)
        assert d_hat_0() == bracket(Dm1, D1)
        assert bracket(d_hat_0(), D1) == in_basis({1: q ** 2 + 1, -1: (q - 1) ** 2})

    def test_in_basis(self):
        assert in_basis({}).is_zero()
        assert in_basis({0: 2}) == generator(0).scaled(2)


class TestConjugation:
    def test_translation_commutes_with_d_minus_one(self):
        assert conjugate_by(generator(-1), T_Q) == generator(-1)

    @pytest.mark.parametrize("k", range(-3, 4))
    def test_inversion_reverses_index(self, k):
        expected = generator(-k).scaled((-1) ** ((k - 1) % 2))
        assert conjugate_by(generator(k), S_Q) == expected

    def test_singular_map(self):
        with pytest.raises(PreconditionError):
            conjugate_by(PARTIAL, ProjMap.of(1, 1, 1, 1))

    def test_identity(self):
        assert conjugate_by(generator(2), IDENTITY) == generator(2)

    @given(polynomials_in_x())
    @settings(max_examples=20, deadline=None)
    def test_matches_precomposition(self, f):
        D = generator(0)
        fn, inverse = G_Q.as_function(), G_Q.adjugate().as_function()
        assert conjugate_by(D, G_Q)(f) == compose_x(D(compose_x(f, inverse)), fn)


class TestEigenfunctions:
    def test_g_and_its_reciprocal(self):
        g = g_function()
        assert eigencheck(generator(0), g, R)
        assert eigencheck(generator(0), 1 / g, -R)

    def test_specialized(self):
        assert not eigencheck(generator(0), x, R, at_q=2)
        assert eigencheck(generator(0), x, 1, at_q=1)

    def test_tsallis_polynomial(self):
        # (1 + x/2)^2 at q = 3/2
        E = (1 + x / 2) ** 2
        assert eigencheck(generator(-1), E, 1, at_q=Fraction(3, 2))


class TestAntiCommuting:
    def test_family_members(self):
        assert anticommuting_family_check(AntiCommFamily(QField.zero, QField.one))
        assert anticommuting_family_check(AntiCommFamily(QField.one, QField.zero))

    @given(ratfuncs_in_q(), ratfuncs_in_q())
    @settings(max_examples=20, deadline=None)
    def test_random_members(self, p0, p1):
        assert anticommuting_family_check(AntiCommFamily(p0, p1))

    def test_d0_is_a_member(self):
        assert AntiCommFamily(1 - q, -1 + 3 * q - q ** 2).operator() == generator(0)

    def test_d_minus_one_is_not(self):
        assert conjugate_by(generator(-1), S_Q) != -generator(-1)

    def test_discriminant(self):
        assert discriminant_identity()


class TestReparametrize:
    def test_d0_becomes_a_dilation(self):
        assert reparametrize(generator(0), G_Q) == vector_field(as_function(R) * x)

    def test_d_minus_one(self):
        expected = generator(-1).with_q(1 / qx).scaled(qx)
        assert reparametrize(generator(-1), G_Q) == expected

    def test_identity(self):
        assert reparametrize(PARTIAL, IDENTITY) == PARTIAL

    def test_needs_vector_field(self):
        with pytest.raises(PreconditionError):
            reparametrize(ONE, G_Q)


class TestSuites:
    def test_gq_action(self):
        report = gq_action_suite(4)
        assert report.passed, [c.to_dict() for c in report.failures()]

    def test_gq_action_window(self):
        with pytest.raises(PreconditionError):
            gq_action_suite(1)

    @pytest.mark.slow
    def test_opalg_suite(self):
        report = opalg_suite(seed=0, window=8)
        assert report.passed, [c.to_dict() for c in report.failures()]
        assert report.find("D_0 anti-commutes with S_q").passed
