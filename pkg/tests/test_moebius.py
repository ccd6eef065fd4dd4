"""Projective matrices over Q(q) and their actions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core.moebius import (
    G_Q,
    IDENTITY,
    INFINITY,
    S_Q,
    SEED,
    SIGMA2,
    T_Q,
    U_Q,
    ProjPoint,
    apply,
    apply_fn,
    g_function,
    identity_suite,
    inversion,
    projective_eq,
    random_ratfunc,
    translation,
)
from core.rings import QXField, compose_x, constant, lift, q, qx, x

from .strategies import polynomials_in_x, ratfuncs_in_q

GENERATORS = [T_Q, S_Q, G_Q, U_Q, SIGMA2, T_Q.adjugate(), G_Q.adjugate()]


class TestProjMap:
    def test_determinants(self):
        assert T_Q.det() == q
        assert S_Q.det() == q
        assert G_Q.det() == q ** 2 - q + 1

    def test_inversion_squares_to_scalar(self):
        assert S_Q @ S_Q == IDENTITY.scaled(-q)

    def test_power_matches_repeated_product(self):
        assert T_Q.power(3) == T_Q @ T_Q @ T_Q
        assert projective_eq(T_Q.power(-2) @ T_Q.power(2), IDENTITY)

    def test_substitution(self):
        assert T_Q.substitute(1 / q) == translation(1 / q)
        assert S_Q.substitute(q ** 2) == inversion(q ** 2)

    def test_as_function(self):
        assert T_Q.as_function() == qx * x + 1
        assert g_function() == (qx * x + 1 - qx) / ((qx - 1) * x + 1)

    def test_str(self):
        assert str(T_Q) == "[[q, 1], [0, 1]]"

    @given(ratfuncs_in_q().filter(bool), st.sampled_from(GENERATORS))
    @settings(max_examples=30, deadline=None)
    def test_scalar_multiples_are_projectively_equal(self, factor, A):
        assert projective_eq(A.scaled(factor), A)
        assert projective_eq(A, A.scaled(factor))

    def test_distinct_maps(self):
        assert not projective_eq(T_Q, S_Q)
        assert not projective_eq(G_Q.reciprocal(), G_Q.adjugate())

    @given(st.sampled_from(GENERATORS), st.sampled_from(GENERATORS))
    @settings(max_examples=30, deadline=None)
    def test_determinant_is_multiplicative(self, A, B):
        assert (A @ B).det() == A.det() * B.det()


class TestPointAction:
    def test_infinity(self):
        assert apply(T_Q, INFINITY) == INFINITY
        assert apply(S_Q, INFINITY) == ProjPoint.of(0)
        assert apply(G_Q, INFINITY) == ProjPoint.of(q / (q - 1))

    def test_pole_goes_to_infinity(self):
        assert apply(S_Q, ProjPoint.of(0)) == INFINITY

    def test_seed_is_fixed_by_translation(self):
        assert apply(T_Q, SEED) == SEED
        assert apply(U_Q, SEED) == ProjPoint.of(q)

    def test_infinity_compares_only_to_itself(self):
        assert INFINITY != ProjPoint.of(0)
        assert ProjPoint.of(0) != INFINITY
        assert str(INFINITY) == "inf"

    @given(st.sampled_from(GENERATORS), st.sampled_from(GENERATORS),
           st.integers(min_value=-9, max_value=9), st.integers(min_value=1, max_value=9))
    @settings(max_examples=60, deadline=None)
    def test_action_is_compatible_with_products(self, A, B, r, s):
        point = ProjPoint.of(constant(Fraction(r, s)))
        assert apply(A @ B, point) == apply(A, apply(B, point))

    @given(st.sampled_from(GENERATORS), st.sampled_from(GENERATORS))
    @settings(max_examples=30, deadline=None)
    def test_action_at_infinity_is_compatible(self, A, B):
        assert apply(A @ B, INFINITY) == apply(A, apply(B, INFINITY))


class TestFunctionAction:
    @given(polynomials_in_x(), st.sampled_from(GENERATORS), st.sampled_from(GENERATORS))
    @settings(max_examples=25, deadline=None)
    def test_precomposition_is_contravariant(self, f, A, B):
        assert apply_fn(A @ B, f) == apply_fn(B, apply_fn(A, f))

    def test_identity_acts_trivially(self, rng):
        f = random_ratfunc(rng)
        assert apply_fn(IDENTITY, f) == f

    def test_g_at_zero(self):
        assert compose_x(g_function(), QXField.zero) == lift(1 - q)


@pytest.fixture(scope="module")
def report():
    return identity_suite(seed=0)


class TestIdentitySuite:
    def test_all_identities_hold(self, report):
        assert report.suite == "moebius"
        assert report.passed, [c.to_dict() for c in report.failures()]

    @pytest.mark.parametrize("name", [
        "S_q^2 = id",
        "braid relation",
        "matrix of 1/g_q anti-commutes with S_q",
        "g_q(x) g_x(q) = 1",
    ])
    def test_named_checks_present(self, report, name):
        assert report.find(name).passed

    def test_other_seed(self):
        assert identity_suite(seed=7).passed
