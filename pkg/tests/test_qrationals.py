"""Even continued fractions and the sharp and flat q-rationals."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from core.errors import ContinuedFractionError, PreconditionError
from core.moebius import T_Q, U_Q, projective_eq
from core.qrationals import (
    FLAT,
    SHARP,
    EvenCF,
    corpus,
    even_cf,
    positivity_check,
    q_flat,
    q_integer,
    q_rational,
    q_sharp,
    qrationals_suite,
    t_power,
    transition_check,
    u_power,
)
from core.rings import QField, q

from .strategies import rationals


class TestEvenContinuedFraction:
    @pytest.mark.parametrize("r,s,terms", [
        (5, 2, [2, 2]),
        (7, 3, [2, 3]),
        (3, 1, [2, 1]),
        (0, 1, [-1, 1]),
        (-1, 1, [-2, 1]),
        (10, 7, [1, 2, 2, 1]),
        (5, 3, [1, 1, 1, 1]),
        (1, 0, []),
    ])
    def test_known_expansions(self, r, s, terms):
        assert even_cf(r, s).to_list() == terms

    def test_zero_over_zero(self):
        with pytest.raises(ContinuedFractionError):
            even_cf(0, 0)

    def test_shape_is_validated(self):
        with pytest.raises(ContinuedFractionError, match="odd length"):
            EvenCF((1, 2, 3))
        with pytest.raises(ContinuedFractionError, match="positive"):
            EvenCF((1, 0))

    def test_empty_is_infinity(self):
        assert EvenCF(()).reconstruct() == (1, 0)
        assert EvenCF(()).value() is None

    @given(rationals(bound=200))
    @settings(max_examples=200)
    def test_reconstructs_the_rational(self, pair):
        r, s = pair
        cf = even_cf(r, s)
        expected = Fraction(r, s)
        assert len(cf) % 2 == 0
        assert cf.reconstruct() == (expected.numerator, expected.denominator)
        assert all(a >= 1 for a in cf.to_list()[1:])

    def test_negative_denominator(self):
        assert even_cf(5, -2) == even_cf(-5, 2)


class TestQIntegers:
    def test_positive(self):
        assert q_integer(3) == 1 + q + q ** 2
        assert q_integer(0) == QField.zero

    def test_negative(self):
        assert q_integer(-1) == -1 / q
        assert q_integer(-2) == -(1 + q) / q ** 2

    @pytest.mark.parametrize("n", range(-4, 6))
    def test_closed_powers(self, n):
        assert projective_eq(t_power(n), T_Q.power(n))
        assert projective_eq(u_power(n), U_Q.power(n))


class TestQRationals:
    def test_listed_values(self):
        assert q_sharp(2, 1).value() == 1 + q
        assert q_flat(2, 1).value() == 1 + q ** 2
        assert q_flat(0, 1).value() == (q - 1) / q
        assert q_flat(1, 0).value() == 1 / (1 - q)
        assert q_sharp(5, 2).value() == (q ** 3 + q ** 2 + 2 * q + 1) / (q + 1)
        assert q_flat(5, 2).value() == (q ** 4 + q ** 3 + q ** 2 + q + 1) / (q ** 2 + 1)

    def test_sharp_infinity(self):
        pair = q_sharp(1, 0)
        assert pair.is_infinite
        assert pair.value() is None
        assert pair.at(2) is None

    def test_to_dict(self):
        assert q_rational(2, 1, FLAT).to_dict() == {
            'flavor': 'flat', 'numerator': 'q^2+1', 'denominator': '1',
        }
        assert q_rational(5, 2).to_dict() == {
            'flavor': 'sharp', 'numerator': 'q^3+q^2+2*q+1', 'denominator': 'q+1',
        }

    def test_exact_value(self):
        assert q_sharp(5, 2).at(2) == Fraction(17, 3)
        assert q_sharp(5, 2).at(-1) is None

    def test_flavor_checked(self):
        with pytest.raises(PreconditionError):
            q_rational(1, 2, "natural")

    def test_flavors_differ(self):
        assert q_rational(5, 2, SHARP) != q_rational(5, 2, FLAT)
        assert q_rational(5, 2, SHARP) == q_sharp(10, 4)

    @given(rationals())
    @settings(max_examples=60, deadline=None)
    def test_specializes_to_the_rational(self, pair):
        r, s = pair
        assert q_sharp(r, s).at(1) == Fraction(r, s)
        assert q_flat(r, s).at(1) == Fraction(r, s)

    @given(rationals())
    @settings(max_examples=60, deadline=None)
    def test_translation(self, pair):
        r, s = pair
        assert q_sharp(r + s, s).value() == q * q_sharp(r, s).value() + 1

    @given(rationals())
    @settings(max_examples=60, deadline=None)
    def test_transition(self, pair):
        assert transition_check(*pair)

    def test_transition_at_infinity(self):
        assert transition_check(1, 0)

    @given(rationals())
    @settings(max_examples=60, deadline=None)
    def test_flat_positivity(self, pair):
        r, s = pair
        if Fraction(r, s) > 1:
            assert positivity_check(r, s)

    def test_positivity_needs_more_than_one(self):
        with pytest.raises(PreconditionError):
            positivity_check(1, 2)


class TestSuite:
    def test_corpus(self):
        assert list(corpus(2)) == [(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1), (-1, 2), (1, 2)]

    def test_small_corpus_passes(self):
        report = qrationals_suite(bound=8)
        assert report.passed, [c.to_dict() for c in report.failures()]

    @pytest.mark.slow
    def test_default_corpus_passes(self):
        assert qrationals_suite().passed
