"""Parsing of command-line rationals, complex numbers and rational functions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from core.rings import QField, QXField, q, qx, x
from utils import (
    ParseError,
    format_fraction,
    parse_complex,
    parse_fraction,
    parse_rational,
    parse_ratfunc,
    truncate_text,
)


class TestParseRational:
    @pytest.mark.parametrize("text,expected", [
        ("5/2", (5, 2)),
        ("6/4", (3, 2)),
        ("-3/2", (-3, 2)),
        ("3/-2", (-3, 2)),
        (" 7 ", (7, 1)),
        ("0", (0, 1)),
        ("inf", (1, 0)),
        ("1/0", (1, 0)),
        ("-1/0", (1, 0)),
    ])
    def test_valid(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["0/0", "", "abc", "1/2/3", "1.5"])
    def test_invalid(self, text):
        with pytest.raises(ParseError):
            parse_rational(text)

    @given(st.integers(min_value=-200, max_value=200), st.integers(min_value=1, max_value=200))
    @settings(max_examples=100)
    def test_matches_fraction(self, r, s):
        value = Fraction(r, s)
        assert parse_rational(f"{r}/{s}") == (value.numerator, value.denominator)

    def test_fraction_must_be_finite(self):
        assert parse_fraction("3/9") == Fraction(1, 3)
        with pytest.raises(ParseError, match="finite"):
            parse_fraction("inf")

    def test_format(self):
        assert format_fraction(None) == "inf"
        assert format_fraction(Fraction(-5, 2)) == "-5/2"


class TestParseComplex:
    def test_pair(self):
        assert parse_complex("1,2") == complex(1, 2)
        assert parse_complex(" -0.5 , 3e-1 ") == complex(-0.5, 0.3)

    def test_real(self):
        assert parse_complex("0.5") == complex(0.5, 0)

    @pytest.mark.parametrize("text", ["1,2,3", "a,b", "1,", ""])
    def test_invalid(self, text):
        with pytest.raises(ParseError):
            parse_complex(text)


class TestParseRatfunc:
    def test_fraction_of_polynomials(self):
        f = parse_ratfunc("(q^3+q^2+2*q+1)/(q+1)", QField)
        assert f == (q ** 3 + q ** 2 + 2 * q + 1) / (q + 1)

    def test_both_power_spellings(self):
        assert parse_ratfunc("q**2", QField) == parse_ratfunc("q^2", QField) == q ** 2

    def test_negative_exponent(self):
        assert parse_ratfunc("q^-2 + q^(-1)", QField) == 1 / q ** 2 + 1 / q

    def test_implicit_multiplication(self):
        assert parse_ratfunc("2q(q+1)", QField) == 2 * q * (q + 1)

    def test_two_variables(self):
        assert parse_ratfunc("x^2/(q - x)", QXField) == x ** 2 / (qx - x)

    def test_unary_minus(self):
        assert parse_ratfunc("-(1-q)", QField) == q - 1

    def test_rational_coefficients(self):
        assert parse_ratfunc("q/2 + 3/4", QField) == q / 2 + QField(3) / 4

    @pytest.mark.parametrize("text", ["q+", "(q+1", "q$", "q)", "1,2", "   "])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_ratfunc(text, QField)

    @pytest.mark.parametrize("text,position", [("y", 0), ("q + y", 4), ("2y", 1)])
    def test_unknown_variable_position(self, text, position):
        with pytest.raises(ParseError) as info:
            parse_ratfunc(text, QField)
        assert info.value.position == position

    def test_division_by_zero(self):
        with pytest.raises(ParseError, match="division by zero"):
            parse_ratfunc("1/(q-q)", QField)

    def test_unknown_variable_lists_generators(self):
        with pytest.raises(ParseError, match="expected q, x"):
            parse_ratfunc("t + 1", QXField)

    def test_exponent_must_be_integer(self):
        with pytest.raises(ParseError, match="integer"):
            parse_ratfunc("q^q", QField)

    def test_zero_to_negative_power(self):
        with pytest.raises(ParseError):
            parse_ratfunc("(q-q)^-1", QField)


class TestTruncate:
    def test_short_text_kept(self):
        assert truncate_text("abc", 5) == "abc"

    def test_long_text_cut(self):
        assert truncate_text("abcdefgh", 6) == "abc..."
