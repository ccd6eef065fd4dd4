"""
Helper Functions

Parsing of rationals, complex numbers and rational functions in the ASCII
text format used on the command line.
"""

from fractions import Fraction
import re
from tokenize import TokenError
from typing import Optional, Tuple

from sympy import Expr, S
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.polyerrors import CoercionFailed

from core.errors import ParseError

_RATIONAL = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$')
_INFINITY = {'inf', 'infinity', '∞', 'oo'}
_TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)


def parse_rational(text: str) -> Tuple[int, int]:
    """
    Parse "r/s", "n" or "inf" into an (r, s) pair reduced to lowest terms.

    Args:
        text: Rational in text form; s = 0 means the point at infinity

    Returns:
        Tuple of (r, s) with s >= 0
    """
    if text is None or not text.strip():
        raise ParseError("empty rational", 0)
    if text.strip().lower() in _INFINITY:
        return 1, 0

    match = _RATIONAL.match(text)
    if not match:
        raise ParseError(f"'{text}' is not a rational of the form r/s", 0)

    r = int(match.group(1))
    s = int(match.group(2)) if match.group(2) is not None else 1
    if r == 0 and s == 0:
        raise ParseError("0/0 is not a rational number", 0)
    if s < 0:
        r, s = -r, -s
    if s == 0:
        return 1, 0

    f = Fraction(r, s)
    return f.numerator, f.denominator


def parse_fraction(text: str) -> Fraction:
    """Parse a finite rational number."""
    r, s = parse_rational(text)
    if s == 0:
        raise ParseError(f"'{text}' must be finite", 0)
    return Fraction(r, s)


def parse_complex(text: str) -> complex:
    """
    Parse "re,im" (or a single real) into a complex number.

    Args:
        text: Comma separated real and imaginary parts

    Returns:
        The complex number
    """
    parts = [p.strip() for p in text.split(',')]
    if len(parts) not in (1, 2) or not all(parts):
        raise ParseError(f"'{text}' is not of the form re,im", 0)
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ParseError(f"'{text}' is not of the form re,im", 0)
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def format_fraction(value: Optional[Fraction]) -> str:
    """Render a rational; None stands for infinity."""
    if value is None:
        return "inf"
    return str(value)


def _locate(text: str, name: str) -> Optional[int]:
    match = re.search(rf'(?<![A-Za-z_]){re.escape(name)}(?![A-Za-z_0-9])', text)
    return match.start() if match else None


def parse_ratfunc(text: str, fld):
    """
    Parse an ASCII rational function such as "(q^3+q^2+2*q+1)/(q+1)".

    Args:
        text: Expression using +, -, *, /, ^ (or **), integers, parentheses,
            implicit products like "2q(q+1)" and the generator names of ``fld``
        fld: Target sympy fraction field

    Returns:
        The canonical field element

    Raises:
        ParseError: with the position of the offending token when it is known
    """
    if text is None or not text.strip():
        raise ParseError("empty expression", 0)

    symbols = {str(sym): sym for sym in fld.symbols}
    try:
        expr = parse_expr(text, local_dict=dict(symbols), transformations=_TRANSFORMATIONS)
    except TokenError as e:
        position = e.args[1][1] if len(e.args) > 1 else None
        raise ParseError(f"incomplete expression '{text}'", position)
    except SyntaxError as e:
        raise ParseError(f"'{text}' is not a valid expression: {e.msg}")
    except (TypeError, ValueError, AttributeError) as e:
        raise ParseError(f"'{text}' is not a valid expression: {e}")

    if not isinstance(expr, Expr):
        raise ParseError(f"'{text}' is not a single expression")
    if expr.has(S.ComplexInfinity, S.NaN):
        raise ParseError("division by zero")
    unknown = sorted(str(sym) for sym in expr.free_symbols if str(sym) not in symbols)
    if unknown:
        allowed = ", ".join(symbols)
        raise ParseError(f"unknown variable '{unknown[0]}' (expected {allowed})", _locate(text, unknown[0]))
    if not expr.is_rational_function(*fld.symbols):
        raise ParseError(f"'{text}' is not a rational function of {', '.join(symbols)}; "
                         "exponents must be integers")
    try:
        return fld.from_expr(expr)
    except (ValueError, CoercionFailed):
        raise ParseError(f"'{text}' has coefficients outside {fld.domain}")


def truncate_text(text: str, max_length: int, suffix: str = "...") -> str:
    """
    Truncate text to specified length with optional suffix.

    Args:
        text: Text to truncate
        max_length: Maximum length
        suffix: Suffix to add if truncated

    Returns:
        Truncated text
    """
    if len(text) <= max_length:
        return text

    return text[:max_length - len(suffix)] + suffix

