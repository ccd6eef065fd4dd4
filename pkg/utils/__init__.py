"""
Utility functions for the q-deformed modular group toolkit.
"""

from core.errors import ParseError

from .helpers import (
    format_fraction,
    parse_complex,
    parse_fraction,
    parse_rational,
    parse_ratfunc,
    truncate_text,
)

__all__ = [
    'ParseError',
    'format_fraction',
    'parse_complex',
    'parse_fraction',
    'parse_rational',
    'parse_ratfunc',
    'truncate_text',
]
