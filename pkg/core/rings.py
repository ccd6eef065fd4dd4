"""
Rings Module

Exact arithmetic foundation: the fields Q(q), Q(q, x) and Q(s), ring
endomorphisms (substitution and composition), evaluation at rational or
numeric points, and the quotient ring Q[q]/((q-1)^2).

Rational functions are sympy ``FracElement`` values. sympy keeps them in
lowest terms with an integer numerator and a primitive denominator of
positive leading coefficient, so two elements are equal exactly when their
(numerator, denominator) pairs are identical.
"""

from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Any, Dict, List, Sequence, Union

from sympy import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.polyerrors import GeneratorsError
from sympy.polys.rings import PolyElement

from .errors import (
    CompositionError,
    DivisionByZeroError,
    ModSquareError,
    QDeformError,
    SubstitutionError,
)

logger = logging.getLogger(__name__)

# Q(q): coefficients of everything exact
QField, q = field("q", QQ)
# Q(q)(x): the function space the operators act on
QXField, qx, x = field("q,x", QQ)
# Q(s) with q = s^2, for the two-dimensional representation
SField, s = field("s", QQ)

RatFuncQ = FracElement
RatFuncQX = FracElement
Rational = Union[int, Fraction]

_OPS = ("add", "sub", "mul", "div")


def to_qq(value: Any):
    """Convert an int, Fraction or QQ element into the ground domain."""
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def to_fraction(coeff: Any) -> Fraction:
    """Convert a ground-domain coefficient into a Fraction."""
    if isinstance(coeff, (int, Fraction)):
        return Fraction(coeff)
    return Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))


def constant(value: Rational, fld=QField) -> FracElement:
    """Embed a rational constant into a field."""
    return fld.ground_new(to_qq(value))


def power(f: FracElement, n: int) -> FracElement:
    """f**n in canonical form for every integer n."""
    if n >= 0:
        return f ** n
    if not f:
        raise DivisionByZeroError("zero raised to a negative power")
    return f.field.one / f ** (-n)


def ratfunc_arith(lhs: RatFuncQ, rhs: RatFuncQ, op: str) -> RatFuncQ:
    """
    Field arithmetic on rational functions.

    Args:
        lhs: Left operand
        rhs: Right operand
        op: One of "add", "sub", "mul", "div"

    Returns:
        The canonical result
    """
    if op not in _OPS:
        raise QDeformError(f"Unknown operation '{op}', expected one of {', '.join(_OPS)}")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if not rhs:
        raise DivisionByZeroError("division by the zero rational function")
    return lhs / rhs


def _homogeneous_substitute(p: PolyElement, index: int, a: PolyElement, b: PolyElement,
                            degree: int) -> PolyElement:
    """b^degree * p with generator ``index`` replaced by a/b."""
    ring = p.ring
    a_powers = [ring.one]
    b_powers = [ring.one]
    for _ in range(degree):
        a_powers.append(a_powers[-1] * a)
        b_powers.append(b_powers[-1] * b)

    result = ring.zero
    for monom, coeff in p.terms():
        e = monom[index]
        rest = list(monom)
        rest[index] = 0
        term = ring.term_new(tuple(rest), coeff)
        result += term * a_powers[e] * b_powers[degree - e]
    return result


def _var_degree(p: PolyElement, index: int) -> int:
    if not p:
        return 0
    return max(monom[index] for monom in p.itermonoms())


def _compose(f: FracElement, index: int, image: FracElement) -> FracElement:
    """Replace generator ``index`` of f's field by ``image`` (same field)."""
    fld = f.field
    image = fld.field_new(image)
    a, b = image.numer, image.denom
    dn = _var_degree(f.numer, index)
    dd = _var_degree(f.denom, index)
    num = _homogeneous_substitute(f.numer, index, a, b, dn)
    den = _homogeneous_substitute(f.denom, index, a, b, dd)
    if not den:
        raise ZeroDivisionError("denominator vanishes identically")
    if dd > dn:
        num *= b ** (dd - dn)
    elif dn > dd:
        den *= b ** (dn - dd)
    return fld.new(num, den)


def substitute_q(f: RatFuncQ, image: RatFuncQ) -> RatFuncQ:
    """
    Ring endomorphism q -> image of Q(q).

    Raises:
        SubstitutionError: if the denominator of f vanishes identically at image
    """
    try:
        return _compose(f, 0, image)
    except ZeroDivisionError:
        raise SubstitutionError(f"denominator of {f.as_expr()} vanishes at q = {image.as_expr()}")


def substitute_qx(f: RatFuncQX, image: RatFuncQX) -> RatFuncQX:
    """Replace q by ``image`` inside a function of (q, x)."""
    try:
        return _compose(f, 0, image)
    except ZeroDivisionError:
        raise SubstitutionError(f"denominator of {f.as_expr()} vanishes at q = {image.as_expr()}")


def compose_x(f: RatFuncQX, g: RatFuncQX) -> RatFuncQX:
    """
    Composition f∘g in the variable x.

    Raises:
        CompositionError: if g lands identically on a pole of f
    """
    try:
        return _compose(f, 1, g)
    except ZeroDivisionError:
        raise CompositionError(f"{g.as_expr()} is identically a pole of {f.as_expr()}")


def lift(f: RatFuncQ) -> RatFuncQX:
    """Embed Q(q) into Q(q)(x)."""
    return f.set_field(QXField)


def lower(f: RatFuncQX) -> RatFuncQ:
    """Inverse of lift for functions that do not depend on x."""
    try:
        return f.set_field(QField)
    except GeneratorsError:
        raise QDeformError(f"{f.as_expr()} depends on x")


def swap_qx(f: RatFuncQX) -> RatFuncQX:
    """Exchange the roles of q and x."""
    ring = QXField.ring

    def swapped(p: PolyElement) -> PolyElement:
        return ring.from_dict({(j, i): c for (i, j), c in p.terms()})

    return QXField.new(swapped(f.numer), swapped(f.denom))


def d_dx(f: RatFuncQX) -> RatFuncQX:
    return f.diff(x)


def rename_into(f: FracElement, fld) -> FracElement:
    """Copy f into a field with the same number of generators, position by position."""
    ring = fld.ring
    return fld.new(ring.from_dict(dict(f.numer.terms())), ring.from_dict(dict(f.denom.terms())))


def to_s_field(f: RatFuncQ) -> FracElement:
    """Image of f under q -> s^2 in Q(s)."""
    return _compose(rename_into(f, SField), 0, s ** 2)


def evaluate_poly(p: PolyElement, point: Sequence[Any], convert=to_fraction) -> Any:
    """
    Evaluate a polynomial at a point of the ground field or of any numeric ring.

    Args:
        p: Polynomial
        point: One value per generator
        convert: Maps a ground coefficient into the target ring

    Returns:
        The value (0 for the zero polynomial)
    """
    total = 0
    for monom, coeff in p.terms():
        term = convert(coeff)
        for value, e in zip(point, monom):
            if e:
                term = term * value ** e
        total = total + term
    return total


def evaluate(f: FracElement, *point: Rational) -> Fraction:
    """
    Exact value of f at a rational point.

    Raises:
        DivisionByZeroError: if the point is a pole
    """
    point = tuple(Fraction(v) for v in point)
    den = evaluate_poly(f.denom, point)
    if den == 0:
        raise DivisionByZeroError(f"{f.as_expr()} has a pole at {point}")
    return Fraction(evaluate_poly(f.numer, point)) / den


def evaluate_numeric(f: FracElement, *point: Any) -> Any:
    """Floating point value of f at a complex (or dual) point."""
    def convert(coeff):
        return float(to_fraction(coeff))

    return evaluate_poly(f.numer, point, convert) / evaluate_poly(f.denom, point, convert)


def poly_coefficients(p: PolyElement) -> List[Fraction]:
    """Ascending coefficient list of a univariate polynomial; [] for zero."""
    if not p:
        return []
    by_degree: Dict[int, Fraction] = {monom[0]: to_fraction(c) for monom, c in p.terms()}
    return [by_degree.get(k, Fraction(0)) for k in range(max(by_degree) + 1)]


def has_nonnegative_coefficients(p: PolyElement) -> bool:
    return all(to_fraction(c) >= 0 for _, c in p.terms())


def _format_term(coeff: Fraction, monom: Sequence[int], names: List[str]) -> str:
    factors = []
    for name, e in zip(names, monom):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    mono = "*".join(factors)
    if not mono:
        return str(coeff)
    if coeff == 1:
        return mono
    if coeff == -1:
        return f"-{mono}"
    return f"{coeff}*{mono}"


def format_poly(p: PolyElement) -> str:
    """
    Render a polynomial in descending powers, later generators first.

    Args:
        p: Polynomial

    Returns:
        Text such as "q^3+q^2+2*q+1"
    """
    if not p:
        return "0"
    names = [str(sym) for sym in p.ring.symbols]
    terms = sorted(p.terms(), key=lambda t: tuple(reversed(t[0])), reverse=True)

    text = ""
    for i, (monom, coeff) in enumerate(terms):
        term = _format_term(to_fraction(coeff), monom, names)
        if i and not term.startswith('-'):
            text += "+"
        text += term
    return text


def format_ratfunc(f: FracElement) -> str:
    """Render a rational function as "num" or "(num)/(den)"."""
    num = format_poly(f.numer)
    den = format_poly(f.denom)
    if den == "1":
        return num
    if len(f.numer) > 1:
        num = f"({num})"
    if len(f.denom) > 1 or '*' in den:
        den = f"({den})"
    return f"{num}/{den}"


@dataclass(frozen=True)
class ModSquareElem:
    """a + b(q-1) in Q[q]/((q-1)^2)."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def _coerce(cls, other) -> "ModSquareElem":
        if isinstance(other, ModSquareElem):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModSquareElem(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return ModSquareElem(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModSquareElem(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModSquareElem(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self) -> "ModSquareElem":
        if self.a == 0:
            raise ModSquareError(f"{self} is nilpotent, not a unit")
        return ModSquareElem(1 / self.a, -self.b / (self.a * self.a))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def lift(self) -> RatFuncQ:
        """The representative a + b(q-1) as an element of Q(q)."""
        return constant(self.a) + constant(self.b) * (q - 1)

    def __str__(self) -> str:
        return format_ratfunc(self.lift())


def mod_square_reduce(f: RatFuncQ) -> ModSquareElem:
    """
    Image of f in Q[q]/((q-1)^2): the first-order Taylor data at q = 1.

    Raises:
        ModSquareError: if q-1 divides the denominator
    """
    one = (Fraction(1),)
    n0 = evaluate_poly(f.numer, one)
    d0 = evaluate_poly(f.denom, one)
    if d0 == 0:
        raise ModSquareError(f"denominator of {f.as_expr()} is divisible by q-1")
    n1 = evaluate_poly(f.numer.diff(f.field.ring.gens[0]), one)
    d1 = evaluate_poly(f.denom.diff(f.field.ring.gens[0]), one)
    a = Fraction(n0) / d0
    b = (Fraction(n1) * d0 - Fraction(n0) * d1) / (Fraction(d0) * d0)
    return ModSquareElem(a, b)
