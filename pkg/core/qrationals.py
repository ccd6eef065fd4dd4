"""
Q-Rationals Module

Even continued fractions and the two q-deformations of rational numbers:
the right (sharp) one, obtained by applying the deformed generators to
infinity, and the left (flat) one, obtained from the seed 1/(1-q). Also the
transition theorem linking them through g_q and the positivity of flat
values.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
import logging
from typing import Dict, Iterator, List, Optional, Tuple

from sympy.polys.rings import PolyElement

from .errors import ContinuedFractionError, PreconditionError
from .moebius import (
    G_Q,
    IDENTITY,
    INFINITY,
    SEED,
    T_Q,
    U_Q,
    ProjMap,
    ProjPoint,
    apply,
    projective_eq,
)
from .report import CheckRecorder, VerifyReport, render
from .rings import (
    QField,
    RatFuncQ,
    evaluate_poly,
    format_poly,
    has_nonnegative_coefficients,
    poly_coefficients,
    power,
    q,
    substitute_q,
)

logger = logging.getLogger(__name__)

SHARP = "sharp"
FLAT = "flat"
FLAVORS = (SHARP, FLAT)


@dataclass(frozen=True)
class EvenCF:
    """[a1, ..., a2n] read as T^a1 U^a2 ... U^a2n(inf); () is infinity."""

    terms: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(a) for a in self.terms))
        if len(self.terms) % 2:
            raise ContinuedFractionError(f"even continued fraction has odd length: {list(self.terms)}")
        if any(a < 1 for a in self.terms[1:]):
            raise ContinuedFractionError(f"terms after the first must be positive: {list(self.terms)}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def pairs(self) -> Iterator[Tuple[int, int]]:
        for i in range(0, len(self.terms), 2):
            yield self.terms[i], self.terms[i + 1]

    def reconstruct(self) -> Tuple[int, int]:
        """Classical value as a reduced projective pair (r, s); (1, 0) is infinity."""
        n, d = 1, 0
        for a, b in reversed(list(self.pairs())):
            # U^b: y -> y/(by + 1), then T^a: y -> y + a
            n, d = n, b * n + d
            n, d = n + a * d, d
        g = gcd(n, d) or 1
        n, d = n // g, d // g
        if d < 0:
            n, d = -n, -d
        if d == 0:
            n = 1
        return n, d

    def value(self) -> Optional[Fraction]:
        n, d = self.reconstruct()
        return None if d == 0 else Fraction(n, d)

    def to_list(self) -> List[int]:
        return list(self.terms)


def even_cf(r: int, s: int) -> EvenCF:
    """
    Even continued fraction of r/s.

    Args:
        r: Numerator
        s: Denominator; 0 means infinity

    Returns:
        EvenCF with even length, empty for infinity

    Raises:
        ContinuedFractionError: for 0/0
    """
    if r == 0 and s == 0:
        raise ContinuedFractionError("0/0 has no continued fraction")
    if s == 0:
        return EvenCF(())
    if s < 0:
        r, s = -r, -s
    g = gcd(r, s)
    r, s = r // g, s // g

    terms: List[int] = []
    while s:
        a, rem = divmod(r, s)
        terms.append(a)
        r, s = s, rem

    if len(terms) % 2:
        if len(terms) == 1:
            terms = [terms[0] - 1, 1]
        elif terms[-1] >= 2:
            terms[-1] -= 1
            terms.append(1)
        else:
            terms.pop()
            terms[-1] += 1
    return EvenCF(tuple(terms))


def q_integer(n: int) -> RatFuncQ:
    """[n]_q = 1 + q + ... + q^(n-1); (1 - q^n)/(1 - q) for negative n."""
    if n >= 0:
        return sum((q ** i for i in range(n)), QField.zero)
    return (1 - power(q, n)) / (1 - q)


@lru_cache(maxsize=None)
def t_power(a: int) -> ProjMap:
    """T_q^a = [[q^a, [a]_q], [0, 1]]."""
    return ProjMap.of(power(q, a), q_integer(a), 0, 1)


@lru_cache(maxsize=None)
def u_power(b: int) -> ProjMap:
    """U_q^b = [[q^b, 0], [q[b]_q, 1]] up to a scalar."""
    return ProjMap.of(power(q, b), 0, q * q_integer(b), 1)


@lru_cache(maxsize=4096)
def word_matrix(terms: Tuple[int, ...]) -> ProjMap:
    """T^a1 U^a2 ... U^a2n."""
    result = IDENTITY
    for a, b in EvenCF(terms).pairs():
        result = result @ t_power(a) @ u_power(b)
    return result


@dataclass(frozen=True, eq=False)
class QRatPair:
    """A q-rational R/S; denominator 0 is infinity."""

    numerator: PolyElement
    denominator: PolyElement
    flavor: str

    @classmethod
    def from_point(cls, point: ProjPoint, flavor: str) -> "QRatPair":
        ring = QField.ring
        if point.is_infinite:
            return cls(ring.one, ring.zero, flavor)
        return cls(point.value.numer, point.value.denom, flavor)

    @property
    def is_infinite(self) -> bool:
        return not self.denominator

    def value(self) -> Optional[RatFuncQ]:
        if self.is_infinite:
            return None
        return QField.new(self.numerator, self.denominator)

    def point(self) -> ProjPoint:
        return ProjPoint(self.value())

    def at(self, q0) -> Optional[Fraction]:
        """Exact value at q = q0; None for infinity (or a pole)."""
        point = (Fraction(q0),)
        den = evaluate_poly(self.denominator, point)
        if den == 0:
            return None
        return Fraction(evaluate_poly(self.numerator, point)) / den

    def __eq__(self, other) -> bool:
        if not isinstance(other, QRatPair):
            return NotImplemented
        return (self.numerator == other.numerator and self.denominator == other.denominator
                and self.flavor == other.flavor)

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator, self.flavor))

    def to_dict(self) -> Dict[str, str]:
        return {
            'flavor': self.flavor,
            'numerator': format_poly(self.numerator),
            'denominator': format_poly(self.denominator),
        }

    def __str__(self) -> str:
        return f"({format_poly(self.numerator)})/({format_poly(self.denominator)})"


def q_sharp(r: int, s: int) -> QRatPair:
    """Right q-rational [r/s]#: the word of r/s applied to infinity."""
    point = apply(word_matrix(even_cf(r, s).terms), INFINITY)
    return QRatPair.from_point(point, SHARP)


def q_flat(r: int, s: int) -> QRatPair:
    """Left q-rational [r/s]b: the word of r/s applied to 1/(1-q)."""
    point = apply(word_matrix(even_cf(r, s).terms), SEED)
    return QRatPair.from_point(point, FLAT)


def q_rational(r: int, s: int, flavor: str = SHARP) -> QRatPair:
    if flavor not in FLAVORS:
        raise PreconditionError(f"flavor must be one of {', '.join(FLAVORS)}, got '{flavor}'")
    return q_sharp(r, s) if flavor == SHARP else q_flat(r, s)


def _transition(r: int, s: int) -> Tuple[bool, str]:
    moved = apply(G_Q, q_sharp(r, s).point())
    flat = q_flat(r, s).point()
    expected = flat if flat.is_infinite else ProjPoint(substitute_q(flat.value, 1 / q))
    if moved == expected:
        return True, ""
    return False, f"g_q([{r}/{s}]#) = {moved}, [{r}/{s}]b at 1/q = {expected}"


def transition_check(r: int, s: int) -> bool:
    """g_q([r/s]#) equals [r/s]b with q replaced by 1/q."""
    return _transition(r, s)[0]


def normalized_flat(r: int, s: int) -> Tuple[List[Fraction], List[Fraction]]:
    """
    Coefficient lists of the flat numerator and denominator after clearing
    a common power of q and an overall sign.
    """
    pair = q_flat(r, s)
    num = poly_coefficients(pair.numerator)
    den = poly_coefficients(pair.denominator)
    # strip a common q^k (none after reduction, kept for Laurent inputs)
    while num and den and num[0] == 0 and den[0] == 0:
        num, den = num[1:], den[1:]
    if den and den[-1] < 0:
        num = [-c for c in num]
        den = [-c for c in den]
    return num, den


def positivity_check(r: int, s: int) -> bool:
    """
    Numerator and denominator of [r/s]b have nonnegative coefficients.

    Raises:
        PreconditionError: unless r/s > 1
    """
    if s == 0 or Fraction(r, s) <= 1:
        raise PreconditionError(f"positivity needs r/s > 1, got {r}/{s}")
    pair = q_flat(r, s)
    num, den = pair.numerator, pair.denominator
    if den.LC < 0:
        num, den = -num, -den
    return has_nonnegative_coefficients(num) and has_nonnegative_coefficients(den)


def corpus(bound: int = 40) -> Iterator[Tuple[int, int]]:
    """Reduced r/s with |r| <= bound and 1 <= s <= bound."""
    for s in range(1, bound + 1):
        for r in range(-bound, bound + 1):
            if gcd(r, s) == 1:
                yield r, s


def _listed_values(recorder: CheckRecorder) -> None:
    inf = QRatPair(QField.ring.one, QField.ring.zero, SHARP)
    expected = [
        ("[0]#", q_sharp(0, 1), QField.zero),
        ("[1]#", q_sharp(1, 1), QField.one),
        ("[2]#", q_sharp(2, 1), 1 + q),
        ("[0]b", q_flat(0, 1), (q - 1) / q),
        ("[1]b", q_flat(1, 1), q),
        ("[2]b", q_flat(2, 1), 1 + q ** 2),
        ("[inf]b", q_flat(1, 0), 1 / (1 - q)),
        ("[5/2]#", q_sharp(5, 2), (q ** 3 + q ** 2 + 2 * q + 1) / (q + 1)),
        ("[5/2]b", q_flat(5, 2), (q ** 4 + q ** 3 + q ** 2 + q + 1) / (q ** 2 + 1)),
    ]
    for name, pair, value in expected:
        recorder.equal(f"{name} = {render(value)}", pair.value(), value)
    recorder.record("[inf]# = inf", q_sharp(1, 0) == inf, f"got {q_sharp(1, 0)}")


def qrationals_suite(bound: int = 40) -> VerifyReport:
    """
    Corpus sweep over reduced r/s with |r|, s <= bound.

    Args:
        bound: Corpus bound

    Returns:
        VerifyReport for the "qrationals" suite
    """
    recorder = CheckRecorder("qrationals")
    rationals = list(corpus(bound))
    logger.info("q-rational corpus of %d rationals", len(rationals))

    _listed_values(recorder)

    def sweep(predicate) -> Tuple[bool, str]:
        for r, s in rationals:
            ok, witness = predicate(r, s)
            if not ok:
                return False, f"{r}/{s}: {witness}"
        return True, ""

    def reconstruction(r, s):
        cf = even_cf(r, s)
        ok = len(cf) % 2 == 0 and cf.reconstruct() == (r, s)
        return ok, f"{cf.to_list()} reconstructs {cf.reconstruct()}"

    def specialization(r, s):
        sharp, flat = q_sharp(r, s).at(1), q_flat(r, s).at(1)
        target = Fraction(r, s)
        return sharp == target and flat == target, f"sharp {sharp}, flat {flat}"

    def translation(r, s):
        shifted = q_sharp(r + s, s).value()
        return shifted == q * q_sharp(r, s).value() + 1, f"[r/s + 1]# = {render(shifted)}"

    def positivity(r, s):
        if Fraction(r, s) <= 1:
            return True, ""
        return positivity_check(r, s), f"flat coefficients {normalized_flat(r, s)}"

    recorder.check(f"even continued fraction reconstructs ({len(rationals)} rationals)",
                   lambda: sweep(reconstruction))
    recorder.check("sharp and flat specialize to r/s at q=1", lambda: sweep(specialization))
    recorder.check("transition g_q([r/s]#) = [r/s]b at 1/q", lambda: sweep(_transition))
    recorder.check("transition at infinity", lambda: _transition(1, 0))
    recorder.check("flat values of r/s > 1 have coefficients in N[q]", lambda: sweep(positivity))
    recorder.check("[r/s + 1]# = q[r/s]# + 1", lambda: sweep(translation))

    def integer_recursion() -> Tuple[bool, str]:
        for n in range(21):
            lhs, rhs = q_sharp(n + 1, 1).value(), q * q_sharp(n, 1).value() + 1
            if lhs != rhs:
                return False, f"n={n}: {render(lhs)} != {render(rhs)}"
            if q_sharp(n, 1).value() != q_integer(n):
                return False, f"[{n}]# != [{n}]_q"
        for n in range(-10, 11):
            if q_integer(n + 1) != q * q_integer(n) + 1:
                return False, f"[n+1]_q = q[n]_q + 1 fails at n={n}"
        return True, ""

    def closed_powers() -> Tuple[bool, str]:
        for n in range(-4, 6):
            if not projective_eq(t_power(n), T_Q.power(n)):
                return False, f"T_q^{n}"
            if not projective_eq(u_power(n), U_Q.power(n)):
                return False, f"U_q^{n}"
        return True, ""

    recorder.check("[n+1]# = q[n]# + 1 and [n]# = [n]_q", integer_recursion)
    recorder.check("closed forms of T_q^n and U_q^n", closed_powers)
    recorder.equal("[-1]_q = -1/q", q_integer(-1), -1 / q)
    recorder.equal("[3]_q = 1+q+q^2", q_integer(3), 1 + q + q ** 2)
    return recorder.finish()
