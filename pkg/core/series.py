"""
Series Module

Truncated power series in x with coefficients in Q(q), and the Tsallis
exponential E_q(x) = (1+(q-1)x)^(1/(q-1)).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
import logging
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.fields import FracElement

from .errors import PreconditionError
from .report import CheckRecorder, VerifyReport, render
from .rings import (
    QField,
    QXField,
    RatFuncQ,
    RatFuncQX,
    compose_x,
    constant,
    evaluate,
    format_ratfunc,
    lift,
    q,
    x,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncSeries:
    """c_0 + c_1 x + ... + c_N x^N, everything above x^N discarded."""

    order: int
    coeffs: Tuple[RatFuncQ, ...]

    @classmethod
    def of(cls, coeffs: Sequence, order: Optional[int] = None) -> "TruncSeries":
        """Build from ints, Fractions or elements of Q(q), padding with zeros."""
        order = len(coeffs) - 1 if order is None else order
        if order < 0:
            raise PreconditionError("a series needs at least one coefficient")
        values = [c if isinstance(c, FracElement) else constant(c) for c in coeffs[:order + 1]]
        values += [QField.zero] * (order + 1 - len(values))
        return cls(order, tuple(values))

    def __getitem__(self, k: int) -> RatFuncQ:
        return self.coeffs[k] if 0 <= k <= self.order else QField.zero

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries.of(self.coeffs, min(order, self.order))

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        order = min(self.order, other.order)
        return TruncSeries(order, tuple(self[k] + other[k] for k in range(order + 1)))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        order = min(self.order, other.order)
        coeffs = []
        for n in range(order + 1):
            total = QField.zero
            for k in range(n + 1):
                if self[k] and other[n - k]:
                    total += self[k] * other[n - k]
            coeffs.append(total)
        return TruncSeries(order, tuple(coeffs))

    def scaled(self, factor) -> "TruncSeries":
        return TruncSeries(self.order, tuple(factor * c for c in self.coeffs))

    def derivative(self) -> "TruncSeries":
        """Loses the top order."""
        if self.order == 0:
            return TruncSeries(0, (QField.zero,))
        return TruncSeries(self.order - 1, tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def specialize(self, q0: Union[int, Fraction]) -> "TruncSeries":
        """Every coefficient evaluated at q = q0."""
        return TruncSeries(self.order, tuple(constant(evaluate(c, q0)) for c in self.coeffs))

    def degree(self) -> int:
        """Index of the last nonzero coefficient, -1 for the zero series."""
        for k in range(self.order, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def as_polynomial(self) -> RatFuncQX:
        """The kept terms as an element of Q(q)(x)."""
        total = QXField.zero
        for k, c in enumerate(self.coeffs):
            if c:
                total += lift(c) * x ** k
        return total

    def to_list(self) -> List[str]:
        return [format_ratfunc(c) for c in self.coeffs]


def tsallis_series(N: int) -> TruncSeries:
    """
    Series of E_q from the differential equation (1+(q-1)x)E' = E, E(0) = 1.

    Matching coefficients gives c_(k+1) = c_k (1-k(q-1))/(k+1).
    """
    if N < 1:
        raise PreconditionError(f"order must be at least 1, got {N}")
    coeffs = [QField.one]
    for k in range(N):
        coeffs.append(coeffs[-1] * (1 - k * (q - 1)) / (k + 1))
    return TruncSeries(N, tuple(coeffs))


def tsallis_binomial(N: int) -> TruncSeries:
    """Series of E_q from the binomial expansion: c_k = binom(1/(q-1), k) (q-1)^k."""
    if N < 1:
        raise PreconditionError(f"order must be at least 1, got {N}")
    alpha = 1 / (q - 1)
    coeffs = []
    binom = QField.one
    for k in range(N + 1):
        coeffs.append(binom * (q - 1) ** k)
        binom = binom * (alpha - k) / (k + 1)
    return TruncSeries(N, tuple(coeffs))


def ode_residual(E: TruncSeries, q0: Optional[Union[int, Fraction]] = None) -> TruncSeries:
    """
    (1+(q-1)x)E' - E, truncated to order N-1.

    Args:
        E: Series of order N
        q0: Optional rational value used for q in the coefficient 1+(q-1)x
    """
    slope = q - 1 if q0 is None else constant(Fraction(q0) - 1)
    order = E.order - 1
    linear = TruncSeries.of([QField.one, slope], order)
    return linear * E.derivative() - E.truncate(order)


def exponential_series(N: int) -> TruncSeries:
    """The classical exponential, coefficients 1/k!."""
    return TruncSeries.of([Fraction(1, factorial(k)) for k in range(N + 1)])


def series_suite(order: int = 50) -> VerifyReport:
    """
    Tsallis exponential checks.

    Args:
        order: Order of the series the differential equation is checked on

    Returns:
        VerifyReport for the "series" suite
    """
    recorder = CheckRecorder("series")
    E = tsallis_series(order)

    recorder.equal("c_0 = 1", E[0], QField.one)
    recorder.equal("c_1 = 1", E[1], QField.one)
    recorder.equal("c_2 = (2-q)/2", E[2], (2 - q) / 2)

    residual = ode_residual(E)
    recorder.record(f"(1+(q-1)x)E' = E through order {order - 1}", residual.is_zero(),
                    f"first nonzero residual coefficient {render(residual[residual.degree()])}")

    depth = max(order, 60)

    def agreement() -> Tuple[bool, str]:
        recurrence, binomial = tsallis_series(depth), tsallis_binomial(depth)
        for k in range(depth + 1):
            if recurrence[k] != binomial[k]:
                return False, f"k={k}: {render(recurrence[k])} vs {render(binomial[k])}"
        return True, ""

    recorder.check(f"recurrence and binomial coefficients agree through k={depth}", agreement)

    classical = E.specialize(1)
    recorder.record("q=1 gives 1/k!", classical == exponential_series(order))
    recorder.record("constant series 1 is not a solution", not ode_residual(TruncSeries.of([1], order)).is_zero())
    recorder.record("1/k! solves f' = f at q=1", ode_residual(exponential_series(order), q0=1).is_zero())

    for m in range(1, 7):
        q0 = 1 + Fraction(1, m)
        special = E.specialize(q0)
        expected = TruncSeries.of([Fraction(comb(m, k), m ** k) for k in range(m + 1)], order)
        recorder.record(f"q=1+1/{m}: series is the polynomial (1+x/{m})^{m}", special == expected,
                        f"degree {special.degree()}")

        poly = special.as_polynomial()
        q_const = constant(q0, QXField)
        functional = compose_x(poly, q_const * x + 1) == compose_x(poly, QXField.one) * poly
        recorder.record(f"q=1+1/{m}: truncated series satisfies E(qx+1) = E(1)E(x)", functional)

    logger.debug("series suite checked order %d", order)
    return recorder.finish()
