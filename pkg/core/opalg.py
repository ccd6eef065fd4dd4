"""
Operator Algebra Module

First-order operators m(x) + v(x)∂ over Q(q)(x): brackets, conjugation by
precomposition, the generators D_n and the operator-level identities they
satisfy.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
import logging
import random
from typing import Dict, List, Optional, Tuple, Union

from sympy.polys.fields import FracElement

from .errors import PreconditionError
from .moebius import G_Q, IDENTITY, S_Q, T_Q, ProjMap, g_function, random_ratfunc
from .report import CheckRecorder, VerifyReport, render
from .rings import (
    QField,
    QXField,
    RatFuncQ,
    RatFuncQX,
    compose_x,
    constant,
    d_dx,
    format_ratfunc,
    lift,
    q,
    qx,
    substitute_qx,
    x,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, FracElement]


def as_function(value: Scalar) -> RatFuncQX:
    """Coerce ints, rationals and elements of Q(q) into Q(q)(x)."""
    if isinstance(value, FracElement):
        return value if value.field == QXField else lift(value)
    return constant(value, QXField)


@dataclass(frozen=True)
class FirstOrderOp:
    """f -> mult*f + vec*f'."""

    mult: RatFuncQX
    vec: RatFuncQX

    @classmethod
    def of(cls, mult: Scalar = 0, vec: Scalar = 0) -> "FirstOrderOp":
        return cls(as_function(mult), as_function(vec))

    def __call__(self, f: Scalar) -> RatFuncQX:
        f = as_function(f)
        return self.mult * f + self.vec * d_dx(f)

    def __add__(self, other: "FirstOrderOp") -> "FirstOrderOp":
        return FirstOrderOp(self.mult + other.mult, self.vec + other.vec)

    def __sub__(self, other: "FirstOrderOp") -> "FirstOrderOp":
        return FirstOrderOp(self.mult - other.mult, self.vec - other.vec)

    def __neg__(self) -> "FirstOrderOp":
        return FirstOrderOp(-self.mult, -self.vec)

    def scaled(self, factor: Scalar) -> "FirstOrderOp":
        """Left multiplication by a function of (q, x)."""
        factor = as_function(factor)
        return FirstOrderOp(factor * self.mult, factor * self.vec)

    def is_zero(self) -> bool:
        return not self.mult and not self.vec

    @property
    def is_vector_field(self) -> bool:
        return not self.mult

    def with_q(self, image: Scalar) -> "FirstOrderOp":
        """Replace q by ``image`` in both parts."""
        image = as_function(image)
        return FirstOrderOp(substitute_qx(self.mult, image), substitute_qx(self.vec, image))

    def at_q(self, q0: Union[int, Fraction]) -> "FirstOrderOp":
        return self.with_q(constant(q0, QXField))

    def to_dict(self) -> Dict[str, str]:
        return {'mult': format_ratfunc(self.mult), 'vec': format_ratfunc(self.vec)}

    def __str__(self) -> str:
        if not self.mult:
            return f"({format_ratfunc(self.vec)})∂"
        return f"{format_ratfunc(self.mult)} + ({format_ratfunc(self.vec)})∂"


def vector_field(v: Scalar) -> FirstOrderOp:
    return FirstOrderOp.of(0, v)


def multiplication(m: Scalar) -> FirstOrderOp:
    return FirstOrderOp.of(m, 0)


PARTIAL = vector_field(1)
ONE = multiplication(1)


def bracket(A: FirstOrderOp, B: FirstOrderOp) -> FirstOrderOp:
    """[A, B] = (v1 m2' - v2 m1') + (v1 v2' - v2 v1')∂."""
    return FirstOrderOp(
        A.vec * d_dx(B.mult) - B.vec * d_dx(A.mult),
        A.vec * d_dx(B.vec) - B.vec * d_dx(A.vec),
    )


def conjugate_by(A: FirstOrderOp, phi: ProjMap) -> FirstOrderOp:
    """
    C_phi ∘ A ∘ C_phi^-1 where C_phi f = f∘phi.

    Args:
        A: Operator
        phi: Invertible Moebius map

    Returns:
        (m∘phi) + ((v∘phi)/phi')∂
    """
    if not phi.det():
        raise PreconditionError(f"{phi} is not invertible")
    fn = phi.as_function()
    return FirstOrderOp(compose_x(A.mult, fn), compose_x(A.vec, fn) / d_dx(fn))


@lru_cache(maxsize=None)
def generator(n: int) -> FirstOrderOp:
    """
    D_n: D_-1 = (1+(q-1)x)∂, D_0 = (1+(q-1)x)(1+(x-1)q)∂, D_1 = (1+(x-1)q)x∂,
    D_n = g_q D_(n-1) for n > 1 and D_-n = (q/g_q) D_(-n+1).
    """
    if n == -1:
        return vector_field(1 + (qx - 1) * x)
    if n == 0:
        return vector_field((1 + (qx - 1) * x) * (1 + (x - 1) * qx))
    if n == 1:
        return vector_field((1 + (x - 1) * qx) * x)
    g = g_function()
    if n > 1:
        return generator(n - 1).scaled(g)
    return generator(n + 1).scaled(qx / g)


def classical_generator(n: int) -> FirstOrderOp:
    """l_n = x^(n+1)∂."""
    return vector_field(x ** (n + 1) if n >= -1 else 1 / x ** (-n - 1))


def in_basis(coefficients: Dict[int, Scalar]) -> FirstOrderOp:
    """Sum of c_k D_k."""
    total = FirstOrderOp.of()
    for k, c in sorted(coefficients.items()):
        total = total + generator(k).scaled(c)
    return total


def d_hat_0() -> FirstOrderOp:
    return bracket(generator(-1), generator(1))


def eigencheck(A: FirstOrderOp, f: Scalar, alpha: Scalar,
               at_q: Optional[Union[int, Fraction]] = None) -> bool:
    """
    True iff A(f) = alpha*f exactly.

    Args:
        A: Operator
        f: Candidate eigenfunction
        alpha: Candidate eigenvalue
        at_q: Optional rational value of q to specialize everything to
    """
    f, alpha = as_function(f), as_function(alpha)
    if at_q is not None:
        image = constant(at_q, QXField)
        A = A.with_q(image)
        f, alpha = substitute_qx(f, image), substitute_qx(alpha, image)
    return A(f) == alpha * f


@dataclass(frozen=True)
class AntiCommFamily:
    """p(x) = p0 + p1 x - q p0 x^2."""

    p0: RatFuncQ
    p1: RatFuncQ

    def polynomial(self) -> RatFuncQX:
        p0, p1 = as_function(self.p0), as_function(self.p1)
        return p0 + p1 * x - qx * p0 * x ** 2

    def operator(self) -> FirstOrderOp:
        return vector_field(self.polynomial())


def anticommuting_family_check(fam: AntiCommFamily) -> bool:
    """p(x)∂ anti-commutes with S_q."""
    op = fam.operator()
    return conjugate_by(op, S_Q) == -op


def discriminant_identity() -> bool:
    """(-1+3q-q^2)^2 + 4q(1-q)^2 = (q^2-q+1)^2."""
    return (-1 + 3 * q - q ** 2) ** 2 + 4 * q * (1 - q) ** 2 == (q ** 2 - q + 1) ** 2


def reparametrize(A: FirstOrderOp, phi: ProjMap) -> FirstOrderOp:
    """
    Express the vector field A in the coordinate xi = phi(x).

    The result is written in the variable x standing for xi:
    v~(xi) = (v phi') ∘ phi^-1.

    Raises:
        PreconditionError: if A has a multiplication part
    """
    if not A.is_vector_field:
        raise PreconditionError("only vector fields can be reparametrized")
    fn = phi.as_function()
    inverse = phi.adjugate().as_function()
    return vector_field(compose_x(A.vec * d_dx(fn), inverse))


def jacobi_residual(A: FirstOrderOp, B: FirstOrderOp, C: FirstOrderOp) -> FirstOrderOp:
    return (bracket(bracket(A, B), C) + bracket(bracket(B, C), A)
            + bracket(bracket(C, A), B))


def _op_check(recorder: CheckRecorder, name: str, actual: FirstOrderOp,
              expected: FirstOrderOp) -> bool:
    ok = actual == expected
    witness = "" if ok else f"difference {actual - expected}"
    return recorder.record(name, ok, witness)


def gq_action_suite(N: int = 8) -> VerifyReport:
    """
    How g_q interacts with the generators.

    Args:
        N: Largest power r of g_q in the g_q^r D_0 expansion

    Returns:
        VerifyReport for the "gq-action" checks
    """
    if N < 2:
        raise PreconditionError(f"window must be at least 2, got {N}")
    recorder = CheckRecorder("gq-action")
    g = g_function()
    R = q ** 2 - q + 1
    Dm1, D0, D1 = generator(-1), generator(0), generator(1)

    recorder.equal("D_-1(g_q) = q+(1-q)g_q", Dm1(g), qx + (1 - qx) * g)
    recorder.equal("D_0(g_q) = (q^2-q+1)g_q", D0(g), as_function(R) * g)
    recorder.equal("D_1(g_q) = (q-1)g_q+g_q^2", D1(g), (qx - 1) * g + g ** 2)

    _op_check(recorder, "g_q D_0 = (1-q)D_0+(q^2-q+1)D_1", D0.scaled(g), in_basis({0: 1 - q, 1: R}))
    _op_check(recorder, "g_q D_-1 = D_0+(1-q)D_1", Dm1.scaled(g), in_basis({0: 1, 1: 1 - q}))
    _op_check(recorder, "(q/g_q) D_0 = (q-1)D_0+(q^2-q+1)D_-1",
              D0.scaled(qx / g), in_basis({0: q - 1, -1: R}))
    _op_check(recorder, "(q/g_q) D_1 = D_0+(q-1)D_-1", D1.scaled(qx / g), in_basis({0: 1, -1: q - 1}))

    for r in range(1, N + 1):
        expected = {r - k: R * (1 - q) ** k for k in range(r)}
        expected[0] = expected.get(0, 0) + (1 - q) ** r
        _op_check(recorder, f"g_q^{r} D_0 expansion", D0.scaled(g ** r), in_basis(expected))

    def ratio_rule() -> Tuple[bool, str]:
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                Di, Dj = generator(i), generator(j)
                if Dj.scaled(Di(g) / Dj(g)) != Di:
                    return False, f"D_{i} != (D_{i}(g_q)/D_{j}(g_q)) D_{j}"
        return True, ""

    recorder.check("ratio rule D_i = (D_i(g_q)/D_j(g_q)) D_j", ratio_rule)
    return recorder.finish()


def _anticommuting_checks(recorder: CheckRecorder, rng: random.Random) -> None:
    recorder.record("x∂ anti-commutes with S_q",
                    anticommuting_family_check(AntiCommFamily(QField.zero, QField.one)))
    recorder.record("(1-qx^2)∂ anti-commutes with S_q",
                    anticommuting_family_check(AntiCommFamily(QField.one, QField.zero)))
    d0_family = AntiCommFamily(1 - q, -1 + 3 * q - q ** 2)
    recorder.record("D_0 belongs to the anti-commuting family",
                    anticommuting_family_check(d0_family) and d0_family.operator() == generator(0))

    def random_family() -> Tuple[bool, str]:
        for _ in range(20):
            fam = AntiCommFamily(random_ratfunc(rng, 1, QField), random_ratfunc(rng, 1, QField))
            if not anticommuting_family_check(fam):
                return False, f"p0={render(fam.p0)}, p1={render(fam.p1)}"
        return True, ""

    recorder.check("20 random members anti-commute with S_q", random_family)


def _reparametrization_checks(recorder: CheckRecorder) -> None:
    R = q ** 2 - q + 1
    inv_q = 1 / qx
    _op_check(recorder, "D_0 in the coordinate g_q is (q^2-q+1)ξ∂",
              reparametrize(generator(0), G_Q), vector_field(as_function(R) * x))
    _op_check(recorder, "D_-1 in the coordinate g_q is q D_-1(1/q, ξ)",
              reparametrize(generator(-1), G_Q), generator(-1).with_q(inv_q).scaled(qx))
    _op_check(recorder, "D_1 in the coordinate g_q is q D_1(1/q, ξ)",
              reparametrize(generator(1), G_Q), generator(1).with_q(inv_q).scaled(qx))
    _op_check(recorder, "∂ in the identity coordinate", reparametrize(PARTIAL, IDENTITY), PARTIAL)


def _functional_consistency(recorder: CheckRecorder, rng: random.Random) -> None:
    def consistent() -> Tuple[bool, str]:
        for D in (generator(-1), generator(0), generator(1)):
            for phi in (S_Q, T_Q, G_Q):
                conj = conjugate_by(D, phi)
                fn, inverse = phi.as_function(), phi.adjugate().as_function()
                for _ in range(10):
                    f = random_ratfunc(rng, 1)
                    direct = compose_x(D(compose_x(f, inverse)), fn)
                    if conj(f) != direct:
                        return False, f"D={D}, phi={phi}, f={render(f)}"
        return True, ""

    recorder.check("conjugation agrees with C_phi D C_phi^-1 on test functions", consistent)


def _tsallis_polynomials(recorder: CheckRecorder) -> None:
    for m in range(1, 7):
        q0 = constant(Fraction(m + 1, m), QXField)
        E = (1 + x / m) ** m
        ode = (1 + (q0 - 1) * x) * d_dx(E) == E
        functional = compose_x(E, q0 * x + 1) == compose_x(E, QXField.one) * E
        recorder.record(f"(1+x/{m})^{m} solves the D_-1 eigen-equation at q=1+1/{m}", ode)
        recorder.record(f"(1+x/{m})^{m} satisfies E(qx+1) = E(1)E(x) at q=1+1/{m}", functional)


def opalg_suite(seed: int = 0, window: int = 8) -> VerifyReport:
    """
    All operator-level identities.

    Args:
        seed: Seed of the randomized checks
        window: Largest power used in the g_q^r D_0 expansion

    Returns:
        VerifyReport for the "opalg" suite
    """
    recorder = CheckRecorder("opalg")
    rng = random.Random(seed)
    Dm1, D0, D1 = generator(-1), generator(0), generator(1)
    g = g_function()
    R = q ** 2 - q + 1

    _op_check(recorder, "[D_0, D_-1] = -q(1+(q-1)x)^2∂", bracket(D0, Dm1),
              vector_field(-qx * (1 + (qx - 1) * x) ** 2))
    _op_check(recorder, "[D_-1, D_1] = (1-q+2qx+q(q-1)x^2)∂", bracket(Dm1, D1),
              vector_field(1 - qx + 2 * qx * x + qx * (qx - 1) * x ** 2))
    recorder.record("[A, A] = 0", bracket(D0, D0).is_zero() and bracket(ONE, ONE).is_zero())

    _op_check(recorder, "D_-1 commutes with T_q", conjugate_by(Dm1, T_Q), Dm1)
    _op_check(recorder, "S_q D_-1 S_q = D_1", conjugate_by(Dm1, S_Q), D1)
    _op_check(recorder, "D_0 anti-commutes with S_q", conjugate_by(D0, S_Q), -D0)
    _op_check(recorder, "conjugating twice by S_q is the identity",
              conjugate_by(conjugate_by(D1, S_Q), S_Q), D1)
    for k in range(-3, 4):
        _op_check(recorder, f"S_q D_{k} S_q = (-1)^{k - 1} D_{-k}", conjugate_by(generator(k), S_Q),
                  generator(-k).scaled((-1) ** ((k - 1) % 2)))

    recorder.record("g_q is an eigenfunction of D_0 for q^2-q+1", eigencheck(D0, g, R))
    recorder.record("1/g_q is an eigenfunction of D_0 for -(q^2-q+1)", eigencheck(D0, 1 / g, -R))
    recorder.record("x is not an eigenfunction of D_0 at q=2", not eigencheck(D0, x, R, at_q=2))

    recorder.extend(gq_action_suite(window))

    _anticommuting_checks(recorder, rng)
    recorder.record("discriminant (-1+3q-q^2)^2+4q(1-q)^2 = (q^2-q+1)^2", discriminant_identity())
    _reparametrization_checks(recorder)

    D_hat = d_hat_0()
    _op_check(recorder, "[D_-1, D_1] anti-commutes with S_q", conjugate_by(D_hat, S_Q), -D_hat)
    _op_check(recorder, "[D^_0, D_1] = (q^2+1)D_1+(q-1)^2 D_-1", bracket(D_hat, D1),
              in_basis({1: q ** 2 + 1, -1: (q - 1) ** 2}))
    _op_check(recorder, "[D^_0, D_-1] = -(q^2+1)D_-1-(q-1)^2 D_1", bracket(D_hat, Dm1),
              in_basis({-1: -(q ** 2 + 1), 1: -(q - 1) ** 2}))

    for n in range(-3, 4):
        _op_check(recorder, f"D_{n} at q=1 is x^{n + 1}∂", generator(n).at_q(1), classical_generator(n))

    def jacobi() -> Tuple[bool, str]:
        family: List[Tuple[str, FirstOrderOp]] = [(f"D_{k}", generator(k)) for k in range(-3, 4)]
        family += [("g_q", multiplication(g)), ("1", ONE)]
        count = 0
        for (na, A), (nb, B), (nc, C) in combinations(family, 3):
            residual = jacobi_residual(A, B, C)
            count += 1
            if not residual.is_zero():
                return False, f"({na}, {nb}, {nc}) residual {residual}"
        logger.debug("operator Jacobi checked on %d triples", count)
        return True, ""

    recorder.check("Jacobi identity on D_-3..D_3, g_q, 1", jacobi)
    _functional_consistency(recorder, rng)
    _tsallis_polynomials(recorder)
    return recorder.finish()
