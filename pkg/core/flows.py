"""
Flows Module

Numeric flows of the deformed vector fields D_-1, D_0, D_1 as Moebius
transformations, their first-order jets at q = 1 through dual numbers, the
classical Witt flows and the hyperbolic geometry of S_q and g_q.
"""

from dataclasses import dataclass
from math import factorial, inf, sqrt
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import FlowBranchError, PreconditionError
from .moebius import G_Q, S_Q, SIGMA2, T_Q, ProjMap
from .report import CheckRecorder, VerifyReport
from .rings import evaluate_numeric

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]

POINT_AT_INFINITY = complex(inf, 0.0)
SMALL_ARGUMENT = 1e-2


class CDual:
    """value + deriv·ε with ε^2 = 0, over the complex numbers."""

    __slots__ = ("value", "deriv")

    def __init__(self, value: Number = 0j, deriv: Number = 0j):
        self.value = complex(value)
        self.deriv = complex(deriv)

    @staticmethod
    def _coerce(other: Union["CDual", Number]) -> "CDual":
        return other if isinstance(other, CDual) else CDual(other, 0j)

    def __add__(self, other: Union["CDual", Number]) -> "CDual":
        o = CDual._coerce(other)
        return CDual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __sub__(self, other: Union["CDual", Number]) -> "CDual":
        o = CDual._coerce(other)
        return CDual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other: Union["CDual", Number]) -> "CDual":
        return CDual._coerce(other) - self

    def __mul__(self, other: Union["CDual", Number]) -> "CDual":
        o = CDual._coerce(other)
        return CDual(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["CDual", Number]) -> "CDual":
        o = CDual._coerce(other)
        if o.value == 0:
            raise ZeroDivisionError("dual division by a number with zero value part")
        inv = 1 / o.value
        return CDual(self.value * inv, (self.deriv * o.value - self.value * o.deriv) * inv * inv)

    def __rtruediv__(self, other: Union["CDual", Number]) -> "CDual":
        return CDual._coerce(other) / self

    def __neg__(self) -> "CDual":
        return CDual(-self.value, -self.deriv)

    def __pow__(self, n: int) -> "CDual":
        if n == 0:
            return CDual(1)
        return CDual(self.value ** n, n * self.value ** (n - 1) * self.deriv)

    def exp(self) -> "CDual":
        e = complex(np.exp(self.value))
        return CDual(e, e * self.deriv)

    def __repr__(self) -> str:
        return f"CDual({self.value}, {self.deriv})"


Scalar = Union[complex, CDual]


def exp(z: Scalar) -> Scalar:
    return z.exp() if isinstance(z, CDual) else complex(np.exp(z))


def _phi1(z: complex) -> complex:
    if abs(z) < SMALL_ARGUMENT:
        return sum(z ** k / factorial(k + 1) for k in range(7))
    return complex((np.exp(z) - 1) / z)


def _phi1_prime(z: complex) -> complex:
    if abs(z) < SMALL_ARGUMENT:
        return sum(k * z ** (k - 1) / factorial(k + 1) for k in range(1, 8))
    e = np.exp(z)
    return complex((z * e - e + 1) / (z * z))


def phi1(z: Scalar) -> Scalar:
    """(e^z - 1)/z, analytic through z = 0."""
    if isinstance(z, CDual):
        return CDual(_phi1(z.value), _phi1_prime(z.value) * z.deriv)
    return _phi1(complex(z))


def _dual(value: Scalar) -> CDual:
    return value if isinstance(value, CDual) else CDual(value)


@dataclass(frozen=True)
class NumMobius:
    """Numeric 2x2 matrix [[a, b], [c, d]] with complex or dual entries."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def entries(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return self.a, self.b, self.c, self.d

    def __matmul__(self, other: "NumMobius") -> "NumMobius":
        return NumMobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Scalar:
        return self.a + self.d

    def apply(self, z: Scalar) -> Scalar:
        """z -> (az + b)/(cz + d); a vanishing denominator gives the point at infinity."""
        den = self.c * z + self.d
        if _dual(den).value == 0:
            return POINT_AT_INFINITY
        return (self.a * z + self.b) / den

    def as_array(self) -> np.ndarray:
        return np.array([[complex(_dual(self.a).value), complex(_dual(self.b).value)],
                         [complex(_dual(self.c).value), complex(_dual(self.d).value)]])

    def to_dict(self) -> Dict[str, List[List[List[float]]]]:
        rows = self.as_array()
        return {'matrix': [[[z.real, z.imag] for z in row] for row in rows]}


def numeric_matrix(A: ProjMap, q: Scalar) -> NumMobius:
    """Entries of an exact matrix over Q(q) evaluated at a complex or dual q."""
    return NumMobius(*(evaluate_numeric(e, q) for e in A.entries()))


def projective_distance(A: NumMobius, B: NumMobius) -> float:
    """
    Distance of two matrices up to scale.

    Both are divided by their entry at the position where A is largest, then
    the largest entrywise difference is returned (value and dual parts added).
    """
    a = [_dual(e) for e in A.entries()]
    b = [_dual(e) for e in B.entries()]
    index = int(np.argmax([abs(e.value) for e in a]))
    if abs(b[index].value) < 1e-300:
        return inf
    na = [e / a[index] for e in a]
    nb = [e / b[index] for e in b]
    return max(abs(u.value - v.value) + abs(u.deriv - v.deriv) for u, v in zip(na, nb))


def flow_dm1_matrix(t: float, q: Scalar) -> NumMobius:
    """
    Flow of D_-1 = (1+(q-1)x)∂: x -> e^((q-1)t) x + t phi1((q-1)t).

    This is -1/(q-1) + (x + 1/(q-1)) e^((q-1)t) written so that q = 1 gives x + t.
    """
    u = (q - 1) * t
    return NumMobius(exp(u), t * phi1(u), 0j, 1 + 0j)


def flow_dm1(t: float, q: Scalar, x: Scalar) -> Scalar:
    return flow_dm1_matrix(t, q).apply(x)


def flow_dm1_taylor_matrix(t: float, q: Scalar) -> NumMobius:
    """
    D_-1 flow with e^((q-1)t) replaced by its first-order jet in q-1.

    Both entries of exp(tY) for the generator matrix Y = [[q-1, 1], [0, 0]]
    are series in (q-1)t, so the replacement is the order-1 truncation
    I + tY of the exponential: x -> (1-t+qt)x + t, which is T_q at t = 1.
    """
    return exp_series(generator_matrix('dm1', q), t, order=1)


def _s_matrix(q: Scalar) -> NumMobius:
    return numeric_matrix(S_Q, q)


def flow_d1_matrix(t: float, q: Scalar) -> NumMobius:
    """Flow of D_1 = S_q D_-1 S_q."""
    S = _s_matrix(q)
    return S @ flow_dm1_matrix(t, q) @ S


def flow_d1(t: float, q: Scalar, x: Scalar) -> Scalar:
    return flow_d1_matrix(t, q).apply(x)


def flow_d1_taylor_matrix(t: float, q: Scalar) -> NumMobius:
    S = _s_matrix(q)
    return S @ flow_dm1_taylor_matrix(t, q) @ S


def flow_d0_matrix(t: float, q: Scalar) -> NumMobius:
    """
    Flow of D_0 from the Riccati solution.

    [[q e^(qt) + (q-1)^2 e^(-(q-1)^2 t), (1-q)(e^(qt) - e^(-(q-1)^2 t))],
     [q(1-q)(e^(qt) - e^(-(q-1)^2 t)), (1-q)^2 e^(qt) + q e^(-(q-1)^2 t)]]
    """
    eps2 = (q - 1) * (q - 1)
    grow = exp(q * t)
    decay = exp(-eps2 * t)
    diff = grow - decay
    return NumMobius(
        q * grow + eps2 * decay,
        (1 - q) * diff,
        q * (1 - q) * diff,
        eps2 * grow + q * decay,
    )


def flow_d0(t: float, q: Scalar, x: Scalar) -> Scalar:
    return flow_d0_matrix(t, q).apply(x)


FLOWS: Dict[str, Callable[[float, Scalar], NumMobius]] = {
    'dm1': flow_dm1_matrix,
    'd0': flow_d0_matrix,
    'd1': flow_d1_matrix,
}

VECTOR_FIELDS: Dict[str, Callable[[Scalar, Scalar], Scalar]] = {
    'dm1': lambda q, x: 1 + (q - 1) * x,
    'd0': lambda q, x: (1 + (q - 1) * x) * (1 + (x - 1) * q),
    'd1': lambda q, x: (1 + (x - 1) * q) * x,
}


def generator_matrix(name: str, q: Scalar) -> NumMobius:
    """
    Infinitesimal Moebius matrix [[b, a], [-c, 0]] of a vector field a + bx + cx^2.

    The coefficients are read off the field's values at x = 0, 1, -1, so
    (I + tY)(x) = x + t v(x) to first order in t.
    """
    field = VECTOR_FIELDS[name]
    at_zero, at_one, at_minus_one = (field(q, p) for p in (0.0, 1.0, -1.0))
    a = at_zero
    b = (at_one - at_minus_one) / 2
    c = (at_one + at_minus_one) / 2 - a
    return NumMobius(b, a, -c, 0j)


def exp_series(Y: NumMobius, t: float, order: int) -> NumMobius:
    """Truncated exponential: the sum of (tY)^k/k! for k <= order."""
    term = NumMobius(1 + 0j, 0j, 0j, 1 + 0j)
    total = term
    for k in range(1, order + 1):
        term = NumMobius(*(e * (t / k) for e in (term @ Y).entries()))
        total = NumMobius(*(u + v for u, v in zip(total.entries(), term.entries())))
    return total


def w_q_matrix(q: Scalar) -> NumMobius:
    """[[e(1-2q), (e-1)(q-1)], [(e-1)(q-1), -q]]."""
    return w_q_t_matrix(1.0, q)


def w_q_t_matrix(t: float, q: Scalar) -> NumMobius:
    """[[e^t(t-qt-q), (e^t-1)(q-1)], [(e^t-1)(q-1), -q]]."""
    et = complex(np.exp(t))
    return NumMobius(et * (t - q * t - q), (et - 1) * (q - 1), (et - 1) * (q - 1), -q)


def dilation_matrix(t: float) -> NumMobius:
    return NumMobius(complex(np.exp(t / 2)), 0j, 0j, complex(np.exp(-t / 2)))


def classical_witt_flow(n: int, t: float, x: complex) -> complex:
    """
    Flow of x^n ∂: x / (1-(n-1)t x^(n-1))^(1/(n-1)), and x e^t for n = 1.

    The principal branch is continuous along s in [0, t] exactly when the base
    never reaches the non-positive real axis.

    Raises:
        FlowBranchError: if the path of the base meets the branch cut or zero
        PreconditionError: for x = 0 when n < 1
    """
    x = complex(x)
    if n == 1:
        return x * complex(np.exp(t))
    if n == 0:
        return x + t
    if x == 0:
        if n < 1:
            raise PreconditionError(f"x^{n}∂ is singular at 0")
        return x
    base = 1 - (n - 1) * t * x ** (n - 1)
    if n == 2:
        if base == 0:
            raise FlowBranchError(f"flow of x^2∂ from {x} blows up at t = {t}")
        return x / base
    if base.imag == 0 and base.real <= 0:
        raise FlowBranchError(f"flow of x^{n}∂ from {x} crosses the branch cut before t = {t}")
    return x / complex(np.power(base, 1 / (n - 1)))


def finite_difference(path: Callable[[float], complex], h: float = 1e-6) -> complex:
    """Central difference of a path at t = 0."""
    return (path(h) - path(-h)) / (2 * h)


def normalized_trace(q: float) -> float:
    """Trace of g_q over the square root of its determinant."""
    return (q + 1) / sqrt(q * q - q + 1)


def _relative_error(actual: complex, expected: complex) -> float:
    return abs(actual - expected) / max(1.0, abs(expected))


def _upper_half_plane(rng: np.random.Generator, count: int) -> np.ndarray:
    return rng.uniform(-2, 2, count) + 1j * rng.uniform(0.1, 2, count)


def _q_samples(rng: np.random.Generator, count: int) -> List[float]:
    """Half of the samples from (0, 1), half from (1, 4)."""
    low = rng.uniform(0.05, 0.95, count - count // 2)
    high = rng.uniform(1.05, 3.95, count // 2)
    return [float(v) for v in np.concatenate([low, high])]


def geometry_suite(q_samples: Sequence[float], tol_fixed: float = 1e-12,
                   seed: int = 0) -> VerifyReport:
    """
    Fixed points of S_q and g_q, ellipticity of g_q, and preservation of the
    upper half-plane by the three flows.

    Args:
        q_samples: Values of q in (0, 1) or (1, 4)
        tol_fixed: Tolerance for the fixed point equations
        seed: Seed for the upper half-plane samples
    """
    recorder = CheckRecorder("geometry")
    rng = np.random.default_rng(seed)
    omega = (1 + 1j * sqrt(3)) / 2

    def fixed_points() -> Tuple[bool, str]:
        for q in q_samples:
            z = 1j / sqrt(q)
            moved = abs(numeric_matrix(S_Q, q).apply(z) - z)
            if moved >= tol_fixed:
                return False, f"q={q}: S_q moves i q^(-1/2) by {moved:.3e}"
            moved = abs(numeric_matrix(G_Q, q).apply(omega) - omega)
            if moved >= tol_fixed:
                return False, f"q={q}: g_q moves (1+i√3)/2 by {moved:.3e}"
        return True, ""

    def elliptic() -> Tuple[bool, str]:
        for q in q_samples:
            trace = normalized_trace(q)
            if not trace < 2:
                return False, f"q={q}: normalized trace {trace}"
        return True, ""

    def half_plane() -> Tuple[bool, str]:
        points = _upper_half_plane(rng, 20)
        for q in q_samples:
            t = float(rng.uniform(-1, 1))
            for name, flow in FLOWS.items():
                M = flow(t, q)
                for z in points:
                    image = M.apply(complex(z))
                    if not image.imag > 0:
                        return False, f"{name} at q={q}, t={t} sends {z} to {image}"
        return True, ""

    recorder.check(f"S_q fixes i q^(-1/2) and g_q fixes (1+i√3)/2 ({len(q_samples)} values of q)",
                   fixed_points)
    recorder.check("g_q is elliptic: (q+1)/sqrt(q^2-q+1) < 2", elliptic)
    recorder.check("flows preserve the upper half-plane", half_plane)

    s4 = numeric_matrix(S_Q, 4.0).apply(0.5j)
    recorder.record("S_4 fixes i/2", abs(s4 - 0.5j) < tol_fixed, f"S_4(i/2) = {s4}")
    recorder.record("q=1: normalized trace of g_q is 2", abs(normalized_trace(1.0) - 2) < tol_fixed)
    return recorder.finish()


def _group_law(recorder: CheckRecorder, rng: np.random.Generator, samples: int,
               tol: float) -> None:
    for name in ('dm1', 'd1'):
        flow = FLOWS[name]

        def pointwise(flow=flow) -> Tuple[bool, str]:
            for _ in range(samples):
                s, t = rng.uniform(-1, 1, 2)
                q = float(rng.uniform(0.2, 3.0))
                z = complex(_upper_half_plane(rng, 1)[0])
                direct = flow(s + t, q).apply(z)
                composed = flow(s, q).apply(flow(t, q).apply(z))
                if _relative_error(composed, direct) >= tol:
                    return False, f"s={s}, t={t}, q={q}, x={z}: {direct} vs {composed}"
            return True, ""

        recorder.check(f"group law of the {name} flow ({samples} samples)", pointwise)

    def projective() -> Tuple[bool, str]:
        for _ in range(samples):
            s, t = rng.uniform(-1, 1, 2)
            q = float(rng.uniform(0.2, 3.0))
            distance = projective_distance(flow_d0_matrix(s + t, q),
                                           flow_d0_matrix(s, q) @ flow_d0_matrix(t, q))
            if distance >= tol:
                return False, f"s={s}, t={t}, q={q}: distance {distance:.3e}"
        return True, ""

    recorder.check(f"group law of the d0 flow matrix ({samples} samples)", projective)


def _generators(recorder: CheckRecorder, rng: np.random.Generator, samples: int,
                tol: float) -> None:
    for name, flow in FLOWS.items():
        field = VECTOR_FIELDS[name]

        def consistent(flow=flow, field=field) -> Tuple[bool, str]:
            for _ in range(samples):
                q = float(rng.uniform(0.2, 3.0))
                z = complex(_upper_half_plane(rng, 1)[0])
                derivative = finite_difference(lambda t: flow(t, q).apply(z))
                if _relative_error(derivative, field(q, z)) >= tol:
                    return False, f"q={q}, x={z}: {derivative} vs {field(q, z)}"
            return True, ""

        recorder.check(f"{name} flow has the right generator ({samples} points)", consistent)

    def d1_example() -> Tuple[bool, str]:
        z = 1 + 1j
        derivative = finite_difference(lambda t: flow_d1(t, 2.0, z))
        return _relative_error(derivative, (1 + (z - 1) * 2) * z) < tol, f"{derivative}"

    recorder.check("D_1 generator at q=2, x=1+i", d1_example)


def _taylor(recorder: CheckRecorder, rng: np.random.Generator, tol: float) -> None:
    q = CDual(1, 1)

    def close(name: str, actual: NumMobius, expected: NumMobius) -> None:
        distance = projective_distance(actual, expected)
        recorder.record(name, distance < tol, f"distance {distance:.3e}")

    close("Taylor form of the D_-1 flow at t=1 is T_q", flow_dm1_taylor_matrix(1.0, q),
          numeric_matrix(T_Q, q))
    close("Taylor form of the D_1 flow at t=1 is S_q T_q S_q", flow_d1_taylor_matrix(1.0, q),
          numeric_matrix(SIGMA2, q))
    close("jet of the D_0 flow at t=1 is W_q", flow_d0_matrix(1.0, q), w_q_matrix(q))

    def d0_jets() -> Tuple[bool, str]:
        for t in rng.uniform(-2, 2, 10):
            distance = projective_distance(flow_d0_matrix(float(t), q), w_q_t_matrix(float(t), q))
            if distance >= tol:
                return False, f"t={t}: distance {distance:.3e}"
        return True, ""

    recorder.check("jet of the D_0 flow is W_q^t", d0_jets)

    def dm1_exact_jet() -> Tuple[bool, str]:
        for t in rng.uniform(-2, 2, 10):
            t = float(t)
            expected = NumMobius(CDual(1, t), CDual(t, t * t / 2), 0j, 1 + 0j)
            distance = projective_distance(flow_dm1_matrix(t, q), expected)
            if distance >= tol:
                return False, f"t={t}: distance {distance:.3e}"
        return True, ""

    recorder.check("exact jet of the D_-1 flow is (1+εt)x+t+εt^2/2", dm1_exact_jet)

    def series_matches_flow(name: str) -> Tuple[bool, str]:
        for _ in range(5):
            t, q_value = float(rng.uniform(-0.5, 0.5)), float(rng.uniform(0.5, 2.0))
            series = exp_series(generator_matrix(name, q_value), t, order=40)
            distance = projective_distance(series, FLOWS[name](t, q_value))
            if distance >= tol:
                return False, f"t={t}, q={q_value}: distance {distance:.3e}"
        return True, ""

    for name in FLOWS:
        recorder.check(f"exp(tY) of the {name} generator matrix is its flow",
                       lambda name=name: series_matches_flow(name))

    def dilation() -> Tuple[bool, str]:
        for t in rng.uniform(-2, 2, 10):
            distance = projective_distance(w_q_t_matrix(float(t), 1.0), dilation_matrix(float(t)))
            if distance >= tol:
                return False, f"t={t}: distance {distance:.3e}"
        return True, ""

    recorder.check("W_q^t at q=1 is the dilation diag(e^(t/2), e^(-t/2))", dilation)


def _classical(recorder: CheckRecorder, tol: float) -> None:
    z = 0.5 + 0.5j
    recorder.record("x^0∂ flow at t=1 is x+1", abs(classical_witt_flow(0, 1.0, z) - (z + 1)) < tol)
    recorder.record("x∂ flow is x e^t", abs(classical_witt_flow(1, 0.7, z) - z * np.exp(0.7)) < tol)
    recorder.record("x^2∂ flow is x/(1-tx)", abs(classical_witt_flow(2, 0.7, z) - z / (1 - 0.7 * z)) < tol)
    recorder.record("D_-1 flow at q=1 is the translation x+t",
                    abs(flow_dm1(1.0, 1.0, z) - (z + 1)) < tol)

    for n in (3, 4, -1):
        derivative = finite_difference(lambda t: classical_witt_flow(n, t, z))
        recorder.record(f"x^{n}∂ flow has generator x^{n}", _relative_error(derivative, z ** n) < 1e-6,
                        f"{derivative} vs {z ** n}")

    y = z ** 2
    image = classical_witt_flow(3, 0.3, z) ** 2
    recorder.record("y = x^2 turns the x^3∂ flow into y/(1-2ty)", abs(image - y / (1 - 0.6 * y)) < tol,
                    f"{image}")

    def branch_error() -> Tuple[bool, str]:
        try:
            classical_witt_flow(3, 1.0, 1.0)
        except FlowBranchError:
            return True, ""
        return False, "no error for a path through the branch cut"

    recorder.check("x^3∂ flow from 1 to t=1 is rejected", branch_error)


def flows_suite(seed: int = 0, tol_group: float = 1e-9, tol_generator: float = 1e-6,
                tol_taylor: float = 1e-10, tol_fixed: float = 1e-12,
                samples: Optional[int] = None) -> VerifyReport:
    """
    All numeric checks: group laws, generators, jets, classical flows and geometry.

    Args:
        seed: Seed of numpy's generator for every sample
        tol_group: Group law tolerance
        tol_generator: Finite difference tolerance
        tol_taylor: Tolerance for the first-order jets
        tol_fixed: Tolerance for fixed points
        samples: Number of group law samples (200 by default)

    Returns:
        VerifyReport for the "flows" suite
    """
    recorder = CheckRecorder("flows")
    rng = np.random.default_rng(seed)

    _group_law(recorder, rng, samples or 200, tol_group)
    _generators(recorder, rng, 50, tol_generator)
    _taylor(recorder, rng, tol_taylor)
    _classical(recorder, tol_generator)
    recorder.extend(geometry_suite(_q_samples(rng, 20), tol_fixed, seed))
    return recorder.finish()
