"""
Lie Verification Module

Structure constants of the deformed Witt algebra and the suites that check
them: the sl2 and Witt bracket formulas against the operator realization,
abstract Jacobi sweeps, the Heisenberg algebra, the quotient by (q-1)^2 and
the isomorphism with classical sl2 over Q(sqrt q).
"""

from itertools import combinations_with_replacement
import logging
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .errors import PreconditionError
from .moebius import ProjMap, g_function
from .opalg import (
    ONE,
    PARTIAL,
    FirstOrderOp,
    bracket,
    classical_generator,
    generator,
    in_basis,
    multiplication,
)
from .report import CheckRecorder, VerifyReport, render
from .rings import (
    QField,
    RatFuncQ,
    SField,
    evaluate,
    format_ratfunc,
    mod_square_reduce,
    q,
    qx,
    s,
    to_s_field,
    x,
)

logger = logging.getLogger(__name__)

Combo = Dict[int, RatFuncQ]

R = q ** 2 - q + 1
E = q - 1


def _accumulate(terms: List[Tuple[int, RatFuncQ]]) -> Combo:
    combo: Combo = {}
    for k, c in terms:
        combo[k] = combo.get(k, QField.zero) + c
    return {k: c for k, c in combo.items() if c}


def _negate(combo: Combo) -> Combo:
    return {k: -c for k, c in combo.items()}


def zero_with_positive(n: int) -> Combo:
    """[D_0, D_n] for n >= 1."""
    terms = [(n, n * R)]
    terms += [(n - k, R * (-E) ** k) for k in range(1, n)]
    terms.append((0, (-E) ** n))
    return _accumulate(terms)


def zero_with_negative(n: int) -> Combo:
    """[D_0, D_-n] for n >= 1."""
    terms = [(-n, -n * R)]
    terms += [(-n + k, -R * E ** k) for k in range(1, n)]
    terms.append((0, -E ** n))
    return _accumulate(terms)


def positive_pair(n: int, r: int) -> Combo:
    """[D_n, D_(n+r)] for n, r >= 1."""
    return _accumulate([(2 * n + r, QField.one * r), (2 * n + r - 1, E * r)])


def negative_pair(n: int, r: int) -> Combo:
    """[D_-n, D_(-n-r)] for n, r >= 1."""
    return _accumulate([(-2 * n - r, -QField.one * r), (-2 * n - r + 1, E * r)])


def opposite_pair(n: int) -> Combo:
    """[D_-n, D_n] for n >= 1."""
    scale = q ** (n - 1)
    return _accumulate([
        (0, 2 * n * scale),
        (-1, (2 * n - 1) * scale * E),
        (1, -(2 * n - 1) * scale * E),
    ])


def larger_positive(n: int, r: int) -> Combo:
    """[D_(n+r), D_-n] for n, r >= 1."""
    scale = q ** (n - 1)
    terms = [
        (r + 1, E * scale * (2 * n + r - 1)),
        (r, -(q ** 2 + (2 * n + r - 2) * q + 1) * scale),
    ]
    terms += [(r - k, -scale * R * (-E) ** k) for k in range(1, r)]
    terms.append((0, -(-E) ** r * scale))
    return _accumulate(terms)


def larger_negative(n: int, r: int) -> Combo:
    """[D_n, D_(-n-r)] for n, r >= 1."""
    scale = q ** (n - 1)
    terms = [
        (-r - 1, -E * scale * (2 * n + r - 1)),
        (-r, -(q ** 2 + (2 * n + r - 2) * q + 1) * scale),
    ]
    terms += [(-r + k, -scale * R * E ** k) for k in range(1, r)]
    terms.append((0, -E ** r * scale))
    return _accumulate(terms)


FAMILIES = {
    'zero-positive': "[D_0, D_n]",
    'zero-negative': "[D_0, D_-n]",
    'positive-pair': "[D_n, D_n+r]",
    'negative-pair': "[D_-n, D_-n-r]",
    'opposite': "[D_-n, D_n]",
    'larger-positive': "[D_n+r, D_-n]",
    'larger-negative': "[D_n, D_-n-r]",
}


def classify(i: int, j: int) -> Optional[Tuple[str, Combo]]:
    """
    The bracket formula that computes [D_i, D_j] directly.

    Returns:
        (family name, coefficients), or None when only [D_j, D_i] is listed
    """
    if i == 0 and j > 0:
        return 'zero-positive', zero_with_positive(j)
    if i == 0 and j < 0:
        return 'zero-negative', zero_with_negative(-j)
    if 0 < i < j:
        return 'positive-pair', positive_pair(i, j - i)
    if j < i < 0:
        return 'negative-pair', negative_pair(-i, i - j)
    if i < 0 < j and j == -i:
        return 'opposite', opposite_pair(j)
    if i > 0 > j and i > -j:
        return 'larger-positive', larger_positive(-j, i + j)
    if i > 0 > j and i < -j:
        return 'larger-negative', larger_negative(i, -j - i)
    return None


def reduce_mod_square(c: RatFuncQ) -> RatFuncQ:
    """Representative a + b(q-1) of c modulo (q-1)^2."""
    return mod_square_reduce(c).lift()


class StructTable:
    """
    Structure constants c(i, j, k) with [D_i, D_j] = sum_k c(i, j, k) D_k.

    Defined for |i|, |j| <= 3W. An optional transform is applied to every
    coefficient, which is how the table reduced modulo (q-1)^2 is built.
    """

    def __init__(self, window: int, transform: Optional[Callable[[RatFuncQ], RatFuncQ]] = None):
        if window < 1:
            raise PreconditionError(f"window must be positive, got {window}")
        self.window = window
        self.limit = 3 * window
        self.transform = transform
        self._cache: Dict[Tuple[int, int], Combo] = {}

    def coefficients(self, i: int, j: int) -> Combo:
        """Nonzero coefficients of [D_i, D_j] indexed by k."""
        if abs(i) > self.limit or abs(j) > self.limit:
            raise PreconditionError(f"index pair ({i}, {j}) is outside the table of window {self.window}")
        key = (i, j)
        if key not in self._cache:
            self._cache[key] = self._compute(i, j)
        return self._cache[key]

    def _compute(self, i: int, j: int) -> Combo:
        if i == j:
            return {}
        direct = classify(i, j)
        combo = direct[1] if direct else _negate(classify(j, i)[1])
        if self.transform is not None:
            combo = {k: self.transform(c) for k, c in combo.items()}
            combo = {k: c for k, c in combo.items() if c}
        return combo

    def coefficient(self, i: int, j: int, k: int) -> RatFuncQ:
        return self.coefficients(i, j).get(k, QField.zero)

    def bracket_combo(self, a: Combo, b: Combo) -> Combo:
        terms = []
        for i, ca in a.items():
            for j, cb in b.items():
                terms += [(k, ca * cb * c) for k, c in self.coefficients(i, j).items()]
        return _accumulate(terms)

    def jacobi_residual(self, i: int, j: int, k: int) -> Combo:
        """Coefficients of [[D_i,D_j],D_k] + [[D_j,D_k],D_i] + [[D_k,D_i],D_j]."""
        terms = []
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = self.coefficients(a, b)
            terms += list(self.bracket_combo(inner, {c: QField.one}).items())
        return _accumulate(terms)

    def pairs(self) -> Iterator[Tuple[int, int]]:
        """All i < j with |i|, |j| <= W."""
        for i in range(-self.window, self.window + 1):
            for j in range(i + 1, self.window + 1):
                yield i, j


def format_combo(combo: Combo) -> str:
    if not combo:
        return "0"
    return " + ".join(f"({format_ratfunc(c)})D_{k}" for k, c in sorted(combo.items()))


def _operator_matches(i: int, j: int, table: StructTable) -> Tuple[bool, str]:
    actual = bracket(generator(i), generator(j))
    expected = in_basis(table.coefficients(i, j))
    if actual == expected:
        return True, ""
    return False, f"[D_{i}, D_{j}] = {actual}, table gives {format_combo(table.coefficients(i, j))}"


def sl2_theorem_check() -> VerifyReport:
    """Deformed sl2 brackets as exact operator identities, and their q = 1 limit."""
    recorder = CheckRecorder("sl2")
    Dm1, D0, D1 = generator(-1), generator(0), generator(1)

    def claim(name: str, actual: FirstOrderOp, expected: FirstOrderOp) -> None:
        ok = actual == expected
        recorder.record(name, ok, "" if ok else f"difference {actual - expected}")

    claim("[D_0, D_1] = (q^2-q+1)D_1+(1-q)D_0", bracket(D0, D1), in_basis({1: R, 0: 1 - q}))
    claim("[D_0, D_-1] = -(q^2-q+1)D_-1+(1-q)D_0", bracket(D0, Dm1), in_basis({-1: -R, 0: 1 - q}))
    claim("[D_-1, D_1] = 2D_0+(1-q)(D_1-D_-1)", bracket(Dm1, D1), in_basis({0: 2, 1: 1 - q, -1: q - 1}))

    l = {n: classical_generator(n) for n in (-1, 0, 1)}
    claim("q=1: [l_-1, l_1] = 2l_0", bracket(l[-1], l[1]), l[0].scaled(2))
    claim("q=1: [l_0, l_1] = l_1", bracket(l[0], l[1]), l[1])
    claim("q=1: [l_0, l_-1] = -l_-1", bracket(l[0], l[-1]), -l[-1])
    return recorder.finish()


def _collapse_ok(table: StructTable, i: int, j: int) -> bool:
    at_one = {k: evaluate(c, 1) for k, c in table.coefficients(i, j).items()}
    expected = {i + j: j - i}
    return {k: v for k, v in at_one.items() if v} == expected


def _mirror_ok(table: StructTable, i: int, j: int) -> bool:
    direct = table.coefficients(i, j)
    mirrored = table.coefficients(-i, -j)
    expected = {-k: c if (i + j + k + 1) % 2 == 0 else -c for k, c in direct.items()}
    return mirrored == expected


def witt_theorem_check(W: int) -> VerifyReport:
    """
    Every bracket formula of the deformed Witt algebra for indices in [-W, W].

    Each family is one check; the witness is the first failing pair.

    Raises:
        PreconditionError: if W < 2
    """
    if W < 2:
        raise PreconditionError(f"window must be at least 2, got {W}")
    recorder = CheckRecorder("witt")
    table = StructTable(W)

    by_family: Dict[str, List[Tuple[int, int]]] = {name: [] for name in FAMILIES}
    for i, j in table.pairs():
        direct = classify(i, j)
        family = direct[0] if direct else classify(j, i)[0]
        by_family[family].append((i, j))

    for family, pairs in by_family.items():
        def family_check(pairs=pairs) -> Tuple[bool, str]:
            for i, j in pairs:
                ok, witness = _operator_matches(i, j, table)
                if not ok:
                    return False, witness
            return True, ""

        recorder.check(f"{FAMILIES[family]} formula ({len(pairs)} pairs)", family_check)

    def collapse() -> Tuple[bool, str]:
        for i, j in table.pairs():
            if not _collapse_ok(table, i, j):
                return False, f"pair ({i}, {j})"
        return True, ""

    def mirror() -> Tuple[bool, str]:
        for i, j in table.pairs():
            if not _mirror_ok(table, i, j):
                return False, f"pair ({i}, {j})"
        return True, ""

    def renaming() -> Tuple[bool, str]:
        for n in range(1, W + 1):
            for r in range(1, W - n + 1):
                expected = {m: c if (r + m) % 2 == 0 else -c
                            for m, c in ((-k, c) for k, c in larger_negative(n, r).items())}
                if larger_positive(n, r) != expected:
                    return False, f"n={n}, r={r}"
        return True, ""

    recorder.check("q=1 gives [l_n, l_m] = (m-n)l_(n+m)", collapse)
    recorder.check("c(-i,-j,-k) = (-1)^(i+j+k+1) c(i,j,k)", mirror)
    recorder.check("[D_n+r, D_-n] agrees with the renamed [D_n, D_-n-r] formula", renaming)
    return recorder.finish()


def jacobi_abstract(W: int) -> VerifyReport:
    """
    Jacobi identity from the structure constants alone, for |i|, |j|, |k| <= W.

    The residual alternates under permutations, so sorted triples suffice.
    """
    if W < 2:
        raise PreconditionError(f"window must be at least 2, got {W}")
    recorder = CheckRecorder("jacobi")
    table = StructTable(W)
    indices = range(-W, W + 1)

    count = 0
    failing: Optional[Tuple[Tuple[int, int, int], Combo]] = None
    for triple in combinations_with_replacement(indices, 3):
        residual = table.jacobi_residual(*triple)
        count += 1
        if residual and failing is None:
            failing = (triple, residual)
    logger.info("jacobi: %d triples checked for window %d", count, W)

    witness = ""
    if failing:
        witness = f"triple {failing[0]} residual {format_combo(failing[1])}"
    recorder.record(f"Jacobi identity on indices in [-{W}, {W}]", failing is None, witness,
                    detail=f"{count} triples, maximum residual {'nonzero' if failing else '0'}")
    recorder.equal("residual at (-1, 0, 1)", format_combo(table.jacobi_residual(-1, 0, 1)), "0")
    recorder.equal("residual at (i, i, k)", format_combo(table.jacobi_residual(2, 2, -1)), "0")
    return recorder.finish()


def heisenberg_check() -> VerifyReport:
    """The algebra spanned by D_-1, g_q and 1 is solvable and deforms [∂, x] = 1."""
    recorder = CheckRecorder("heisenberg")
    g = g_function()
    Dm1, G = generator(-1), multiplication(g)
    derived = multiplication(qx + (1 - qx) * g)

    def equal_op(name: str, actual: FirstOrderOp, expected: FirstOrderOp) -> None:
        ok = actual == expected
        recorder.record(name, ok, "" if ok else f"got {actual}, expected {expected}")

    equal_op("[D_-1, g_q] = q+(1-q)g_q", bracket(Dm1, G), derived)
    for name, op in (("D_-1", Dm1), ("g_q", G), ("1", ONE)):
        recorder.record(f"[{name}, 1] = 0", bracket(op, ONE).is_zero())
    recorder.record("[g_q, g_q] = 0", bracket(G, G).is_zero())
    recorder.record("derived algebra span{q+(1-q)g_q} is abelian", bracket(derived, derived).is_zero())
    equal_op("[D_-1, q+(1-q)g_q] stays in span{1, g_q}", bracket(Dm1, derived),
             multiplication((1 - qx) * (qx + (1 - qx) * g)))
    equal_op("q=1: [∂, x] = 1", bracket(PARTIAL, multiplication(x)), ONE)
    equal_op("q=1: D_-1 is ∂", Dm1.at_q(1), PARTIAL)
    equal_op("q=1: g_q is x", G.at_q(1), multiplication(x))
    return recorder.finish()


def mod_square_experiments(W: int) -> VerifyReport:
    """
    The sl2 and Witt tables with coefficients reduced modulo (q-1)^2.

    The sl2 part keeps the Jacobi identity in the quotient. The Witt part is
    swept over |i|, |j|, |k| <= 3 for a triple whose residual is nonzero in
    Q(q) but vanishes modulo (q-1)^2; the first one found is the detail of
    the passing check.

    Raises:
        PreconditionError: if W < 3
    """
    if W < 3:
        raise PreconditionError(f"window must be at least 3, got {W}")
    recorder = CheckRecorder("modsquare")
    table = StructTable(W, transform=reduce_mod_square)

    recorder.equal("reduced [d_0, d_1] = qd_1+(1-q)d_0", format_combo(table.coefficients(0, 1)),
                   format_combo({0: 1 - q, 1: q}))
    recorder.equal("reduced [d_0, d_-1] = -qd_-1+(1-q)d_0", format_combo(table.coefficients(0, -1)),
                   format_combo({-1: -q, 0: 1 - q}))
    recorder.equal("reduced [d_-1, d_1] = 2d_0+(1-q)(d_1-d_-1)",
                   format_combo(table.coefficients(-1, 1)),
                   format_combo({-1: q - 1, 0: 2 * QField.one, 1: 1 - q}))

    def vanishes_in_quotient(residual: Combo) -> bool:
        return not any(mod_square_reduce(c) for c in residual.values())

    sl2_residual = table.jacobi_residual(-1, 0, 1)
    recorder.record("reduced sl2 table satisfies Jacobi in Q[q]/((q-1)^2)",
                    vanishes_in_quotient(sl2_residual), f"residual {format_combo(sl2_residual)}")

    found: Optional[Tuple[Tuple[int, int, int], Combo]] = None
    failures = 0
    outside_ideal: Optional[Tuple[int, int, int]] = None
    for triple in combinations_with_replacement(range(-3, 4), 3):
        residual = table.jacobi_residual(*triple)
        if not residual:
            continue
        failures += 1
        if not vanishes_in_quotient(residual):
            outside_ideal = outside_ideal or triple
        elif found is None:
            found = (triple, residual)

    detail = ""
    if found:
        detail = f"triple {found[0]} residual {format_combo(found[1])}; {failures} triples fail over Q(q)"
        logger.info("modsquare: Jacobi failure witness %s", found[0])
    recorder.record("reduced Witt table breaks Jacobi over Q(q) for some triple in [-3, 3]",
                    found is not None, "every residual vanishes", detail)
    recorder.record("reduced Witt table satisfies Jacobi modulo (q-1)^2", outside_ideal is None,
                    f"triple {outside_ideal}")
    return recorder.finish()


SCombo = Dict[int, object]


def _s_bracket(table: StructTable, a: SCombo, b: SCombo) -> SCombo:
    total: SCombo = {}
    for i, ca in a.items():
        for j, cb in b.items():
            for k, c in table.coefficients(i, j).items():
                total[k] = total.get(k, SField.zero) + ca * cb * to_s_field(c)
    return {k: c for k, c in total.items() if c}


def _s_scaled(combo: SCombo, factor) -> SCombo:
    return {k: c * factor for k, c in combo.items() if c * factor}


def rep2_matrices() -> Dict[int, ProjMap]:
    """The two-dimensional representation of D_-1, D_0, D_1 over Q(s), q = s^2."""
    half = SField.one / 2
    eps = s ** 2 - 1
    Rs = s ** 4 - s ** 2 + 1
    return {
        -1: ProjMap(-eps * half, SField.zero, s, eps * half),
        0: ProjMap(Rs * half, SField.zero, SField.zero, -Rs * half),
        1: ProjMap(eps * half, -s, SField.zero, -eps * half),
    }


def _matrix_combo(matrices: Dict[int, ProjMap], combo: Combo) -> ProjMap:
    zero = SField.zero
    total = ProjMap(zero, zero, zero, zero)
    for k, c in combo.items():
        factor = to_s_field(c)
        total = total + ProjMap(*(factor * e for e in matrices[k].entries()))
    return total


def iso_and_rep2_check() -> VerifyReport:
    """Isomorphism with classical sl2 and the 2x2 representation, over Q(s) with q = s^2."""
    recorder = CheckRecorder("rep2")
    table = StructTable(2)
    Rs = to_s_field(R)
    inv_s = 1 / s

    f = {-1: inv_s, 0: (s ** 2 - 1) / (Rs * s)}
    h = {0: 1 / Rs}
    e = {1: inv_s, 0: (1 - s ** 2) / (Rs * s)}

    def combo_equal(name: str, actual: SCombo, expected: SCombo) -> None:
        ok = actual == expected
        recorder.record(name, ok, "" if ok else
                        f"got {{{', '.join(f'{k}: {render(c)}' for k, c in sorted(actual.items()))}}}")

    combo_equal("[h, e] = e", _s_bracket(table, h, e), e)
    combo_equal("[h, f] = -f", _s_bracket(table, h, f), _s_scaled(f, -1))
    combo_equal("[e, f] = -2h", _s_bracket(table, e, f), _s_scaled(h, -2))

    matrices = rep2_matrices()
    for k, m in matrices.items():
        recorder.record(f"representation of D_{k} is traceless", not m.trace(), f"trace {render(m.trace())}")

    for i, j in ((0, 1), (0, -1), (-1, 1)):
        actual = matrices[i] @ matrices[j] - matrices[j] @ matrices[i]
        expected = _matrix_combo(matrices, table.coefficients(i, j))
        ok = actual == expected
        recorder.record(f"matrix commutator [D_{i}, D_{j}] follows the sl2 table", ok,
                        "" if ok else f"got {actual}, expected {expected}")
    return recorder.finish()
