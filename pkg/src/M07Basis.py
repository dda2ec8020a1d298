"""The basis {S_I, P_i} of N^1 for seven marked points.

Coordinates are ordered as the 35 four-tuples of ``enumerate_four_tuples(7)``
followed by p_1..p_7. Inequality rows are carried symbolically in the pencil
parameters and evaluated at a :class:`ParamTriple` on demand.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from src.IntersectionPairing import (
    BoundaryVector,
    b_sum,
    d_divisor,
    intersect_vector,
    keel_divisor,
    keel_intersections,
    keel_pairing,
    sum_vectors,
)
from src.KapranovBasis import hyperplane_class
from src.ModuliLabels import (
    BoundaryLabel,
    FCurve,
    FourTuple,
    enumerate_fcurves,
    enumerate_four_tuples,
)
from src.RationalMatrix import ExactSolver, RatMatrix
from src.configs.BasisParams import ParamTriple
from src.const import M07_POINTS, SYSTEM_STAR_VALUES
from src.exceptions import (
    DimensionMismatchError,
    InternalConsistencyError,
    SingularBasisError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

N = M07_POINTS
KEEL_DIM = 35
DIM = 42


def four_tuples() -> tuple[FourTuple, ...]:
    return enumerate_four_tuples(N)


@lru_cache(maxsize=None)
def four_index() -> dict[FourTuple, int]:
    return {four: i for i, four in enumerate(four_tuples())}


@dataclass(frozen=True)
class ParamForm:
    """A linear form a*alpha + l*lambda + m*mu"""
    alpha: Fraction = Fraction(0)
    lam: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ('alpha', 'lam', 'mu'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __add__(self, other: 'ParamForm') -> 'ParamForm':
        return ParamForm(self.alpha + other.alpha, self.lam + other.lam, self.mu + other.mu)

    def __sub__(self, other: 'ParamForm') -> 'ParamForm':
        return self + other.scale(-1)

    def __neg__(self) -> 'ParamForm':
        return self.scale(-1)

    def scale(self, factor) -> 'ParamForm':
        factor = Fraction(factor)
        return ParamForm(factor * self.alpha, factor * self.lam, factor * self.mu)

    def is_zero(self) -> bool:
        return not (self.alpha or self.lam or self.mu)

    def evaluate(self, params: ParamTriple) -> Fraction:
        return self.alpha * params.alpha + self.lam * params.lam + self.mu * params.mu

    def __str__(self):
        terms = []
        for value, name in ((self.alpha, 'alpha'), (self.lam, 'lambda'), (self.mu, 'mu')):
            if not value:
                continue
            sign = '-' if value < 0 else '+'
            magnitude = abs(value)
            body = name if magnitude == 1 else f"{magnitude}*{name}"
            terms.append((sign, body))
        if not terms:
            return '0'
        first_sign, first_body = terms[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


ZERO_FORM = ParamForm()


@dataclass(frozen=True)
class CoordFunctional:
    """A linear functional on (s, p) with p-coefficients linear in the parameters"""
    s: tuple[Fraction, ...] = field(default_factory=lambda: (Fraction(0),) * KEEL_DIM)
    p: tuple[ParamForm, ...] = field(default_factory=lambda: (ZERO_FORM,) * N)

    def __post_init__(self):
        if len(self.s) != KEEL_DIM:
            raise DimensionMismatchError(KEEL_DIM, len(self.s))
        if len(self.p) != N:
            raise DimensionMismatchError(N, len(self.p))
        object.__setattr__(self, 's', tuple(Fraction(v) for v in self.s))

    @classmethod
    def from_parts(cls, s: Mapping[FourTuple, Fraction] | None = None,
                   p: Mapping[int, ParamForm] | None = None) -> 'CoordFunctional':
        """Build from sparse maps; p is keyed by point 1..7"""
        s_values = [Fraction(0)] * KEEL_DIM
        for four, value in (s or {}).items():
            s_values[four_index()[four]] += Fraction(value)
        p_values = [ZERO_FORM] * N
        for i, form in (p or {}).items():
            p_values[i - 1] = p_values[i - 1] + form
        return cls(tuple(s_values), tuple(p_values))

    def __add__(self, other: 'CoordFunctional') -> 'CoordFunctional':
        return CoordFunctional(tuple(a + b for a, b in zip(self.s, other.s)),
                               tuple(a + b for a, b in zip(self.p, other.p)))

    def __sub__(self, other: 'CoordFunctional') -> 'CoordFunctional':
        return self + other.scale(-1)

    def scale(self, factor) -> 'CoordFunctional':
        factor = Fraction(factor)
        return CoordFunctional(tuple(factor * v for v in self.s), tuple(f.scale(factor) for f in self.p))

    def s_terms(self) -> dict[FourTuple, Fraction]:
        return {four: v for four, v in zip(four_tuples(), self.s) if v}

    def evaluate(self, params: ParamTriple) -> tuple[Fraction, ...]:
        """The row vector over the 42 coordinates at fixed parameters"""
        return self.s + tuple(f.evaluate(params) for f in self.p)

    def apply(self, coords: 'M07Coords', params: ParamTriple) -> Fraction:
        return sum((a * b for a, b in zip(self.evaluate(params), coords.as_vector()) if a and b), Fraction(0))

    def __str__(self):
        terms = [f"{v}*{four}" for four, v in self.s_terms().items()]
        terms.extend(f"({form})*p{i}" for i, form in enumerate(self.p, start=1) if not form.is_zero())
        return ' + '.join(terms) if terms else '0'


def sum_functionals(functionals: Iterable[CoordFunctional]) -> CoordFunctional:
    total = CoordFunctional()
    for f in functionals:
        total = total + f
    return total


@dataclass(frozen=True)
class M07Coords:
    s: Mapping[FourTuple, Fraction]
    p: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.p) != N:
            raise DimensionMismatchError(N, len(self.p))
        unknown = [four for four in self.s if four not in four_index()]
        if unknown:
            raise DimensionMismatchError(KEEL_DIM, len(self.s))
        object.__setattr__(self, 's', {four: Fraction(v) for four, v in self.s.items() if v})
        object.__setattr__(self, 'p', tuple(Fraction(v) for v in self.p))

    @classmethod
    def zero(cls) -> 'M07Coords':
        return cls({}, (0,) * N)

    @classmethod
    def from_vector(cls, vector: Iterable) -> 'M07Coords':
        vector = tuple(vector)
        if len(vector) != DIM:
            raise DimensionMismatchError(DIM, len(vector))
        return cls(dict(zip(four_tuples(), vector[:KEEL_DIM])), vector[KEEL_DIM:])

    def as_vector(self) -> tuple[Fraction, ...]:
        return tuple(self.s.get(four, Fraction(0)) for four in four_tuples()) + self.p

    def dump_lines(self) -> list[str]:
        """One line per nonzero coordinate, e.g. 's{1,2,3,4} = 5/3' or 'p3 = -1/2'"""
        lines = [f"{four} = {self.s[four]}" for four in four_tuples() if four in self.s]
        lines.extend(f"p{i} = {v}" for i, v in enumerate(self.p, start=1) if v)
        return lines


def p_divisor(i: int, params: ParamTriple) -> BoundaryVector:
    """P_i = alpha D_i + lambda B_2 + mu B_3"""
    if not 1 <= i <= N:
        raise DimensionMismatchError(N, i)
    return (d_divisor(N, i).scale(params.alpha) + b_sum(N, 2).scale(params.lam)
            + b_sum(N, 3).scale(params.mu))


def obvious_representative(coords: M07Coords, params: ParamTriple) -> BoundaryVector:
    parts = [keel_divisor(four).scale(v) for four, v in coords.s.items()]
    parts.extend(p_divisor(i, params).scale(v) for i, v in enumerate(coords.p, start=1) if v)
    return sum_vectors(N, parts)


@lru_cache(maxsize=None)
def f_inequality_row(curve: FCurve) -> CoordFunctional:
    """
    c -> <obvious representative of c, curve>, symbolic in the parameters

    :raises InternalConsistencyError: If the row departs from the template of its curve type
    """
    if curve.n != N:
        raise DimensionMismatchError(N, curve.n)
    s = tuple(keel_pairing(four, curve) for four in four_tuples())
    b2 = intersect_vector(curve, b_sum(N, 2))
    b3 = intersect_vector(curve, b_sum(N, 3))
    p = tuple(ParamForm(intersect_vector(curve, d_divisor(N, i)), b2, b3) for i in range(1, N + 1))
    row = CoordFunctional(s, p)
    _check_template(curve, row)
    return row


_S_TERM_COUNTS = {(1, 1, 1, 4): 4, (1, 1, 2, 3): 6, (1, 2, 2, 2): 8}


def template_p_form(curve: FCurve, point: int) -> ParamForm:
    """The p_i coefficient the curve type prescribes, by the size of the part holding the point"""
    size = next(part.bit_count() for part in curve.parts if part >> (point - 1) & 1)
    if curve.type == (1, 1, 1, 4):
        return ParamForm(2, 3, -1) if size == 1 else ParamForm(0, 3, -1)
    if curve.type == (1, 1, 2, 3):
        return {1: ParamForm(1, 0, 1), 2: ParamForm(-1, 0, 1), 3: ParamForm(0, 0, 1)}[size]
    return ParamForm(0, -3, 3) if size == 1 else ParamForm(-1, -3, 3)


def _check_template(curve: FCurve, row: CoordFunctional) -> None:
    expected_s = tuple(keel_intersections(four, curve) for four in four_tuples())
    if row.s != expected_s or sum(expected_s) != _S_TERM_COUNTS[curve.type]:
        raise InternalConsistencyError('f-inequality-template', f"{curve}: s-part {row}")
    for i, form in enumerate(row.p, start=1):
        if form != template_p_form(curve, i):
            raise InternalConsistencyError('f-inequality-template',
                                           f"{curve}: p{i} has {form}, expected {template_p_form(curve, i)}")


def all_f_inequality_rows() -> list[tuple[FCurve, CoordFunctional]]:
    return [(curve, f_inequality_row(curve)) for curve in enumerate_fcurves(N)]


def coefficient_functional(label: BoundaryLabel) -> CoordFunctional:
    """c_J as a functional: the coefficient of Delta_J in the obvious representative"""
    if label.n != N:
        raise DimensionMismatchError(N, label.n)
    third = Fraction(1, 3)
    s = tuple(third if (four.mask & label.mask).bit_count() == 2 else Fraction(0) for four in four_tuples())
    pair = label.size == 2
    p = tuple(ParamForm(1 if pair and label.mask >> (i - 1) & 1 else 0, int(pair), int(label.size == 3))
              for i in range(1, N + 1))
    return CoordFunctional(s, p)


def reference_labels() -> list[str]:
    return [str(four) for four in four_tuples()] + [f"D{{{j},{N}}}" for j in range(1, N)] + ['H']


@lru_cache(maxsize=None)
def reference_basis() -> tuple[BoundaryVector, ...]:
    """S_I, then Delta_{j7} for j = 1..6, then H"""
    vectors = [keel_divisor(four) for four in four_tuples()]
    vectors.extend(BoundaryVector.of_sets(N, [(j, N)]) for j in range(1, N))
    vectors.append(hyperplane_class(N))
    return tuple(vectors)


def _pairing_rows(vectors: Iterable[BoundaryVector]) -> RatMatrix:
    vectors = list(vectors)
    return RatMatrix([[intersect_vector(curve, v) for v in vectors] for curve in enumerate_fcurves(N)],
                     len(vectors))


@lru_cache(maxsize=None)
def _reference_solver() -> ExactSolver:
    return ExactSolver(_pairing_rows(reference_basis()))


def express_in_reference(v: BoundaryVector) -> tuple[Fraction, ...]:
    """
    Coordinates over {S_I} + {Delta_j7} + {H}, solved from the pairings with all F-curves

    :raises InternalConsistencyError: If the pairing system is inconsistent
    """
    if v.n != N:
        raise DimensionMismatchError(N, v.n)
    rhs = [intersect_vector(curve, v) for curve in enumerate_fcurves(N)]
    coords = _reference_solver().solve(rhs)
    if coords is None:
        raise InternalConsistencyError('reference-basis', f"no coordinates for {v}")
    return coords


@lru_cache(maxsize=None)
def _generator_references() -> dict[str, tuple[Fraction, ...]]:
    refs = {f"D{i}": express_in_reference(d_divisor(N, i)) for i in range(1, N + 1)}
    refs['B2'] = express_in_reference(b_sum(N, 2))
    refs['B3'] = express_in_reference(b_sum(N, 3))
    return refs


def p_reference(i: int, params: ParamTriple) -> tuple[Fraction, ...]:
    refs = _generator_references()
    return tuple(params.alpha * d + params.lam * b2 + params.mu * b3
                 for d, b2, b3 in zip(refs[f"D{i}"], refs['B2'], refs['B3']))


def change_of_basis(params: ParamTriple) -> RatMatrix:
    """Rows are S_I and P_i written over the reference basis"""
    rows = [[Fraction(int(i == k)) for k in range(DIM)] for i in range(KEEL_DIM)]
    rows.extend(p_reference(i, params) for i in range(1, N + 1))
    return RatMatrix(rows, DIM)


def p_matrix(params: ParamTriple) -> RatMatrix:
    """Coordinates of P_1..P_7 on Delta_17..Delta_67 and H"""
    return RatMatrix([p_reference(i, params)[KEEL_DIM:] for i in range(1, N + 1)], N)


def p_matrix_closed_det(params: ParamTriple) -> Fraction:
    return -(5 * params.alpha) ** 6 * params.degeneracy


def basis_singularity_test(params: ParamTriple) -> bool:
    """
    True when {S_I, P_i} fails to be a basis

    :raises InternalConsistencyError: If the rank test disagrees with the closed-form locus
    """
    singular = change_of_basis(params).rank() < DIM
    if singular != params.is_singular():
        raise InternalConsistencyError('basis-singularity',
                                       f"rank test says singular={singular} at ({params.to_text()})")
    return singular


def degenerate_rank(params: ParamTriple) -> int:
    """Rank of the P_i modulo the Keel subspace"""
    return p_matrix(params).rank()


class M07Basis:
    """Coordinates over {S_I, P_i} at fixed nonsingular parameters"""

    def __init__(self, params: ParamTriple | None = None):
        self.params = params or ParamTriple.default()
        if self.params.is_singular():
            raise SingularBasisError(self.params.to_text())
        rows = [f_inequality_row(curve).evaluate(self.params) for curve in enumerate_fcurves(N)]
        self.f_matrix = RatMatrix(rows, DIM)
        try:
            self._solver = ExactSolver(self.f_matrix)
        except SingularMatrixError:
            raise SingularBasisError(self.params.to_text())
        logger.debug("basis ready at params (%s)", self.params.to_text())

    def curve_rows(self) -> list[tuple[FCurve, tuple[Fraction, ...]]]:
        return list(zip(enumerate_fcurves(N), self.f_matrix.entries))

    def to_coords(self, v: BoundaryVector) -> M07Coords:
        if v.n != N:
            raise DimensionMismatchError(N, v.n)
        rhs = [intersect_vector(curve, v) for curve in enumerate_fcurves(N)]
        solution = self._solver.solve(rhs)
        if solution is None:
            raise InternalConsistencyError('m07-coordinates', f"no coordinates for {v}")
        return M07Coords.from_vector(solution)

    def obvious_representative(self, coords: M07Coords) -> BoundaryVector:
        return obvious_representative(coords, self.params)


def to_coords(v: BoundaryVector, params: ParamTriple | None = None) -> M07Coords:
    return _basis_for(params or ParamTriple.default()).to_coords(v)


@lru_cache(maxsize=8)
def _basis_for(params: ParamTriple) -> M07Basis:
    return M07Basis(params)


@dataclass(frozen=True)
class SystemStarRow:
    curve: FCurve
    value: int
    description: str


_SYSTEM_STAR = [
    ("C(1|2|3|4,5,6,7)", "(1:1:1:4), 1 on spine, 7 on tail"),
    ("C(1|2|7|3,4,5,6)", "(1:1:1:4), 1 and 7 on spine"),
    ("C(2|3|7|1,4,5,6)", "(1:1:1:4), 1 on tail, 7 on spine"),
    ("C(2|3|4|1,5,6,7)", "(1:1:1:4), 1 and 7 on tail"),
    ("C(1|2|3,7|4,5,6)", "(1:1:2:3), 1 on spine, 7 on (2)"),
    ("C(1|2|3,4|5,6,7)", "(1:1:2:3), 1 on spine, 7 on (3)"),
    ("C(1|7|2,3|4,5,6)", "(1:1:2:3), 1 and 7 on spine"),
    ("C(2|3|1,7|4,5,6)", "(1:1:2:3), 1 and 7 on (2)"),
    ("C(2|3|4,5|1,6,7)", "(1:1:2:3), 1 and 7 on (3)"),
    ("C(2|7|1,3|4,5,6)", "(1:1:2:3), 1 on (2), 7 on spine"),
    ("C(2|7|3,4|1,5,6)", "(1:1:2:3), 1 on (3), 7 on spine"),
    ("C(1|2,3|4,5|6,7)", "(1:2:2:2), 1 on spine, 7 on tail"),
    ("C(7|1,2|3,4|5,6)", "(1:2:2:2), 1 on tail, 7 on spine"),
    ("C(2|1,7|3,4|5,6)", "(1:2:2:2), 1 and 7 on the same tail"),
    ("C(2|1,3|4,7|5,6)", "(1:2:2:2), 1 and 7 on distinct tails"),
]


def system_star_curves() -> list[SystemStarRow]:
    """One representative curve per configuration of the D_1 pairing system"""
    return [SystemStarRow(FCurve.parse(text), value, description)
            for (text, description), value in zip(_SYSTEM_STAR, SYSTEM_STAR_VALUES)]


def implication_chain() -> bool:
    """(6a + 27l - 15m) + 4/3 (9a + 27l - 15m) = 18a + 63l - 35m"""
    first = ParamForm(6, 27, -15)
    second = ParamForm(9, 27, -15)
    return first + second.scale(Fraction(4, 3)) == ParamForm(18, 63, -35)
