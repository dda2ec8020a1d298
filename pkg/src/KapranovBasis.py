"""Keel classes against the blow-up basis {H} + exceptional divisors.

Exceptional divisors are written Delta_J with n not in J and 3 <= |J| <= n-2;
the remaining boundary divisors Delta_ij (n not in {i,j}) expand over that basis.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from src.IntersectionPairing import BoundaryVector, keel_divisor, relation_kernel
from src.ModuliLabels import (
    BoundaryLabel,
    FourTuple,
    enumerate_boundary,
    enumerate_four_tuples,
    format_set,
    to_mask,
    to_points,
)
from src.RationalMatrix import RatMatrix
from src.exceptions import InternalConsistencyError, InvalidKapranovLabelError, InvalidPointCountError

logger = logging.getLogger(__name__)

HYPERPLANE = 'H'
EXCEPTIONAL = 'exceptional'
PAIR = 'pair'


@dataclass(frozen=True)
class KapranovLabel:
    n: int
    kind: str
    mask: int = 0

    @classmethod
    def hyperplane(cls, n: int) -> 'KapranovLabel':
        return cls(n, HYPERPLANE)

    @classmethod
    def exceptional(cls, n: int, points) -> 'KapranovLabel':
        points = tuple(points)
        mask = to_mask(points)
        if n in points:
            raise InvalidKapranovLabelError(n, points, "n may not lie in J")
        if not 3 <= len(set(points)) <= n - 2 or len(set(points)) != len(points):
            raise InvalidKapranovLabelError(n, points, "need 3 <= |J| <= n-2 distinct points")
        if any(p < 1 or p > n for p in points):
            raise InvalidKapranovLabelError(n, points, "points must lie in 1..n")
        return cls(n, EXCEPTIONAL, mask)

    @classmethod
    def pair(cls, n: int, i: int, j: int) -> 'KapranovLabel':
        if n in (i, j) or i == j or not (1 <= i <= n and 1 <= j <= n):
            raise InvalidKapranovLabelError(n, (i, j), "need i != j in 1..n-1")
        return cls(n, PAIR, to_mask((i, j)))

    @property
    def points(self) -> tuple[int, ...]:
        return to_points(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def sort_key(self):
        return (self.kind != HYPERPLANE, self.size, self.points)

    def __str__(self):
        if self.kind == HYPERPLANE:
            return 'H'
        return 'D' + format_set(self.mask)


@lru_cache(maxsize=None)
def exceptional_labels(n: int, sizes: tuple[int, ...] | None = None) -> tuple[KapranovLabel, ...]:
    """Exceptional labels ordered by size, then lexicographically"""
    if n < 5:
        raise InvalidPointCountError(n, 5)
    sizes = tuple(range(3, n - 1)) if sizes is None else sizes
    return tuple(KapranovLabel(n, EXCEPTIONAL, to_mask(points))
                 for size in sizes
                 for points in itertools.combinations(range(1, n), size))


def kapranov_basis(n: int) -> tuple[KapranovLabel, ...]:
    return (KapranovLabel.hyperplane(n),) + exceptional_labels(n)


def expand_pair_divisor(n: int, i: int, j: int) -> dict[KapranovLabel, Fraction]:
    """[Delta_ij] = H - sum of Delta_J over J containing {i,j}"""
    pair = KapranovLabel.pair(n, i, j)
    coords = {KapranovLabel.hyperplane(n): Fraction(1)}
    for label in exceptional_labels(n):
        if label.mask & pair.mask == pair.mask:
            coords[label] = Fraction(-1)
    return coords


def _side_without_n(label: BoundaryLabel) -> int:
    top = 1 << (label.n - 1)
    return label.complement_mask if label.mask & top else label.mask


def kapranov_coordinates(v: BoundaryVector) -> dict[KapranovLabel, Fraction]:
    """Coordinates of a boundary combination over the Kapranov basis"""
    n = v.n
    coords: dict[KapranovLabel, Fraction] = {}
    for label, value in v.items():
        side = _side_without_n(label)
        if side.bit_count() == 2:
            i, j = to_points(side)
            terms = expand_pair_divisor(n, i, j)
        else:
            terms = {KapranovLabel(n, EXCEPTIONAL, side): Fraction(1)}
        for key, coefficient in terms.items():
            coords[key] = coords.get(key, Fraction(0)) + value * coefficient
    return {key: value for key, value in coords.items() if value}


def hyperplane_class(n: int) -> BoundaryVector:
    """H as a boundary combination, from the expansion of Delta_12"""
    terms = [(BoundaryLabel.of(n, (1, 2)), Fraction(1))]
    for label in exceptional_labels(n):
        if label.mask & 0b11 == 0b11:
            terms.append((BoundaryLabel.from_mask(n, label.mask), Fraction(1)))
    return BoundaryVector.from_terms(n, terms)


def closed_form_pairing(exceptional: KapranovLabel, four: FourTuple) -> int:
    return min(0, 2 - (exceptional.mask & four.mask).bit_count())


def dual_pairing(exceptional: KapranovLabel, four: FourTuple) -> Fraction:
    """
    [Delta_J]^dual . [S_I], read off the Kapranov coordinates of S_I

    :raises InternalConsistencyError: If the value disagrees with min{0, 2 - |I & J|}
    """
    if exceptional.kind != EXCEPTIONAL:
        raise InvalidKapranovLabelError(exceptional.n, exceptional.points, "dual pairing needs an exceptional label")
    value = _keel_coordinates(four).get(exceptional, Fraction(0))
    expected = closed_form_pairing(exceptional, four)
    if value != expected:
        raise InternalConsistencyError('kapranov-pairing', f"{exceptional} . {four} = {value}, expected {expected}")
    return value


@lru_cache(maxsize=None)
def _keel_coordinates(four: FourTuple) -> dict[KapranovLabel, Fraction]:
    return kapranov_coordinates(keel_divisor(four))


def _m_columns(n: int) -> list[FourTuple]:
    top = 1 << (n - 1)
    fours = enumerate_four_tuples(n)
    return [f for f in fours if not f.mask & top] + [f for f in fours if f.mask & top]


def _m_rows(n: int) -> tuple[KapranovLabel, ...]:
    return exceptional_labels(n, (4, 3))


@lru_cache(maxsize=None)
def matrix_m(n: int) -> tuple[RatMatrix, Fraction]:
    """
    Keel classes against the duals of the last two blow-up stages

    Rows are |J| = 4 then |J| = 3; columns put four-tuples without n first.

    :raises InternalConsistencyError: If det M differs from (-1)^C(n-1,3) 2^C(n-1,4)
    """
    if n < 6:
        raise InvalidPointCountError(n, 6)
    rows = _m_rows(n)
    columns = _m_columns(n)
    m = RatMatrix([[dual_pairing(label, four) for four in columns] for label in rows], len(columns))
    det = m.det()
    expected = Fraction((-1) ** math.comb(n - 1, 3) * 2 ** math.comb(n - 1, 4))
    if det != expected:
        raise InternalConsistencyError('kapranov-determinant', f"det M = {det}, expected {expected}")
    logger.info("det M for n=%d is %s", n, det)
    return m, det


def bc_product(n: int) -> RatMatrix:
    """The off-diagonal block product B C, rows and columns indexed by 4-sets without n"""
    m, _ = matrix_m(n)
    size = math.comb(n - 1, 4)
    b = m.submatrix(range(size), range(size, m.n_cols))
    c = m.submatrix(range(size, m.n_rows), range(size))
    return b @ c


def bc_product_pattern(n: int) -> bool:
    """(BC)_{J,I} is 4 on the diagonal, 1 when |I & J| = 3 and 0 otherwise"""
    product = bc_product(n)
    labels = exceptional_labels(n, (4,))
    for r, row_label in enumerate(labels):
        for c, col_label in enumerate(labels):
            overlap = (row_label.mask & col_label.mask).bit_count()
            expected = 4 if overlap == 4 else 1 if overlap == 3 else 0
            if product[r, c] != expected:
                return False
    return True


def keel_independence_check(n: int) -> bool:
    """True iff the C(n,4) Keel classes stay independent modulo the Keel relations"""
    labels = enumerate_boundary(n)
    kernel = [k.as_dense() for k in relation_kernel(n)]
    keel = [keel_divisor(four).as_dense() for four in enumerate_four_tuples(n)]
    base = RatMatrix(kernel, len(labels)).rank() if kernel else 0
    rank = RatMatrix(kernel + keel, len(labels)).rank() - base
    logger.debug("Keel classes for n=%d have rank %d modulo relations", n, rank)
    return rank == math.comb(n, 4)


def basis_extension_check(n: int) -> bool:
    """Keel classes, H and the exceptional divisors with |J| >= 5 form a basis"""
    if n < 6:
        raise InvalidPointCountError(n, 6)
    basis = kapranov_basis(n)
    index = {label: i for i, label in enumerate(basis)}
    vectors = []
    for four in enumerate_four_tuples(n):
        row = [Fraction(0)] * len(basis)
        for label, value in _keel_coordinates(four).items():
            row[index[label]] = value
        vectors.append(row)
    extra = [KapranovLabel.hyperplane(n)] + [label for label in exceptional_labels(n) if label.size >= 5]
    for label in extra:
        row = [Fraction(0)] * len(basis)
        row[index[label]] = Fraction(1)
        vectors.append(row)
    return len(vectors) == len(basis) and RatMatrix(vectors, len(basis)).rank() == len(basis)

