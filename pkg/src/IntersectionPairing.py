import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from src.ModuliLabels import (
    BoundaryLabel,
    FCurve,
    FourTuple,
    Permutation,
    enumerate_boundary,
    enumerate_fcurves,
    enumerate_four_tuples,
    to_points,
)
from src.RationalMatrix import RatMatrix
from src.exceptions import DimensionMismatchError, InvalidPointCountError

logger = logging.getLogger(__name__)


class BoundaryVector:
    """A sparse rational combination of boundary divisors"""

    def __init__(self, n: int, coeffs: Mapping[BoundaryLabel, Fraction] | None = None):
        self.n = n
        self._coeffs: dict[BoundaryLabel, Fraction] = {}
        for label, value in (coeffs or {}).items():
            if label.n != n:
                raise DimensionMismatchError(n, label.n)
            value = Fraction(value)
            if value:
                self._coeffs[label] = value

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[BoundaryLabel, Fraction]]) -> 'BoundaryVector':
        """Sum terms, merging repeated labels"""
        coeffs: dict[BoundaryLabel, Fraction] = {}
        for label, value in terms:
            coeffs[label] = coeffs.get(label, Fraction(0)) + Fraction(value)
        return cls(n, coeffs)

    @classmethod
    def unit(cls, label: BoundaryLabel) -> 'BoundaryVector':
        return cls(label.n, {label: Fraction(1)})

    @classmethod
    def of_sets(cls, n: int, sets: Iterable[Iterable[int]], coefficient=1) -> 'BoundaryVector':
        return cls.from_terms(n, ((BoundaryLabel.of(n, s), Fraction(coefficient)) for s in sets))

    def coefficient(self, label: BoundaryLabel) -> Fraction:
        return self._coeffs.get(label, Fraction(0))

    def items(self) -> list[tuple[BoundaryLabel, Fraction]]:
        return sorted(self._coeffs.items(), key=lambda item: item[0].sort_key())

    @property
    def support(self) -> list[BoundaryLabel]:
        return [label for label, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: 'BoundaryVector') -> None:
        if other.n != self.n:
            raise DimensionMismatchError(self.n, other.n)

    def __add__(self, other: 'BoundaryVector') -> 'BoundaryVector':
        self._check(other)
        return BoundaryVector.from_terms(self.n, list(self._coeffs.items()) + list(other._coeffs.items()))

    def __sub__(self, other: 'BoundaryVector') -> 'BoundaryVector':
        return self + (-other)

    def __neg__(self) -> 'BoundaryVector':
        return self.scale(-1)

    def scale(self, factor) -> 'BoundaryVector':
        factor = Fraction(factor)
        return BoundaryVector(self.n, {label: factor * v for label, v in self._coeffs.items()})

    def __mul__(self, factor) -> 'BoundaryVector':
        return self.scale(factor)

    __rmul__ = __mul__

    def relabel(self, sigma: Permutation) -> 'BoundaryVector':
        return BoundaryVector.from_terms(self.n, ((label.relabel(sigma), v) for label, v in self._coeffs.items()))

    def as_dense(self) -> tuple[Fraction, ...]:
        return tuple(self.coefficient(label) for label in enumerate_boundary(self.n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundaryVector):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self._coeffs.items())))

    def __str__(self):
        if not self._coeffs:
            return '0'
        return ' + '.join(f"{v}*{label}" for label, v in self.items())

    def __repr__(self):
        return f"BoundaryVector(n={self.n}, {self})"


def sum_vectors(n: int, vectors: Iterable[BoundaryVector]) -> BoundaryVector:
    terms = []
    for v in vectors:
        terms.extend(v.items())
    return BoundaryVector.from_terms(n, terms)


def intersect(curve: FCurve, label: BoundaryLabel) -> Fraction:
    """+1 if {J, J^c} is a union of two parts, -1 if J or J^c is a part, else 0"""
    if curve.n != label.n:
        raise DimensionMismatchError(curve.n, label.n)
    return Fraction(curve.pairing_table.get(label.mask, 0))


def intersect_vector(curve: FCurve, v: BoundaryVector) -> Fraction:
    if curve.n != v.n:
        raise DimensionMismatchError(curve.n, v.n)
    total = Fraction(0)
    for mask, value in curve.pairing_table.items():
        coefficient = v.coefficient(BoundaryLabel(v.n, mask))
        if coefficient:
            total += value * coefficient
    return total


def b_sum(n: int, size: int) -> BoundaryVector:
    """B_j, the sum of all boundary divisors with |J| = j"""
    return BoundaryVector(n, {label: Fraction(1) for label in enumerate_boundary(n) if label.size == size})


def d_divisor(n: int, i: int) -> BoundaryVector:
    """D_i, the sum of Delta_ij over j != i"""
    return BoundaryVector.of_sets(n, ((i, j) for j in range(1, n + 1) if j != i))


@lru_cache(maxsize=None)
def keel_divisor(four: FourTuple) -> BoundaryVector:
    n = four.n
    third = Fraction(1, 3)
    return BoundaryVector(n, {label: third for label in enumerate_boundary(n)
                              if (label.mask & four.mask).bit_count() == 2})


def keel_intersections(four: FourTuple, curve: FCurve) -> Fraction:
    if curve.n != four.n:
        raise DimensionMismatchError(curve.n, four.n)
    return Fraction(int(all((part & four.mask).bit_count() == 1 for part in curve.parts)))


@lru_cache(maxsize=None)
def keel_pairing(four: FourTuple, curve: FCurve) -> Fraction:
    return intersect_vector(curve, keel_divisor(four))


def keel_coefficient(label: BoundaryLabel, s: Mapping[FourTuple, Fraction]) -> Fraction:
    return sum((Fraction(v) for four, v in s.items()
                if (four.mask & label.mask).bit_count() == 2), Fraction(0)) / 3


def splittings(four: FourTuple) -> list[tuple[int, int]]:
    """The three splittings ij|kl, ik|jl, il|jk as pairs of masks"""
    i, j, k, l = (1 << (p - 1) for p in four.points)
    return [(i | j, k | l), (i | k, j | l), (i | l, j | k)]


def splitting_sum(four: FourTuple, index: int) -> BoundaryVector:
    first, second = splittings(four)[index]
    n = four.n
    coeffs = {}
    for label in enumerate_boundary(n):
        for side in (label.mask, label.complement_mask):
            if side & first == first and not side & second:
                coeffs[label] = Fraction(1)
    return BoundaryVector(n, coeffs)


@dataclass(frozen=True)
class KeelRelationVector:
    four: FourTuple
    pairing: tuple[int, int]
    vector: BoundaryVector

    def relation_text(self) -> str:
        names = []
        for index in self.pairing:
            first, second = splittings(self.four)[index]
            names.append(''.join(str(p) for p in to_points(first)) + '|' +
                         ''.join(str(p) for p in to_points(second)))
        return f"({names[0]}) - ({names[1]})"


def keel_relation(four: FourTuple, first: int = 0, second: int = 1) -> KeelRelationVector:
    vector = splitting_sum(four, first) - splitting_sum(four, second)
    return KeelRelationVector(four, (first, second), vector)


def keel_relations(n: int) -> list[KeelRelationVector]:
    relations = []
    for four in enumerate_four_tuples(n):
        relations.append(keel_relation(four, 0, 1))
        relations.append(keel_relation(four, 0, 2))
    return relations


@lru_cache(maxsize=None)
def relation_kernel(n: int) -> tuple[BoundaryVector, ...]:
    """A basis of the span of all Keel relations, read off a reduced echelon form"""
    if n < 5:
        raise InvalidPointCountError(n, 5)
    labels = enumerate_boundary(n)
    generators = RatMatrix([r.vector.as_dense() for r in keel_relations(n)], len(labels))
    reduced, pivots = generators.rref()
    basis = tuple(BoundaryVector(n, dict(zip(labels, reduced[r]))) for r in range(len(pivots)))
    logger.debug("relation kernel for n=%d has dimension %d", n, len(basis))
    return basis


@lru_cache(maxsize=None)
def pairing_matrix(n: int) -> RatMatrix:
    """Rows indexed by boundary labels, columns by F-curves"""
    curves = enumerate_fcurves(n)
    return RatMatrix([[intersect(curve, label) for curve in curves] for label in enumerate_boundary(n)],
                     len(curves))


def is_numerically_trivial(v: BoundaryVector) -> bool:
    return all(intersect_vector(curve, v) == 0 for curve in enumerate_fcurves(v.n))


def in_relation_span(v: BoundaryVector) -> bool:
    kernel = relation_kernel(v.n)
    base = RatMatrix([k.as_dense() for k in kernel], len(enumerate_boundary(v.n)))
    extended = RatMatrix([k.as_dense() for k in kernel] + [v.as_dense()], len(enumerate_boundary(v.n)))
    return extended.rank() == base.rank()


def keel_divisor_sum(n: int) -> BoundaryVector:
    return sum_vectors(n, (keel_divisor(four) for four in enumerate_four_tuples(n)))
