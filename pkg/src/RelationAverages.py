"""Averaged Keel relations expressing -Delta_{1,2,3} for the four cases of the n=7 proof."""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from src.IntersectionPairing import BoundaryVector, is_numerically_trivial, keel_relation, sum_vectors
from src.ModuliLabels import BoundaryLabel, FourTuple, Permutation, enumerate_boundary, set_stabilizer
from src.const import CASE_IDS, CASE_THRESHOLDS, M07_POINTS
from src.exceptions import InternalConsistencyError, UnknownCaseError

logger = logging.getLogger(__name__)

N = M07_POINTS
SMALL = (1, 2, 3)
LARGE = (4, 5, 6, 7)

# sets each case's symmetry group must fix
CASE_FIXED_SETS = {
    'I': ((1, 2, 3),),
    'II': ((1, 2, 3), (1, 4, 5)),
    'III': ((1, 2, 3), (4, 5, 6)),
    'IV': ((1, 2, 3), (5, 6, 7), (1, 4)),
}

# (triple, extra point) for the 18-relation averages
CASE_TRIPLES = {
    'III': ((4, 5, 6), 7),
    'IV': ((5, 6, 7), 4),
}


def delta_123() -> BoundaryVector:
    return BoundaryVector.of_sets(N, [SMALL])


@dataclass(frozen=True)
class AverageExpression:
    case_id: str
    vector: BoundaryVector
    thresholds: dict[str, Fraction] = field(hash=False)

    def to_dict(self) -> dict:
        return {
            'case': self.case_id,
            'vector': str(self.vector),
            'thresholds': {label: str(value) for label, value in self.thresholds.items()},
        }


def _pairs(points):
    return itertools.combinations(points, 2)


def case_one_vector() -> BoundaryVector:
    """The symmetric average over all relations through Delta_{1,2,3}"""
    terms = []
    terms.extend((BoundaryLabel.of(N, ab), Fraction(1, 3)) for ab in _pairs(SMALL))
    terms.extend((BoundaryLabel.of(N, xy), Fraction(1, 6)) for xy in _pairs(LARGE))
    terms.extend((BoundaryLabel.of(N, (a,) + xy), Fraction(-1, 6)) for a in SMALL for xy in _pairs(LARGE))
    terms.extend((BoundaryLabel.of(N, xyz), Fraction(1, 2)) for xyz in itertools.combinations(LARGE, 3))
    terms.extend((BoundaryLabel.of(N, (a, x)), Fraction(-1, 6)) for a in SMALL for x in LARGE)
    return BoundaryVector.from_terms(N, terms)


def case_two_display() -> BoundaryVector:
    positive = [(2, 3, 6), (2, 3, 7), (1, 4, 5), (4, 5, 6), (4, 5, 7), (2, 3), (4, 5)]
    negative = [(1, 2, 4), (2, 4, 6), (2, 4, 7), (1, 3, 5), (3, 5, 6), (3, 5, 7), (2, 4), (3, 5)]
    return BoundaryVector.of_sets(N, positive) - BoundaryVector.of_sets(N, negative)


def case_two_vector() -> BoundaryVector:
    """The relation (23)(45) = (24)(35) solved for -Delta_{1,2,3}"""
    relation = keel_relation(FourTuple.of(N, (2, 3, 4, 5)), 0, 1).vector
    vector = relation - delta_123()
    if vector != case_two_display():
        raise InternalConsistencyError('case-II-average', f"relation gives {vector}")
    return vector


def triple_average_display(triple, extra: int) -> BoundaryVector:
    terms = [(BoundaryLabel.of(N, triple), Fraction(1))]
    for a in SMALL:
        for x in triple:
            terms.append((BoundaryLabel.of(N, (a, x)), Fraction(-2, 9)))
            terms.append((BoundaryLabel.of(N, (a, extra, x)), Fraction(-2, 9)))
    for ab in _pairs(SMALL):
        terms.extend((BoundaryLabel.of(N, ab + (x,)), Fraction(-1, 9)) for x in triple)
        terms.append((BoundaryLabel.of(N, ab), Fraction(1, 3)))
        terms.append((BoundaryLabel.of(N, ab + (extra,)), Fraction(1, 3)))
    for xy in _pairs(triple):
        terms.extend((BoundaryLabel.of(N, (a,) + xy), Fraction(-1, 9)) for a in SMALL)
        terms.append((BoundaryLabel.of(N, xy), Fraction(1, 3)))
        terms.append((BoundaryLabel.of(N, (extra,) + xy), Fraction(1, 3)))
    return BoundaryVector.from_terms(N, terms)


def triple_average_vector(triple, extra: int) -> BoundaryVector:
    """
    Average of the 18 relations (ab)(xy) = (ax)(by), (ab)(xy) = (ay)(bx) with a, b in {1,2,3}
    and x, y in the triple, solved for -Delta_{1,2,3}

    :raises InternalConsistencyError: If the average departs from the closed pattern
    """
    triple = tuple(sorted(triple))
    if min(triple) <= max(SMALL) or extra in triple + SMALL:
        raise InternalConsistencyError('triple-average', f"bad construction data {triple}, {extra}")
    relations = []
    for ab in _pairs(SMALL):
        for xy in _pairs(triple):
            four = FourTuple.of(N, ab + xy)
            relations.append(keel_relation(four, 0, 1).vector)
            relations.append(keel_relation(four, 0, 2).vector)
    average = sum_vectors(N, relations).scale(Fraction(1, len(relations)))
    vector = average - delta_123()
    if vector != triple_average_display(triple, extra):
        raise InternalConsistencyError('triple-average', f"average over {triple} gives {vector}")
    return vector


@lru_cache(maxsize=None)
def case_group(case_id: str) -> tuple[Permutation, ...]:
    if case_id not in CASE_FIXED_SETS:
        raise UnknownCaseError(case_id)
    return tuple(set_stabilizer(N, CASE_FIXED_SETS[case_id]))


def compute_thresholds(vector: BoundaryVector, group) -> dict[str, Fraction]:
    """
    Lower bounds c_J >= -e_J that keep the substituted representative effective at c_{1,2,3} = -1

    Bounds are maximized over each group orbit and kept only above the floors already known
    (c_J >= 0 for pairs, c_J >= c_{1,2,3} = -1 for triples). Keys are the smallest label of each orbit.
    """
    excluded = BoundaryLabel.of(N, SMALL)
    seen = set()
    thresholds = {}
    for label in enumerate_boundary(N):
        if label in seen or label == excluded:
            continue
        orbit = {label.relabel(sigma) for sigma in group}
        seen |= orbit
        bound = max(-vector.coefficient(member) for member in orbit)
        floor = Fraction(0) if label.size == 2 else Fraction(-1)
        if bound > floor:
            thresholds[str(min(orbit, key=BoundaryLabel.sort_key))] = bound
    return thresholds


def case_vector(case_id: str) -> BoundaryVector:
    if case_id == 'I':
        return case_one_vector()
    if case_id == 'II':
        return case_two_vector()
    if case_id in CASE_TRIPLES:
        return triple_average_vector(*CASE_TRIPLES[case_id])
    raise UnknownCaseError(case_id)


@lru_cache(maxsize=None)
def average_expression(case_id: str) -> AverageExpression:
    vector = case_vector(case_id)
    thresholds = compute_thresholds(vector, case_group(case_id))
    logger.debug("case %s thresholds: %s", case_id, thresholds)
    return AverageExpression(case_id, vector, thresholds)


def all_average_expressions() -> list[AverageExpression]:
    return [average_expression(case_id) for case_id in CASE_IDS]


def validate_average(expression: AverageExpression) -> bool:
    """Delta_{1,2,3} + vector pairs to zero with every F-curve"""
    return is_numerically_trivial(delta_123() + expression.vector)


def thresholds_match(expression: AverageExpression) -> bool:
    return expression.thresholds == CASE_THRESHOLDS[expression.case_id]


def substitute_average(v: BoundaryVector, expression: AverageExpression) -> BoundaryVector:
    """Replace c_{1,2,3} Delta_{1,2,3} by -c_{1,2,3} times the average"""
    c = v.coefficient(BoundaryLabel.of(N, SMALL))
    return v - delta_123().scale(c) - expression.vector.scale(c)


def relabel_average(expression: AverageExpression, sigma: Permutation) -> AverageExpression:
    """Relabeled vector; thresholds are carried over unchanged"""
    return AverageExpression(expression.case_id, expression.vector.relabel(sigma), dict(expression.thresholds))
