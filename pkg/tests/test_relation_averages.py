from fractions import Fraction

import pytest

from src.IntersectionPairing import BoundaryVector, is_numerically_trivial
from src.ModuliLabels import BoundaryLabel, Permutation
from src.RelationAverages import (
    all_average_expressions,
    average_expression,
    case_group,
    case_one_vector,
    case_two_vector,
    delta_123,
    relabel_average,
    substitute_average,
    thresholds_match,
    triple_average_vector,
    validate_average,
)
from src.const import CASE_THRESHOLDS
from src.exceptions import InternalConsistencyError, UnknownCaseError


@pytest.mark.parametrize("case_id, order", [('I', 144), ('II', 8), ('III', 36), ('IV', 12)])
def test_case_group_order(case_id, order):
    assert len(case_group(case_id)) == order


def test_unknown_case():
    with pytest.raises(UnknownCaseError, match="Unknown case 'V'"):
        case_group('V')
    with pytest.raises(UnknownCaseError):
        average_expression('V')


@pytest.mark.parametrize("case_id", ['I', 'II', 'III', 'IV'])
def test_average_is_a_relation(case_id):
    """Delta_{1,2,3} plus the averaged vector is numerically trivial."""
    assert validate_average(average_expression(case_id))


@pytest.mark.parametrize("case_id", ['I', 'II', 'III', 'IV'])
def test_thresholds(case_id):
    expression = average_expression(case_id)
    assert expression.thresholds == CASE_THRESHOLDS[case_id]
    assert thresholds_match(expression)


def test_case_one_coefficients():
    vector = case_one_vector()
    assert vector.coefficient(BoundaryLabel.of(7, [1, 2])) == Fraction(1, 3)
    assert vector.coefficient(BoundaryLabel.of(7, [1, 4])) == Fraction(-1, 6)
    assert vector.coefficient(BoundaryLabel.of(7, [4, 5, 6])) == Fraction(1, 2)


def test_case_two_is_a_single_relation():
    vector = case_two_vector()
    assert vector.coefficient(BoundaryLabel.of(7, [2, 3])) == 1
    assert vector.coefficient(BoundaryLabel.of(7, [2, 4])) == -1


def test_triple_average_rejects_overlapping_data():
    with pytest.raises(InternalConsistencyError, match="bad construction data"):
        triple_average_vector((3, 4, 5), 7)


def test_substitute_average_keeps_the_class():
    expression = average_expression('I')
    v = delta_123().scale(2) + BoundaryVector.of_sets(7, [[1, 4]])
    substituted = substitute_average(v, expression)
    assert substituted == BoundaryVector.of_sets(7, [[1, 4]]) - expression.vector.scale(2)
    assert is_numerically_trivial(substituted - v)


def test_relabel_average_stays_a_relation():
    expression = average_expression('III')
    moved = relabel_average(expression, Permutation.transposition(7, 6, 7))
    assert moved.thresholds == expression.thresholds
    assert is_numerically_trivial(delta_123() + moved.vector)


def test_all_average_expressions():
    expressions = all_average_expressions()
    assert [e.case_id for e in expressions] == ['I', 'II', 'III', 'IV']
    assert expressions[0].to_dict()['case'] == 'I'


def test_perturbed_case_one_is_not_a_relation():
    expression = average_expression('I')
    label = BoundaryLabel.of(7, [4, 5, 6])
    perturbed = expression.vector + BoundaryVector.unit(label).scale(Fraction(1, 3) - Fraction(1, 2))
    assert not is_numerically_trivial(delta_123() + perturbed)


def test_case_four_avoids_delta_14():
    assert average_expression('IV').vector.coefficient(BoundaryLabel.of(7, [1, 4])) == 0


def test_case_three_has_no_pairs_with_seven():
    vector = average_expression('III').vector
    assert all(vector.coefficient(BoundaryLabel.of(7, [p, 7])) == 0 for p in range(1, 7))
