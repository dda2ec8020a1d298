from fractions import Fraction

import pytest

from src.IntersectionPairing import (
    BoundaryVector,
    b_sum,
    d_divisor,
    in_relation_span,
    intersect,
    intersect_vector,
    is_numerically_trivial,
    keel_coefficient,
    keel_divisor,
    keel_intersections,
    keel_pairing,
    keel_relation,
    keel_relations,
    pairing_matrix,
    relation_kernel,
)
from src.ModuliLabels import BoundaryLabel, FCurve, FourTuple, Permutation, enumerate_fcurves, enumerate_four_tuples
from src.exceptions import DimensionMismatchError, InvalidPointCountError


@pytest.fixture
def curves():
    return [FCurve.parse(text) for text in ('C(1|2|3|4,5,6,7)', 'C(1|2|3,4|5,6,7)', 'C(1|2,3|4,5|6,7)')]


@pytest.mark.parametrize("n, rank, kernel", [(5, 5, 5), (6, 16, 9), (7, 42, 14)])
def test_pairing_rank_and_relation_kernel(n, rank, kernel):
    assert pairing_matrix(n).rank() == rank
    assert len(relation_kernel(n)) == kernel


def test_relation_kernel_needs_five_points():
    with pytest.raises(InvalidPointCountError, match="must be at least 5"):
        relation_kernel(4)


def test_intersect_union_of_two_parts():
    curve = FCurve.parse('C(1|2|3|4,5,6,7)')
    assert intersect(curve, BoundaryLabel.of(7, [1, 2])) == 1
    assert intersect(curve, BoundaryLabel.of(7, [4, 5, 6, 7])) == -1
    assert intersect(curve, BoundaryLabel.of(7, [1, 4])) == 0


def test_intersect_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        intersect(FCurve.parse('C(1|2|3|4,5,6,7)'), BoundaryLabel.of(6, [1, 2]))


def test_b_sums_on_each_curve_type(curves):
    assert [intersect_vector(c, b_sum(7, 2)) for c in curves] == [3, 0, -3]
    assert [intersect_vector(c, b_sum(7, 3)) for c in curves] == [-1, 1, 3]


def test_d_divisor(curves):
    assert len(d_divisor(7, 1).support) == 6
    assert intersect_vector(curves[0], d_divisor(7, 1)) == 2


def test_vector_arithmetic():
    u = BoundaryVector.of_sets(7, [[1, 2], [1, 3]])
    v = BoundaryVector.of_sets(7, [[1, 2]], coefficient=Fraction(1, 2))
    total = u + v
    assert total.coefficient(BoundaryLabel.of(7, [1, 2])) == Fraction(3, 2)
    assert (u - u).is_zero()
    assert (2 * v).coefficient(BoundaryLabel.of(7, [1, 2])) == 1


def test_vector_relabel():
    u = BoundaryVector.of_sets(7, [[1, 2]])
    assert u.relabel(Permutation.transposition(7, 2, 5)) == BoundaryVector.of_sets(7, [[1, 5]])


def test_keel_relations_are_numerically_trivial():
    for relation in keel_relations(6)[:12]:
        assert is_numerically_trivial(relation.vector)
        assert in_relation_span(relation.vector)


def test_keel_relation_text():
    relation = keel_relation(FourTuple.of(7, [1, 2, 3, 4]))
    assert relation.relation_text() == "(12|34) - (13|24)"


def test_single_divisor_is_not_trivial():
    unit = BoundaryVector.unit(BoundaryLabel.of(7, [1, 2]))
    assert not is_numerically_trivial(unit)
    assert not in_relation_span(unit)


def test_keel_pairing_matches_closed_form():
    """s_ijkl . C is 1 exactly when each part meets {i,j,k,l} once."""
    for four in enumerate_four_tuples(5):
        for curve in enumerate_fcurves(5):
            assert keel_pairing(four, curve) == keel_intersections(four, curve)


def test_keel_divisor_coefficients():
    four = FourTuple.of(7, [1, 2, 3, 4])
    assert keel_divisor(four).coefficient(BoundaryLabel.of(7, [1, 2])) == Fraction(1, 3)
    assert keel_divisor(four).coefficient(BoundaryLabel.of(7, [1, 5])) == 0


def test_keel_coefficient():
    s = {FourTuple.of(7, [1, 2, 3, 4]): Fraction(3), FourTuple.of(7, [1, 5, 6, 7]): Fraction(6)}
    assert keel_coefficient(BoundaryLabel.of(7, [1, 2]), s) == 1
    assert keel_coefficient(BoundaryLabel.of(7, [5, 6]), s) == 2
