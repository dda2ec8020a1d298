from fractions import Fraction

import click
import pytest

from src.ModuliLabels import BoundaryLabel
from src.click_validators import (
    validate_assumptions,
    validate_curve,
    validate_curve_type,
    validate_index_set,
    validate_normalizations,
    validate_params,
    validate_point_list,
    validate_target,
)


@pytest.fixture
def mock_ctx():
    return None  # Context is not used by the validators


@pytest.fixture
def mock_param():
    return None  # Param is not used by the validators


def test_validate_point_list(mock_ctx, mock_param):
    assert validate_point_list(mock_ctx, mock_param, "1,2,4") == (1, 2, 4)
    assert validate_point_list(mock_ctx, mock_param, None) is None


def test_validate_point_list_rejects_words(mock_ctx, mock_param):
    with pytest.raises(click.BadParameter, match="comma-separated integers"):
        validate_point_list(mock_ctx, mock_param, "1,two")


def test_validate_curve_type_sorts(mock_ctx, mock_param):
    assert validate_curve_type(mock_ctx, mock_param, "4,1,1,1") == (1, 1, 1, 4)


@pytest.mark.parametrize("value", ["1,1,5", "0,1,2,4"])
def test_validate_curve_type_shape(mock_ctx, mock_param, value):
    with pytest.raises(click.BadParameter, match="four positive part sizes"):
        validate_curve_type(mock_ctx, mock_param, value)


def test_validate_params(mock_ctx, mock_param):
    assert validate_params(mock_ctx, mock_param, "35,10,36").mu == 36
    with pytest.raises(click.BadParameter, match="Expected three rationals"):
        validate_params(mock_ctx, mock_param, "1,2")


def test_validate_curve(mock_ctx, mock_param):
    assert str(validate_curve(mock_ctx, mock_param, "C(1|2|3|4,5,6,7)")) == 'C(1|2|3|4,5,6,7)'
    with pytest.raises(click.BadParameter, match="parts overlap"):
        validate_curve(mock_ctx, mock_param, "C(1|1,2|3|4,5,6,7)")


def test_validate_index_set(mock_ctx, mock_param):
    assert validate_index_set(mock_ctx, mock_param, "D{2,1}") == (1, 2)
    with pytest.raises(click.BadParameter, match="Cannot parse index set"):
        validate_index_set(mock_ctx, mock_param, "{1,2")


def test_validate_target(mock_ctx, mock_param):
    assert validate_target(mock_ctx, mock_param, "c{1,2,4}") == BoundaryLabel.of(7, [1, 2, 4])
    with pytest.raises(click.BadParameter, match="size must lie in"):
        validate_target(mock_ctx, mock_param, "c{1}")


def test_validate_normalizations(mock_ctx, mock_param):
    (normalization,) = validate_normalizations(mock_ctx, mock_param, ("c{1,2,3}=-1",))
    assert normalization.label == BoundaryLabel.of(7, [1, 2, 3])
    assert normalization.value == -1
    with pytest.raises(click.BadParameter, match="Expected"):
        validate_normalizations(mock_ctx, mock_param, ("c{1,2,3}<=1",))


def test_validate_assumptions(mock_ctx, mock_param):
    upper, lower = validate_assumptions(mock_ctx, mock_param, ("c{1,4,5} <= 1/6", "c{1,4,5}>=-1"))
    assert (upper.sense, upper.value) == ('<=', Fraction(1, 6))
    assert (lower.sense, lower.value) == ('>=', -1)
    assert validate_assumptions(mock_ctx, mock_param, ()) == []
