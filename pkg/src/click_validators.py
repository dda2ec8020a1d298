import re
from fractions import Fraction

import click

from src.Certificates import Assumption, Normalization
from src.ModuliLabels import BoundaryLabel, FCurve, parse_index_set
from src.configs.BasisParams import ParamTriple
from src.const import M07_POINTS
from src.exceptions import DomainError

_SET_OPTION_RE = re.compile(r'^\s*(c\{[^}]*\})\s*=\s*([-+]?\d+(?:/\d+)?)\s*$')
_ASSUME_OPTION_RE = re.compile(r'^\s*(c\{[^}]*\})\s*(<=|>=)\s*([-+]?\d+(?:/\d+)?)\s*$')


def _int_list(value: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in value.split(','))
    except ValueError:
        raise click.BadParameter(f"{name} must be comma-separated integers, got '{value}'")


def validate_point_list(ctx, param, value) -> tuple[int, ...] | None:
    """Validates a comma-separated list of points such as 1,2,4."""
    if value is None:
        return None
    return _int_list(value, 'point list')


def validate_curve_type(ctx, param, value) -> tuple[int, ...] | None:
    """Validates an F-curve type of four positive part sizes."""
    if value is None:
        return None
    sizes = _int_list(value, 'curve type')
    if len(sizes) != 4 or any(s < 1 for s in sizes):
        raise click.BadParameter("An F-curve type has four positive part sizes.")
    return tuple(sorted(sizes))


def validate_params(ctx, param, value) -> ParamTriple | None:
    if value is None:
        return None
    try:
        return ParamTriple.parse(value)
    except (ValueError, ZeroDivisionError) as e:
        raise click.BadParameter(str(e))


def validate_curve(ctx, param, value) -> FCurve | None:
    if value is None:
        return None
    try:
        return FCurve.parse(value)
    except (ValueError, DomainError) as e:
        raise click.BadParameter(str(e))


def validate_index_set(ctx, param, value) -> tuple[int, ...] | None:
    """Validates D{...} or c{...}; the point count is checked by the command."""
    if value is None:
        return None
    try:
        return parse_index_set(value)
    except ValueError as e:
        raise click.BadParameter(str(e))


def _functional(text: str) -> BoundaryLabel:
    try:
        return BoundaryLabel.parse(M07_POINTS, text)
    except (ValueError, DomainError) as e:
        raise click.BadParameter(str(e))


def validate_target(ctx, param, value) -> BoundaryLabel | None:
    if value is None:
        return None
    return _functional(value)


def validate_normalizations(ctx, param, value) -> list[Normalization]:
    """Validates repeated --set c{1,2,3}=-1 options."""
    normalizations = []
    for item in value or ():
        match = _SET_OPTION_RE.match(item)
        if not match:
            raise click.BadParameter(f"Expected c{{...}}=RATIONAL, got '{item}'")
        normalizations.append(Normalization(_functional(match.group(1)), Fraction(match.group(2))))
    return normalizations


def validate_assumptions(ctx, param, value) -> list[Assumption]:
    """Validates repeated --assume c{1,4,5}<=1/6 options."""
    assumptions = []
    for item in value or ():
        match = _ASSUME_OPTION_RE.match(item)
        if not match:
            raise click.BadParameter(f"Expected c{{...}}<=RATIONAL or c{{...}}>=RATIONAL, got '{item}'")
        assumptions.append(Assumption(_functional(match.group(1)), match.group(2), Fraction(match.group(3))))
    return assumptions
