from fractions import Fraction

import click
import yaml

TEXT = 'text'
STRUCTURED = 'structured'
FORMATS = [TEXT, STRUCTURED]


def _plain(value):
    """Rationals become "p/q" strings so both renderings agree"""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _scalar(value) -> str:
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    return str(value)


def flatten(report: dict, prefix: str = '') -> list[tuple[str, str]]:
    """
    Nested keys joined with "."

    List items are keyed by their 'id' field when they have one, by position otherwise;
    lists of scalars are joined on one line.
    """
    lines = []
    for key, value in report.items():
        path = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(flatten(value, f"{path}."))
        elif isinstance(value, (list, tuple)) and any(isinstance(v, dict) for v in value):
            for index, item in enumerate(value):
                name = item.get('id', index) if isinstance(item, dict) else index
                if isinstance(item, dict):
                    lines.extend(flatten(item, f"{path}.{name}."))
                else:
                    lines.append((f"{path}.{name}", _scalar(item)))
        elif isinstance(value, (list, tuple)):
            lines.append((path, ', '.join(_scalar(v) for v in value)))
        else:
            lines.append((path, _scalar(value)))
    return lines


def render(report: dict, fmt: str = TEXT) -> str:
    report = _plain(report)
    if fmt == STRUCTURED:
        return yaml.safe_dump(report, sort_keys=False, default_flow_style=False).rstrip('\n')
    return '\n'.join(f"{key}: {value}" for key, value in flatten(report))


def emit(report: dict, fmt: str = TEXT) -> None:
    click.echo(render(report, fmt))
