from fractions import Fraction

import yaml

from src.reporting import STRUCTURED, TEXT, emit, flatten, render


def test_flatten_nested_dicts_and_lists():
    report = {
        'verdict': 'PASS',
        'steps': [{'step': 'a', 'passed': True}],
        'certificates': [{'id': 'i.124', 'status': 'PASS'}],
        'repaired': ['ii.24', 'iii.457'],
        'bound': None,
    }
    assert flatten(report) == [
        ('verdict', 'PASS'),
        ('steps.0.step', 'a'),
        ('steps.0.passed', 'yes'),
        ('certificates.i.124.id', 'i.124'),
        ('certificates.i.124.status', 'PASS'),
        ('repaired', 'ii.24, iii.457'),
        ('bound', '-'),
    ]


def test_render_text_uses_rational_strings():
    assert render({'det': Fraction(-32), 'bound': Fraction(17, 3)}, TEXT) == "det: -32\nbound: 17/3"


def test_render_structured_is_yaml():
    text = render({'n': 7, 'bound': Fraction(1, 6), 'params': {'alpha': '3'}}, STRUCTURED)
    assert yaml.safe_load(text) == {'n': 7, 'bound': '1/6', 'params': {'alpha': '3'}}


def test_emit_echoes(mocker):
    echo = mocker.patch('src.reporting.click.echo')
    emit({'n': 7})
    echo.assert_called_once_with("n: 7")
