from fractions import Fraction

import pytest

from src.configs.BasisParams import ParamTriple
from src.configs.RunConfig import RunConfig
from src.exceptions import InvalidThreadCountError


def test_default_params():
    params = ParamTriple.default()
    assert params.as_tuple() == (3, 5, 9)
    assert params.x == -12
    assert not params.is_singular()


def test_parse_params_with_commas_and_spaces():
    assert ParamTriple.parse("3,5,9") == ParamTriple.parse("3 5 9")
    assert ParamTriple.parse("1/2, 0, -1").alpha == Fraction(1, 2)


def test_parse_params_wrong_count():
    with pytest.raises(ValueError, match="Expected three rationals"):
        ParamTriple.parse("1,2")


def test_singular_locus():
    """alpha = 0 and 18 alpha + 63 lambda - 35 mu = 0 are the singular parameters."""
    assert ParamTriple(0, 1, 1).is_singular()
    assert ParamTriple(35, 10, 36).is_singular()
    assert not ParamTriple(35, 10, 37).is_singular()


def test_params_dict_round_trip():
    params = ParamTriple(Fraction(1, 3), 5, -2)
    assert params.to_dict() == {'alpha': '1/3', 'lambda': '5', 'mu': '-2'}
    assert ParamTriple.from_dict(params.to_dict()) == params


def test_run_config_defaults_to_cpu_count(mocker):
    mocker.patch('src.configs.RunConfig.os.cpu_count', return_value=6)
    assert RunConfig().threads == 6
    assert RunConfig.from_env({}).threads == 6
    assert RunConfig.from_env({'FNEF_THREADS': ''}).threads == 6


def test_run_config_without_cpu_count(mocker):
    mocker.patch('src.configs.RunConfig.os.cpu_count', return_value=None)
    assert RunConfig().threads == 1


def test_run_config_from_env():
    assert RunConfig.from_env({'FNEF_THREADS': '4'}).threads == 4


def test_run_config_reads_os_environ(mocker):
    mocker.patch.dict('os.environ', {'FNEF_THREADS': '3'})
    assert RunConfig.from_env().threads == 3


@pytest.mark.parametrize("raw", ["0", "-2", "many"])
def test_run_config_invalid_thread_count(raw):
    with pytest.raises(InvalidThreadCountError, match="Invalid thread count"):
        RunConfig.from_env({'FNEF_THREADS': raw})


def test_run_config_dict_round_trip():
    assert RunConfig.from_dict(RunConfig(threads=2).to_dict()).threads == 2
