from fractions import Fraction

import pytest
import yaml
from click.testing import CliRunner

from src.BoundSearch import SearchReport
from src.Certificates import LINT, PASS, VerificationReport, parse_certificate
from src.KeelCertificates import f_collection
from src.ModuliLabels import BoundaryLabel
from src.TheoremDriver import StepResult, TheoremReport
from src.main import cli, run_command


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def c12_file(tmp_path):
    """A certificate whose pairing is exactly c{1,2}."""
    j = BoundaryLabel.of(7, [1, 2])
    terms = ([f"1/15 * {c}" for c in f_collection(j, (1, 1, 1, 4))]
             + [f"1/30 * {c}" for c in f_collection(j, (1, 1, 2, 3))])
    path = tmp_path / 'c12.cert'
    path.write_text("n: 7\nparams: 3 5 9\ntarget: c{1,2}\nclaim: >= 0\n" + '\n'.join(terms) + '\n')
    return path


def test_rank_seven_points(runner):
    result = runner.invoke(cli, ['rank', '--n', '7'])
    assert result.exit_code == 0
    assert result.output == "n: 7\nboundary: 56\nfcurves: 350\nrank: 42\nkernel: 14\n"


def test_rank_structured(runner):
    result = runner.invoke(cli, ['--format', 'structured', 'rank', '--n', '5'])
    assert result.exit_code == 0
    assert yaml.safe_load(result.output) == {'n': 5, 'boundary': 10, 'fcurves': 10, 'rank': 5, 'kernel': 5}


def test_rank_rejects_small_n():
    assert run_command(['rank', '--n', '3']) == 64


def test_rank_relation_kernel_needs_five_points():
    assert run_command(['rank', '--n', '4']) == 65


def test_intersect(runner):
    result = runner.invoke(cli, ['intersect', '--curve', 'C(1|2|3|4,5,6,7)', '--divisor', 'D{4,5,6,7}'])
    assert result.exit_code == 0
    assert "divisor: D{1,2,3}" in result.output
    assert "value: -1" in result.output


def test_intersect_rejects_bad_curve():
    assert run_command(['intersect', '--curve', 'C(1|2|3)', '--divisor', 'D{1,2}']) == 64


def test_keel_cert(runner):
    result = runner.invoke(cli, ['keel-cert', '--n', '7', '--J', '1,2', '--type', '1,1,1,4'])
    assert result.exit_code == 0
    assert "splits.0.m_t: 6" in result.output
    assert "verdict: PASS" in result.output


def test_keel_cert_failed_identity(runner, mocker):
    mocker.patch('src.KeelCertificates.keel_pairing', return_value=Fraction(0))
    result = runner.invoke(cli, ['keel-cert', '--n', '7', '--J', '1,2', '--type', '1,1,1,4'])
    assert result.exit_code == 2
    assert "verdict: FAIL" in result.output


def test_keel_cert_without_split_is_a_domain_error():
    assert run_command(['keel-cert', '--J', '1,2,3', '--type', '1,1,1,4']) == 65


def test_kapranov(runner):
    result = runner.invoke(cli, ['kapranov', '--n', '6'])
    assert result.exit_code == 0
    assert "det: 32" in result.output
    assert "expected_magnitude: 32" in result.output


def test_basis_default(runner):
    result = runner.invoke(cli, ['basis'])
    assert result.exit_code == 0
    assert "singular: no" in result.output
    assert "p_rank: 7" in result.output
    assert "D1: " in result.output


def test_basis_singular(runner):
    result = runner.invoke(cli, ['basis', '--params', '35,10,36'])
    assert result.exit_code == 0
    assert "singular: yes" in result.output
    assert "p_rank: 6" in result.output
    assert "D1" not in result.output


def test_verify_pass(runner, c12_file):
    result = runner.invoke(cli, ['verify', '--file', str(c12_file)])
    assert result.exit_code == 0
    assert "status: PASS" in result.output
    assert "implied_bound: 0" in result.output


def test_verify_lint(runner, tmp_path):
    path = tmp_path / 'bad.cert'
    path.write_text("n: 7\ntarget: c{1,2}\nclaim: >= 0\n1/3 * C(4|6|1,5|2,3)\n")
    result = runner.invoke(cli, ['verify', '--file', str(path)])
    assert result.exit_code == 3
    assert "status: LINT" in result.output


def test_verify_syntax_error(runner, tmp_path):
    path = tmp_path / 'broken.cert'
    path.write_text("target: c{1,2}\n")
    result = runner.invoke(cli, ['verify', '--file', str(path)])
    assert result.exit_code == 3
    assert "header must come first" in result.output


def test_verify_missing_file():
    assert run_command(['verify', '--file', 'does-not-exist.cert']) == 64


def test_verify_appendix(runner, mocker):
    reports = [VerificationReport('i.124', 'c{1,2,4}', PASS, Fraction(3)),
               VerificationReport('ii.24', 'c{2,4}', PASS, Fraction(1), repaired=True)]
    mocker.patch('src.main.verify_entries', return_value=reports)
    mocker.patch('src.main.CorpusManager')
    result = runner.invoke(cli, ['verify-appendix'])
    assert result.exit_code == 0
    assert result.output == "i.124: PASS\nii.24: REPAIRED\n"


def test_verify_appendix_exit_code_is_worst(runner, mocker):
    reports = [VerificationReport('i.124', 'c{1,2,4}', PASS, Fraction(3)),
               VerificationReport('ii.24', 'c{2,4}', LINT, Fraction(1))]
    mocker.patch('src.main.verify_entries', return_value=reports)
    mocker.patch('src.main.CorpusManager')
    result = runner.invoke(cli, ['--format', 'structured', 'verify-appendix'])
    assert result.exit_code == 3
    assert [c['status'] for c in yaml.safe_load(result.output)['certificates']] == ['PASS', 'LINT']


def test_verify_appendix_bad_thread_count(mocker):
    mocker.patch.dict('os.environ', {'FNEF_THREADS': 'zero'})
    mocker.patch('src.main.CorpusManager')
    assert run_command(['verify-appendix']) == 65


def test_search_needs_target_or_file():
    assert run_command(['search', '--set', 'c{1,2,3}=-1']) == 64


def test_search_without_normalization(runner):
    """The zero class is F-nef, so c{1,2} has minimum 0 over the bare cone."""
    result = runner.invoke(cli, ['search', '--target', 'c{1,2}'])
    assert result.exit_code == 0
    assert "status: OPTIMAL" in result.output
    assert "bound: 0" in result.output


def test_search_unbounded_is_a_bound_gap(runner, mocker):
    search = mocker.patch('src.main.search_bound', return_value=SearchReport('c{1,2,4}', 'UNBOUNDED'))
    result = runner.invoke(cli, ['search', '--target', 'c{1,2,4}'])
    assert result.exit_code == 1
    assert "status: UNBOUNDED" in result.output
    assert search.call_args.args[0].normalizations == ()


def test_search_emits_certificate(runner, mocker, tmp_path, c12_file):
    certificate = parse_certificate(c12_file.read_text())
    search = mocker.patch('src.main.search_bound',
                          return_value=SearchReport('c{1,2}', 'OPTIMAL', Fraction(0), certificate))
    out = tmp_path / 'emitted.cert'
    result = runner.invoke(cli, ['search', '--target', 'c{1,2}', '--set', 'c{1,2,3}=-1',
                                 '--assume', 'c{1,4,5}<=1/6', '--emit', str(out)])
    assert result.exit_code == 0
    assert "bound: 0" in result.output
    assert out.read_text() == certificate.to_text()
    problem = search.call_args.args[0]
    assert problem.target == BoundaryLabel.of(7, [1, 2])
    assert [str(a) for a in problem.assumptions] == ['assume c{1,4,5} <= 1/6']


def test_search_from_problem_file(runner, mocker, tmp_path):
    path = tmp_path / 'problem.txt'
    path.write_text("n: 7\nminimize c{1,2,4}\nset c{1,2,3} = -1\n")
    search = mocker.patch('src.main.search_bound', return_value=SearchReport('c{1,2,4}', 'INFEASIBLE'))
    result = runner.invoke(cli, ['search', '--file', str(path)])
    assert result.exit_code == 1
    assert search.call_args.args[0].normalizations[0].value == -1


def test_prove_m07(runner, mocker):
    report = TheoremReport((StepResult('a', 'c12-identity', True),), ())
    prove = mocker.patch('src.main.verify_theorem_m07', return_value=report)
    result = runner.invoke(cli, ['prove-m07', '--no-coverage'])
    assert result.exit_code == 0
    assert result.output.startswith("verdict: PASS\n")
    assert prove.call_args.kwargs['coverage'] is False


def test_prove_m07_failure(runner, mocker):
    report = TheoremReport((StepResult('d', 'cases', False, 'II FAILED'),), ())
    mocker.patch('src.main.verify_theorem_m07', return_value=report)
    assert runner.invoke(cli, ['prove-m07']).exit_code == 1
