from fractions import Fraction

import pytest

from src.Certificates import BOUND_GAP, RESIDUAL, VerificationReport, verify_certificate
from src.CorpusManager import CorpusManager
from src.TheoremDriver import (
    CoverageItem,
    check_c12_identity,
    check_c123_inequalities,
    check_case,
    check_codimension_one,
    threshold_coverage,
    verify_entries,
    verify_entry,
    verify_theorem_m07,
)
from src.configs.RunConfig import RunConfig
from src.exceptions import BoundUnachievableError


@pytest.fixture
def corpus():
    return CorpusManager()


def test_c12_identity():
    result = check_c12_identity()
    assert result.passed
    assert result.step == 'a'


def test_c123_inequalities():
    assert check_c123_inequalities().passed


def test_codimension_one():
    result = check_codimension_one()
    assert result.passed
    assert result.detail == "rank 6, implication True"


def test_verify_entry_passes_case_one(corpus):
    report = verify_entry(corpus.get('i.124'))
    assert report.outcome in ('PASS', 'REPAIRED')
    assert report.implied_bound >= 3


def test_verify_entry_repairs_defective_sum(corpus):
    entry = corpus.get('ii.24')
    report = verify_entry(entry)
    assert report.repaired
    assert report.outcome == 'REPAIRED'
    assert report.cert_id == 'ii.24'
    assert report.findings == entry.certificate.findings
    assert report.implied_bound >= 1


def test_verify_entry_reports_unrepairable(corpus, mocker):
    entry = corpus.get('ii.24')
    mocker.patch('src.TheoremDriver.repair_certificate',
                 side_effect=BoundUnachievableError('c{2,4}', Fraction(1), Fraction(0)))
    report = verify_entry(entry)
    assert report.status == 'LINT'
    assert not report.repaired


def test_verify_entries_uses_thread_cap(corpus, mocker):
    executor = mocker.patch('src.TheoremDriver.ThreadPoolExecutor')
    executor.return_value.__enter__.return_value.map.return_value = []
    verify_entries(corpus.by_case('I'), RunConfig(threads=3))
    executor.assert_called_once_with(max_workers=3)


def test_check_case_one(corpus):
    result = check_case('I', corpus.by_case('I'), RunConfig())
    assert result.average_valid
    assert result.thresholds_valid
    assert result.passed
    assert list(result.to_dict()['certificates']) == ['i.124']


def test_check_case_fails_on_a_gap(corpus, mocker):
    mocker.patch('src.TheoremDriver.verify_certificate',
                 side_effect=lambda c: VerificationReport(c.cert_id, c.target.functional_id, BOUND_GAP, c.claim))
    mocker.patch('src.TheoremDriver.repair_certificate', side_effect=BoundUnachievableError('c', 1, 0))
    result = check_case('I', corpus.by_case('I'), RunConfig())
    assert not result.passed


def test_case_one_coverage_needs_no_search(corpus, mocker):
    search = mocker.patch('src.TheoremDriver.search_bound')
    items = threshold_coverage('I', corpus.by_case('I'))
    search.assert_not_called()
    assert {item.label for item in items} == {'D{1,4}', 'D{1,2,4}', 'D{1,4,5}', 'D{4,5,6}'}
    assert all(item.covered for item in items)
    sources = {item.label: item.source for item in items}
    assert sources['D{1,2,4}'] in ('i.124', 'c12 identity')


def test_coverage_item():
    item = CoverageItem('IV', 'D{2,5}', Fraction(2, 9), None, 'unmatched')
    assert not item.covered
    assert item.to_dict()['bound'] is None


def test_verify_theorem_m07(corpus):
    report = verify_theorem_m07(RunConfig(threads=2), corpus, coverage=False)
    assert [s.step for s in report.steps] == ['a', 'b', 'c', 'd']
    assert report.passed
    assert report.verdict == 'PASS'
    assert {'ii.24', 'ii.245', 'ii.267', 'ii.467', 'iii.145', 'iii.457'} <= set(report.repaired)
    summary = report.to_dict()
    assert summary['verdict'] == 'PASS'
    assert summary['coverage'] == []
    assert [c['case'] for c in summary['cases']] == ['I', 'II', 'III', 'IV']


def test_residual_entry_is_documented_and_repaired(corpus):
    entry = corpus.get('ii.245')
    assert not entry.defective
    assert any('residual' in note for note in entry.notes)
    assert verify_certificate(entry.certificate).status == RESIDUAL
    report = verify_entry(entry)
    assert report.outcome == 'REPAIRED'
    assert report.implied_bound >= Fraction(37, 6)
