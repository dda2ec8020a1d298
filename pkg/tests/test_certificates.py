from fractions import Fraction

import pytest

from src.Certificates import (
    BOUND_GAP,
    DEGENERATE,
    EMPTY,
    LINT,
    PASS,
    RESIDUAL,
    VerificationReport,
    combined_exit_code,
    parse_certificate,
    verify_certificate,
)
from src.KeelCertificates import f_collection
from src.ModuliLabels import BoundaryLabel, Permutation
from src.exceptions import CertificateLintError, CertificateSyntaxError


def identity_terms(points) -> list[str]:
    """Weighted curves whose pairings sum to exactly c_J for a pair J"""
    label = BoundaryLabel.of(7, points)
    return ([f"1/15 * {curve}" for curve in f_collection(label, (1, 1, 1, 4))]
            + [f"1/30 * {curve}" for curve in f_collection(label, (1, 1, 2, 3))])


def certificate_text(target: str, claim: str, statements=(), terms=()) -> str:
    lines = ["n: 7", "params: 3 5 9", f"target: {target}", f"claim: >= {claim}"]
    return '\n'.join(lines + list(statements) + list(terms)) + '\n'


@pytest.fixture
def c12_text():
    return certificate_text('c{1,2}', '0', terms=identity_terms([1, 2]))


def test_parse_header_and_terms(c12_text):
    certificate = parse_certificate(c12_text, cert_id='c12')
    assert certificate.n == 7
    assert certificate.target == BoundaryLabel.of(7, [1, 2])
    assert certificate.claim == 0
    assert len(certificate.terms) == 5 + 10
    assert certificate.terms[0].weight == Fraction(1, 15)
    assert certificate.findings == ()


def test_canonical_text_round_trip(c12_text):
    assert parse_certificate(c12_text).to_text() == c12_text


def test_comments_and_blank_lines_are_ignored(c12_text):
    text = "# generated\n\n" + c12_text.replace("claim: >= 0", "claim: >= 0  # trivial")
    assert parse_certificate(text).claim == 0


def test_exact_identity_passes(c12_text):
    report = verify_certificate(parse_certificate(c12_text, cert_id='c12'))
    assert report.status == PASS
    assert report.m == 1
    assert report.implied_bound == 0
    assert report.exit_code == 0


def test_claim_above_implied_bound():
    text = certificate_text('c{1,2}', '1', terms=identity_terms([1, 2]))
    report = verify_certificate(parse_certificate(text))
    assert report.status == BOUND_GAP
    assert report.implied_bound == 0
    assert report.exit_code == 1


def test_scaling_keeps_the_bound(c12_text):
    certificate = parse_certificate(c12_text).scale(6)
    report = verify_certificate(certificate)
    assert report.status == PASS
    assert report.m == 6


def test_scaling_rejects_nonpositive_factor(c12_text):
    with pytest.raises(ValueError, match="must be positive"):
        parse_certificate(c12_text).scale(0)


def test_relabeled_certificate_proves_the_relabeled_bound(c12_text):
    moved = parse_certificate(c12_text).relabel(Permutation.transposition(7, 2, 3))
    assert moved.target == BoundaryLabel.of(7, [1, 3])
    assert verify_certificate(moved).status == PASS


def test_upper_assumption_bounds_the_other_coefficient():
    """c12 + c13 >= 0 and c12 <= 2 give c13 >= -2."""
    terms = identity_terms([1, 2]) + identity_terms([1, 3])
    text = certificate_text('c{1,3}', '-2', ["assume c{1,2} <= 2"], terms)
    report = verify_certificate(parse_certificate(text))
    assert report.status == PASS
    assert report.coefficients == {'c{1,2}': 1}
    assert report.implied_bound == -2


def test_lower_assumption_cannot_bound_a_positive_coefficient():
    terms = identity_terms([1, 2]) + identity_terms([1, 3])
    text = certificate_text('c{1,3}', '-2', ["assume c{1,2} >= 0"], terms)
    assert verify_certificate(parse_certificate(text)).status == BOUND_GAP


def test_normalization_value_is_substituted():
    terms = identity_terms([1, 2]) + identity_terms([1, 3])
    text = certificate_text('c{1,3}', '1', ["set c{1,2} = -1"], terms)
    report = verify_certificate(parse_certificate(text))
    assert report.status == PASS
    assert report.implied_bound == 1


def test_target_missing_from_the_decomposition():
    text = certificate_text('c{1,3}', '0', ["set c{1,2} = 0"], identity_terms([1, 2]))
    report = verify_certificate(parse_certificate(text))
    assert report.status == DEGENERATE
    assert report.m == 0


def test_single_curve_leaves_a_residual():
    text = certificate_text('c{1,2}', '0', terms=["1 * C(1|2|3|4,5,6,7)"])
    report = verify_certificate(parse_certificate(text))
    assert report.status == RESIDUAL
    assert report.exit_code == 2


def test_no_terms_is_empty():
    assert verify_certificate(parse_certificate(certificate_text('c{1,2}', '0'))).status == EMPTY


def test_malformed_curve_is_linted():
    text = certificate_text('c{1,2}', '0', terms=["1/3 * C(4|6|1,5|2,3)"])
    certificate = parse_certificate(text)
    assert len(certificate.findings) == 1
    finding = certificate.findings[0]
    assert finding.line == 5
    assert finding.term == 'C(4|6|1,5|2,3)'
    assert finding.uncovered == (7,)
    assert finding.repeated == ()
    report = verify_certificate(certificate)
    assert report.status == LINT
    assert report.exit_code == 3


def test_repeated_point_is_linted():
    text = certificate_text('c{1,2}', '0', terms=["1 * C(2|3|7|1,5,6,7)"])
    finding = parse_certificate(text).findings[0]
    assert finding.repeated == (7,)
    assert finding.uncovered == (4,)


def test_strict_mode_raises_on_lint():
    text = certificate_text('c{1,2}', '0', terms=["1 * C(4|6|1,5|2,3)"])
    with pytest.raises(CertificateLintError, match="line 5"):
        parse_certificate(text, strict=True)


def test_nonpositive_weight_is_linted():
    text = certificate_text('c{1,2}', '0', terms=["-1 * C(1|2|3|4,5,6,7)"])
    assert "nonpositive weight" in parse_certificate(text).findings[0].message


@pytest.mark.parametrize("text, message", [
    ("target: c{1,2}\n", "the 'n:' header must come first"),
    ("n: 7\nclaim: >= 0\n", "missing 'target:'"),
    ("n: 7\ntarget: c{1,2}\n", "missing 'claim:' header"),
    ("n: 7\ntarget: D{1,2}\nclaim: >= 0\n", "expected a functional id"),
    ("n: 7\ntarget: c{1,2}\nclaim: = 0\n", "claim must read"),
    ("n: 7\ntarget: c{1,2}\nclaim: >= 0\n1 * C(1|2|3)\n", "needs four parts"),
    ("n: 7\ntarget: c{1,2}\nclaim: >= 0\nprove it\n", "unrecognized statement"),
])
def test_syntax_errors(text, message):
    with pytest.raises(CertificateSyntaxError, match=message):
        parse_certificate(text)


def test_syntax_error_position():
    with pytest.raises(CertificateSyntaxError) as error:
        parse_certificate("n: 7\ntarget: c{1,2}\nclaim: >= 0\nset c{1,2} == 1\n")
    assert error.value.line == 4
    assert error.value.column == 1


def test_problem_file_with_minimize():
    certificate = parse_certificate("n: 7\nminimize c{1,2,4}\nset c{1,2,3} = -1\n")
    assert certificate.minimize
    assert certificate.claim is None
    assert certificate.to_text().splitlines()[2] == 'minimize c{1,2,4}'


def test_report_outcome_and_dict():
    report = VerificationReport('x', 'c{1,2}', PASS, Fraction(1), m=Fraction(2),
                                coefficients={'c{1,2,3}': Fraction(1, 2)}, implied_bound=Fraction(3),
                                repaired=True)
    assert report.outcome == 'REPAIRED'
    assert report.to_dict() == {
        'id': 'x',
        'target': 'c{1,2}',
        'status': 'REPAIRED',
        'claimed': '1',
        'm': '2',
        'coefficients': {'c{1,2,3}': '1/2'},
        'implied_bound': '3',
    }


def test_combined_exit_code():
    reports = [VerificationReport('a', 'c{1,2}', PASS, None), VerificationReport('b', 'c{1,2}', LINT, None)]
    assert combined_exit_code(reports) == 3
    assert combined_exit_code([]) == 0
