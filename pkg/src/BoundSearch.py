import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction

from src.Certificates import (
    PASS,
    Assumption,
    Certificate,
    CertificateTerm,
    Normalization,
    _row_at,
    verify_certificate,
)
from src.LPSolver import OPTIMAL, LinearProgram, LPResult
from src.M07Basis import DIM, coefficient_functional
from src.ModuliLabels import BoundaryLabel, enumerate_fcurves
from src.configs.BasisParams import ParamTriple
from src.const import M07_POINTS
from src.exceptions import BoundUnachievableError, DualExtractionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LPProblem:
    """Minimize one coefficient over the F-nef cone cut by normalizations and assumption boxes"""
    target: BoundaryLabel
    normalizations: tuple[Normalization, ...] = ()
    assumptions: tuple[Assumption, ...] = ()
    params: ParamTriple = field(default_factory=ParamTriple.default)

    @classmethod
    def from_certificate(cls, certificate: Certificate) -> 'LPProblem':
        return cls(certificate.target, certificate.normalizations, certificate.assumptions, certificate.params)

    def build(self) -> LinearProgram:
        """F-inequality rows named by curve, then set rows, then assumption rows"""
        lp = LinearProgram(DIM)
        for curve in enumerate_fcurves(M07_POINTS):
            lp.add_ge(_row_at(curve, self.params), 0, str(curve))
        for index, s in enumerate(self.normalizations):
            lp.add_eq(coefficient_functional(s.label).evaluate(self.params), s.value, f"set{index}")
        for index, a in enumerate(self.assumptions):
            row = coefficient_functional(a.label).evaluate(self.params)
            if a.sense == '<=':
                lp.add_ge([-v for v in row], -a.value, f"assume{index}")
            else:
                lp.add_ge(row, a.value, f"assume{index}")
        return lp


@dataclass(frozen=True)
class SearchReport:
    target: str
    status: str
    optimum: Fraction | None = None
    certificate: Certificate | None = None

    def to_dict(self) -> dict:
        result = {'target': self.target, 'status': self.status}
        if self.optimum is not None:
            result['bound'] = str(self.optimum)
        if self.certificate is not None:
            result['curves'] = len(self.certificate.terms)
        return result


def simplex_min(problem: LPProblem) -> LPResult:
    lp = problem.build()
    result = lp.minimize(coefficient_functional(problem.target).evaluate(problem.params))
    logger.info("minimize %s: %s %s", problem.target.functional_id, result.status,
                '' if result.value is None else result.value)
    return result


def farkas_certificate(problem: LPProblem, result: LPResult, cert_id: str = '') -> Certificate:
    """
    Read the optimal dual weights on the F-inequality rows as a certificate

    :raises DualExtractionError: If the certificate does not verify at the optimum
    """
    if result.status != OPTIMAL:
        raise DualExtractionError(f"no finite optimum to read duals from ({result.status})")
    terms = []
    for curve, weight in zip(enumerate_fcurves(M07_POINTS), result.duals):
        if weight:
            terms.append(CertificateTerm(weight, curve.point_parts, curve))
    certificate = Certificate(M07_POINTS, problem.target, result.value, problem.params,
                              problem.normalizations, problem.assumptions, tuple(terms), cert_id=cert_id)
    if terms:
        report = verify_certificate(certificate)
        if report.status != PASS or report.implied_bound != result.value:
            raise DualExtractionError(f"extracted certificate for {problem.target.functional_id} "
                                      f"gives {report.status} {report.implied_bound}, optimum {result.value}")
    return certificate


def search_bound(problem: LPProblem, cert_id: str = '') -> SearchReport:
    result = simplex_min(problem)
    if result.status != OPTIMAL:
        return SearchReport(problem.target.functional_id, result.status)
    certificate = farkas_certificate(problem, result, cert_id)
    return SearchReport(problem.target.functional_id, result.status, result.value, certificate)


def repair_certificate(certificate: Certificate) -> Certificate:
    """
    A verified certificate for the same target, normalizations and assumptions

    Certificates that already verify come back unchanged.

    :raises BoundUnachievableError: If the LP optimum falls below the claimed bound
    """
    if verify_certificate(certificate).status == PASS:
        return certificate
    logger.warning("%s does not verify as written; searching for a replacement", certificate.cert_id)
    report = search_bound(LPProblem.from_certificate(certificate), certificate.cert_id)
    if report.status != OPTIMAL or report.optimum < certificate.claim:
        raise BoundUnachievableError(certificate.target.functional_id, certificate.claim, report.optimum)
    return replace(report.certificate, claim=certificate.claim)
