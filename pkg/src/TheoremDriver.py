"""Replay of the n = 7 case analysis.

Steps (a) to (d) decide the verdict: the c_{1,2} identity, the two c_{1,2,3}
inequality identities, the rank drop on the degenerate locus, and for each case
the averaged relation, its thresholds and the certificates of that case.
Step (e) matches every threshold to a proven or assumed bound and is reported
for information only.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

from src.BoundSearch import LPProblem, repair_certificate, search_bound
from src.Certificates import PASS, Assumption, Normalization, VerificationReport, verify_certificate
from src.CorpusManager import CorpusEntry, CorpusManager
from src.KeelCertificates import f_collection
from src.LPSolver import OPTIMAL
from src.M07Basis import (
    CoordFunctional,
    ParamForm,
    coefficient_functional,
    degenerate_rank,
    f_inequality_row,
    implication_chain,
    sum_functionals,
)
from src.ModuliLabels import BoundaryLabel, enumerate_boundary
from src.RelationAverages import (
    LARGE,
    SMALL,
    average_expression,
    case_group,
    thresholds_match,
    validate_average,
)
from src.configs.BasisParams import ParamTriple
from src.configs.RunConfig import RunConfig
from src.const import CASE_IDS, DEGENERATE_PARAMS, M07_POINTS
from src.exceptions import FnefError

logger = logging.getLogger(__name__)

N = M07_POINTS
VERIFIED_OUTCOMES = ('PASS', 'REPAIRED')


@dataclass(frozen=True)
class StepResult:
    step: str
    name: str
    passed: bool
    detail: str = ''

    def to_dict(self) -> dict:
        return {'step': self.step, 'name': self.name, 'passed': self.passed, 'detail': self.detail}


@dataclass(frozen=True)
class CoverageItem:
    case_id: str
    label: str
    threshold: Fraction
    bound: Fraction | None
    source: str

    @property
    def covered(self) -> bool:
        return self.bound is not None and self.bound >= self.threshold

    def to_dict(self) -> dict:
        return {
            'case': self.case_id,
            'label': self.label,
            'threshold': str(self.threshold),
            'bound': None if self.bound is None else str(self.bound),
            'source': self.source,
            'covered': self.covered,
        }


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    average_valid: bool
    thresholds_valid: bool
    reports: tuple[VerificationReport, ...] = ()

    @property
    def passed(self) -> bool:
        return (self.average_valid and self.thresholds_valid
                and all(r.outcome in VERIFIED_OUTCOMES for r in self.reports))

    def to_dict(self) -> dict:
        return {
            'case': self.case_id,
            'average': self.average_valid,
            'thresholds': self.thresholds_valid,
            'certificates': {r.cert_id: r.outcome for r in self.reports},
            'passed': self.passed,
        }


@dataclass(frozen=True)
class TheoremReport:
    steps: tuple[StepResult, ...]
    cases: tuple[CaseResult, ...]
    coverage: tuple[CoverageItem, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    @property
    def verdict(self) -> str:
        return 'PASS' if self.passed else 'FAIL'

    @property
    def repaired(self) -> list[str]:
        return [r.cert_id for case in self.cases for r in case.reports if r.repaired]

    def to_dict(self) -> dict:
        return {
            'verdict': self.verdict,
            'steps': [s.to_dict() for s in self.steps],
            'cases': [c.to_dict() for c in self.cases],
            'repaired': self.repaired,
            'coverage': [c.to_dict() for c in self.coverage],
        }


def _label(points) -> BoundaryLabel:
    return BoundaryLabel.of(N, points)


def _p_form(groups) -> CoordFunctional:
    """p-part only: groups of (points, ParamForm)"""
    return CoordFunctional.from_parts(p={i: form for points, form in groups for i in points})


def collection_sum(points, curve_type) -> CoordFunctional:
    return sum_functionals(f_inequality_row(curve) for curve in f_collection(_label(points), curve_type))


def _matches(total: CoordFunctional, multiple: int, points, p_groups) -> bool:
    expected = coefficient_functional(_label(points)).scale(multiple) + _p_form(p_groups)
    return total == expected


def check_c12_identity() -> StepResult:
    """(1/15) sum over (1:1:1:4) curves + (1/30) sum over (1:1:2:3) curves pairs to exactly c_{1,2}"""
    first = collection_sum((1, 2), (1, 1, 1, 4))
    second = collection_sum((1, 2), (1, 1, 2, 3))
    rest = tuple(range(3, N + 1))
    first_ok = _matches(first, 6, (1, 2), [((1, 2), ParamForm(4, 9, -5)), (rest, ParamForm(2, 9, -5))])
    second_ok = _matches(second, 18, (1, 2), [((1, 2), ParamForm(-8, -18, 10)), (rest, ParamForm(-4, -18, 10))])
    combined = first.scale(Fraction(1, 15)) + second.scale(Fraction(1, 30))
    identity = combined == coefficient_functional(_label((1, 2)))
    detail = f"(1:1:1:4) sum {'ok' if first_ok else 'differs'}, (1:1:2:3) sum {'ok' if second_ok else 'differs'}"
    return StepResult('a', 'c12-identity', first_ok and second_ok and identity, detail)


def check_c123_inequalities() -> StepResult:
    first = collection_sum(SMALL, (1, 1, 2, 3))
    second = collection_sum(SMALL, (1, 2, 2, 2))
    first_ok = _matches(first, 12, SMALL, [(SMALL, ParamForm(-4, 0, 0)), (LARGE, ParamForm(3, 0, 0))])
    second_ok = _matches(second, 12, SMALL, [(SMALL, ParamForm(-6, -27, 15)), (LARGE, ParamForm(-9, -27, 15))])
    detail = f"(1:1:2:3) {'ok' if first_ok else 'differs'}, (1:2:2:2) {'ok' if second_ok else 'differs'}"
    return StepResult('b', 'c123-inequalities', first_ok and second_ok, detail)


def check_codimension_one() -> StepResult:
    rank = degenerate_rank(ParamTriple(*DEGENERATE_PARAMS))
    chain = implication_chain()
    return StepResult('c', 'degenerate-rank', rank == 6 and chain, f"rank {rank}, implication {chain}")


def verify_entry(entry: CorpusEntry) -> VerificationReport:
    """Verify as written, falling back to a searched replacement at the same bound"""
    original = verify_certificate(entry.certificate)
    if original.status == PASS:
        return original
    try:
        replacement = repair_certificate(entry.certificate)
    except FnefError as e:
        logger.warning("%s: %s", entry.id, e)
        return original
    report = verify_certificate(replacement)
    logger.info("%s repaired: %s -> %s", entry.id, original.status, report.outcome)
    return replace(report, cert_id=entry.id, findings=original.findings, repaired=True)


def verify_entries(entries: list[CorpusEntry], config: RunConfig) -> list[VerificationReport]:
    with ThreadPoolExecutor(max_workers=config.threads) as executor:
        reports = list(executor.map(verify_entry, entries))
    return sorted(reports, key=lambda r: r.cert_id)


def check_case(case_id: str, entries: list[CorpusEntry], config: RunConfig) -> CaseResult:
    expression = average_expression(case_id)
    valid = validate_average(expression)
    thresholds = thresholds_match(expression)
    reports = verify_entries(entries, config)
    logger.info("case %s: average %s, thresholds %s, %d certificates", case_id, valid, thresholds, len(reports))
    return CaseResult(case_id, valid, thresholds, tuple(reports))


def _shape(label: BoundaryLabel) -> tuple[int, int]:
    small = sum(1 for p in label.points if p in SMALL)
    return small, label.size - small


# (|J & {1,2,3}|, |J & {4..7}|) -> (bound, source), valid in every case
GLOBAL_FACTS = {
    (2, 0): (Fraction(0), 'c12 identity'),
    (1, 1): (Fraction(0), 'c12 identity'),
    (0, 2): (Fraction(0), 'c12 identity'),
    (2, 1): (Fraction(3), 'i.124'),
}

# bounds that hold inside one case because the other cases were split off
CASE_FACTS = {
    'I': {(1, 1): Fraction(1, 6), (1, 2): Fraction(1, 6), (0, 3): Fraction(0)},
    'IV': {(1, 2): Fraction(1, 6), (0, 3): Fraction(0)},
}


def _case_setting(entries: list[CorpusEntry]) -> tuple[tuple[Normalization, ...], tuple[Assumption, ...]]:
    if entries:
        certificate = entries[0].certificate
        return certificate.normalizations, certificate.assumptions
    return (Normalization(_label(SMALL), Fraction(-1)),), ()


def _fact_assumptions(case_id: str) -> tuple[Assumption, ...]:
    facts = CASE_FACTS.get(case_id, {})
    return tuple(Assumption(label, '>=', facts[_shape(label)])
                 for label in enumerate_boundary(N) if _shape(label) in facts)


def threshold_coverage(case_id: str, entries: list[CorpusEntry], search: bool = True) -> list[CoverageItem]:
    """Match each threshold orbit of the case to a bound that meets it"""
    group = case_group(case_id)
    items = []
    normalizations, assumptions = _case_setting(entries)
    for key, threshold in average_expression(case_id).thresholds.items():
        label = BoundaryLabel.parse(N, key)
        orbit = {label.relabel(sigma) for sigma in group}
        candidates = []
        for entry in entries:
            if entry.certificate.target in orbit:
                candidates.append((entry.claim, entry.id))
        shape = _shape(label)
        if shape in GLOBAL_FACTS:
            candidates.append(GLOBAL_FACTS[shape])
        if shape in CASE_FACTS.get(case_id, {}):
            candidates.append((CASE_FACTS[case_id][shape], f"case {case_id} split"))
        for a in assumptions:
            if a.sense == '>=' and a.label in orbit:
                candidates.append((a.value, f"case {case_id} assumption"))
        met = [c for c in candidates if c[0] >= threshold]
        if met:
            bound, source = max(met, key=lambda c: c[0])
        elif search:
            bound, source = _search_threshold(case_id, label, normalizations, assumptions)
        else:
            bound, source = (max(candidates)[0] if candidates else None), 'unmatched'
        items.append(CoverageItem(case_id, key, threshold, bound, source))
    return items


def _search_threshold(case_id: str, label: BoundaryLabel, normalizations, assumptions) -> tuple[Fraction | None, str]:
    problem = LPProblem(label, normalizations, assumptions + _fact_assumptions(case_id))
    try:
        report = search_bound(problem, cert_id=f"{case_id.lower()}.search.{label.functional_id}")
    except FnefError as e:
        logger.warning("bound search for %s failed: %s", label.functional_id, e)
        return None, 'bound search failed'
    if report.status != OPTIMAL:
        return None, f"bound search {report.status}"
    return report.optimum, 'bound search'


def verify_theorem_m07(config: RunConfig | None = None, corpus: CorpusManager | None = None,
                       coverage: bool = True) -> TheoremReport:
    """Run every step; failures are recorded in the report, never raised"""
    config = config or RunConfig.from_env()
    corpus = corpus or CorpusManager()
    steps = []
    for step, check in zip('abc', (check_c12_identity, check_c123_inequalities, check_codimension_one)):
        try:
            result = check()
        except FnefError as e:
            result = StepResult(step, check.__name__, False, str(e))
        logger.info("step %s %s: %s", result.step, result.name, 'ok' if result.passed else 'FAILED')
        steps.append(result)

    cases = []
    items = []
    for case_id in CASE_IDS:
        entries = corpus.by_case(case_id)
        try:
            case = check_case(case_id, entries, config)
        except FnefError as e:
            logger.error("case %s: %s", case_id, e)
            case = CaseResult(case_id, False, False)
        cases.append(case)
        if coverage:
            items.extend(threshold_coverage(case_id, entries))
    steps.append(StepResult('d', 'cases', all(c.passed for c in cases),
                            ', '.join(f"{c.case_id} {'ok' if c.passed else 'FAILED'}" for c in cases)))
    return TheoremReport(tuple(steps), tuple(cases), tuple(items))
