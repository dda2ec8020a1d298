"""Certificate text, lint and exact verification.

A certificate is a nonnegative weighting of F-curves whose pairing with the
obvious representative decomposes as ``m * c_target + sum a_k * g_k`` over the
normalization and assumption functionals ``g_k``. With ``m > 0`` and the known
values or intervals of the ``g_k``, F-nefness then bounds ``c_target`` below.
"""
import logging
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from src.M07Basis import DIM, coefficient_functional, f_inequality_row
from src.ModuliLabels import BoundaryLabel, FCurve, Permutation, parse_index_set, to_mask
from src.RationalMatrix import RatMatrix
from src.configs.BasisParams import ParamTriple
from src.const import EXIT_BOUND_GAP, EXIT_LINT, EXIT_PASS, EXIT_RESIDUAL, M07_POINTS
from src.exceptions import CertificateLintError, CertificateSyntaxError, DimensionMismatchError, DomainError

logger = logging.getLogger(__name__)

PASS = 'PASS'
BOUND_GAP = 'BOUND_GAP'
RESIDUAL = 'RESIDUAL'
DEGENERATE = 'DEGENERATE'
EMPTY = 'EMPTY'
LINT = 'LINT'

EXIT_CODES = {
    PASS: EXIT_PASS,
    BOUND_GAP: EXIT_BOUND_GAP,
    RESIDUAL: EXIT_RESIDUAL,
    DEGENERATE: EXIT_RESIDUAL,
    EMPTY: EXIT_RESIDUAL,
    LINT: EXIT_LINT,
}

_RATIONAL = r'[-+]?\d+(?:/\d+)?'
_HEADER_RE = re.compile(r'^(n|params|target|claim)\s*:\s*(.*)$')
_MINIMIZE_RE = re.compile(r'^minimize\s+(c\{[^}]*\})\s*$')
_CLAIM_RE = re.compile(rf'^>=\s*({_RATIONAL})$')
_SET_RE = re.compile(rf'^set\s+(c\{{[^}}]*\}})\s*=\s*({_RATIONAL})\s*$')
_ASSUME_RE = re.compile(rf'^assume\s+(c\{{[^}}]*\}})\s*(<=|>=)\s*({_RATIONAL})\s*$')
_TERM_RE = re.compile(r'^(\S+?)\s*\*\s*C\((.*)\)\s*$')


@dataclass(frozen=True)
class Normalization:
    label: BoundaryLabel
    value: Fraction

    def relabel(self, sigma: Permutation) -> 'Normalization':
        return Normalization(self.label.relabel(sigma), self.value)

    def __str__(self):
        return f"set {self.label.functional_id} = {self.value}"


@dataclass(frozen=True)
class Assumption:
    label: BoundaryLabel
    sense: str
    value: Fraction

    def relabel(self, sigma: Permutation) -> 'Assumption':
        return Assumption(self.label.relabel(sigma), self.sense, self.value)

    def __str__(self):
        return f"assume {self.label.functional_id} {self.sense} {self.value}"


@dataclass(frozen=True)
class LintFinding:
    line: int
    term: str
    repeated: tuple[int, ...]
    uncovered: tuple[int, ...]
    message: str

    def to_dict(self) -> dict:
        return {
            'line': self.line,
            'term': self.term,
            'repeated': list(self.repeated),
            'uncovered': list(self.uncovered),
        }


@dataclass(frozen=True)
class CertificateTerm:
    weight: Fraction
    parts: tuple[tuple[int, ...], ...]
    curve: FCurve | None
    line: int = 0

    @property
    def curve_text(self) -> str:
        return 'C(' + '|'.join(','.join(str(p) for p in part) for part in self.parts) + ')'

    def __str__(self):
        return f"{self.weight} * {self.curve_text}"


@dataclass(frozen=True)
class Certificate:
    n: int
    target: BoundaryLabel
    claim: Fraction | None
    params: ParamTriple = field(default_factory=ParamTriple.default)
    normalizations: tuple[Normalization, ...] = ()
    assumptions: tuple[Assumption, ...] = ()
    terms: tuple[CertificateTerm, ...] = ()
    findings: tuple[LintFinding, ...] = ()
    minimize: bool = False
    cert_id: str = ''

    @property
    def curve_weights(self) -> dict[FCurve, Fraction]:
        weights: dict[FCurve, Fraction] = {}
        for term in self.terms:
            if term.curve is not None:
                weights[term.curve] = weights.get(term.curve, Fraction(0)) + term.weight
        return weights

    def functionals(self) -> list[BoundaryLabel]:
        """Normalization and assumption labels in order of first appearance"""
        labels = []
        for label in [s.label for s in self.normalizations] + [a.label for a in self.assumptions]:
            if label not in labels:
                labels.append(label)
        return labels

    def to_text(self) -> str:
        lines = [f"n: {self.n}", f"params: {self.params.to_text()}"]
        if self.minimize:
            lines.append(f"minimize {self.target.functional_id}")
        else:
            lines.append(f"target: {self.target.functional_id}")
            lines.append(f"claim: >= {self.claim}")
        lines.extend(str(s) for s in self.normalizations)
        lines.extend(str(a) for a in self.assumptions)
        lines.extend(str(t) for t in self.terms)
        return '\n'.join(lines) + '\n'

    def scale(self, factor) -> 'Certificate':
        """
        Multiply every weight by a positive rational

        :raises ValueError: If the factor is not positive
        """
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError(f"Scaling factor must be positive, got {factor}")
        return replace(self, terms=tuple(replace(t, weight=t.weight * factor) for t in self.terms))

    def relabel(self, sigma: Permutation) -> 'Certificate':
        if sigma.n != self.n:
            raise DimensionMismatchError(self.n, sigma.n)
        terms = []
        for t in self.terms:
            parts = tuple(tuple(sigma(p) if 1 <= p <= self.n else p for p in part) for part in t.parts)
            curve = t.curve.relabel(sigma) if t.curve is not None else None
            terms.append(replace(t, parts=parts, curve=curve))
        return replace(self,
                       target=self.target.relabel(sigma),
                       normalizations=tuple(s.relabel(sigma) for s in self.normalizations),
                       assumptions=tuple(a.relabel(sigma) for a in self.assumptions),
                       terms=tuple(terms),
                       findings=())


def _functional_label(n: int, text: str, line: int, column: int) -> BoundaryLabel:
    if not text.startswith('c{'):
        raise CertificateSyntaxError(line, column, f"expected a functional id like c{{1,2,3}}, got '{text}'")
    try:
        return BoundaryLabel.of(n, parse_index_set(text))
    except (ValueError, DomainError):
        raise CertificateSyntaxError(line, column, f"cannot parse functional id '{text}'")


def _lint_parts(n: int, parts: tuple[tuple[int, ...], ...], line: int, text: str) -> LintFinding | None:
    points = [p for part in parts for p in part]
    repeated = tuple(sorted({p for p in points if points.count(p) > 1}))
    uncovered = tuple(p for p in range(1, n + 1) if p not in points)
    outside = sorted({p for p in points if p < 1 or p > n})
    if not (repeated or uncovered or outside):
        return None
    problems = []
    if repeated:
        problems.append("repeats " + ','.join(str(p) for p in repeated))
    if uncovered:
        problems.append("does not cover " + ','.join(str(p) for p in uncovered))
    if outside:
        problems.append("names points outside 1.." + str(n))
    return LintFinding(line, text, repeated, uncovered, f"{text} " + ' and '.join(problems))


def _parse_term(n: int, raw: str, line: int, indent: int) -> tuple[CertificateTerm, LintFinding | None]:
    match = _TERM_RE.match(raw)
    if not match:
        raise CertificateSyntaxError(line, indent + 1, f"unrecognized statement '{raw}'")
    try:
        weight = Fraction(match.group(1))
    except (ValueError, ZeroDivisionError):
        raise CertificateSyntaxError(line, indent + 1, f"invalid weight '{match.group(1)}'")
    chunks = match.group(2).split('|')
    if len(chunks) != 4:
        raise CertificateSyntaxError(line, indent + match.start(2) + 1, f"an F-curve needs four parts, got {len(chunks)}")
    parts = []
    for chunk in chunks:
        try:
            parts.append(tuple(int(p) for p in chunk.split(',')))
        except ValueError:
            raise CertificateSyntaxError(line, indent + match.start(2) + 1, f"invalid part '{chunk.strip()}'")
    parts = tuple(parts)
    term_text = 'C(' + '|'.join(','.join(str(p) for p in part) for part in parts) + ')'
    finding = _lint_parts(n, parts, line, term_text)
    if finding is None and weight <= 0:
        finding = LintFinding(line, term_text, (), (), f"{term_text} has nonpositive weight {weight}")
    curve = None if finding is not None else FCurve.from_masks(n, (to_mask(part) for part in parts))
    return CertificateTerm(weight, parts, curve, line), finding


def parse_certificate(text: str, strict: bool = False, cert_id: str = '') -> Certificate:
    """
    Parse certificate or problem text

    :param strict: raise on the first lint finding instead of recording it
    :raises CertificateSyntaxError: If a statement does not follow the grammar
    :raises CertificateLintError: In strict mode, if a term names a malformed curve
    """
    n = None
    params = ParamTriple.default()
    target = None
    claim = None
    minimize = False
    normalizations, assumptions, terms, findings = [], [], [], []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        content = raw_line.split('#', 1)[0].rstrip()
        stripped = content.lstrip()
        if not stripped:
            continue
        indent = len(content) - len(stripped)
        header = _HEADER_RE.match(stripped)
        if header:
            key, value = header.group(1), header.group(2).strip()
            column = indent + header.start(2) + 1
            if key == 'n':
                if not value.isdigit():
                    raise CertificateSyntaxError(number, column, f"invalid point count '{value}'")
                n = int(value)
                continue
            if n is None:
                raise CertificateSyntaxError(number, indent + 1, "the 'n:' header must come first")
            if key == 'params':
                try:
                    params = ParamTriple.parse(value)
                except ValueError as e:
                    raise CertificateSyntaxError(number, column, str(e))
            elif key == 'target':
                target = _functional_label(n, value, number, column)
            else:
                claim_match = _CLAIM_RE.match(value)
                if not claim_match:
                    raise CertificateSyntaxError(number, column, f"claim must read '>= RATIONAL', got '{value}'")
                claim = Fraction(claim_match.group(1))
            continue
        if n is None:
            raise CertificateSyntaxError(number, indent + 1, "the 'n:' header must come first")
        if stripped.startswith('minimize'):
            match = _MINIMIZE_RE.match(stripped)
            if not match:
                raise CertificateSyntaxError(number, indent + 1, f"malformed objective '{stripped}'")
            target = _functional_label(n, match.group(1), number, indent + match.start(1) + 1)
            minimize = True
        elif stripped.startswith('set'):
            match = _SET_RE.match(stripped)
            if not match:
                raise CertificateSyntaxError(number, indent + 1, f"malformed normalization '{stripped}'")
            label = _functional_label(n, match.group(1), number, indent + match.start(1) + 1)
            normalizations.append(Normalization(label, Fraction(match.group(2))))
        elif stripped.startswith('assume'):
            match = _ASSUME_RE.match(stripped)
            if not match:
                raise CertificateSyntaxError(number, indent + 1, f"malformed assumption '{stripped}'")
            label = _functional_label(n, match.group(1), number, indent + match.start(1) + 1)
            assumptions.append(Assumption(label, match.group(2), Fraction(match.group(3))))
        else:
            term, finding = _parse_term(n, stripped, number, indent)
            if finding is not None:
                if strict:
                    raise CertificateLintError(finding)
                logger.warning("line %d: %s", number, finding.message)
                findings.append(finding)
            terms.append(term)
    if n is None:
        raise CertificateSyntaxError(1, 1, "missing 'n:' header")
    if target is None:
        raise CertificateSyntaxError(1, 1, "missing 'target:' or 'minimize' statement")
    if claim is None and not minimize:
        raise CertificateSyntaxError(1, 1, "missing 'claim:' header")
    return Certificate(n, target, claim, params, tuple(normalizations), tuple(assumptions),
                       tuple(terms), tuple(findings), minimize, cert_id)


@dataclass(frozen=True)
class VerificationReport:
    cert_id: str
    target: str
    status: str
    claimed: Fraction | None
    m: Fraction | None = None
    coefficients: dict[str, Fraction] = field(default_factory=dict, hash=False)
    implied_bound: Fraction | None = None
    findings: tuple[LintFinding, ...] = ()
    repaired: bool = False

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    @property
    def outcome(self) -> str:
        if self.status == PASS and self.repaired:
            return 'REPAIRED'
        return self.status

    def to_dict(self) -> dict:
        result = {
            'id': self.cert_id,
            'target': self.target,
            'status': self.outcome,
            'claimed': None if self.claimed is None else str(self.claimed),
        }
        if self.m is not None:
            result['m'] = str(self.m)
            result['coefficients'] = {k: str(v) for k, v in self.coefficients.items()}
        if self.implied_bound is not None:
            result['implied_bound'] = str(self.implied_bound)
        if self.findings:
            result['findings'] = [f.message for f in self.findings]
        return result


@lru_cache(maxsize=4096)
def _row_at(curve: FCurve, params: ParamTriple) -> tuple[Fraction, ...]:
    return f_inequality_row(curve).evaluate(params)


def pairing_functional(certificate: Certificate) -> tuple[Fraction, ...]:
    """L = sum of w_C times the F-inequality row of C, over the 42 coordinates"""
    total = [Fraction(0)] * DIM
    for curve, weight in certificate.curve_weights.items():
        for k, value in enumerate(_row_at(curve, certificate.params)):
            if value:
                total[k] += weight * value
    return tuple(total)


def _worst_case(certificate: Certificate, label: BoundaryLabel, coefficient: Fraction) -> Fraction | None:
    """Lower bound of -coefficient * g over the known values of g, None if unbounded"""
    for s in certificate.normalizations:
        if s.label == label:
            return -coefficient * s.value
    sense = '<=' if coefficient > 0 else '>='
    bounds = [a.value for a in certificate.assumptions if a.label == label and a.sense == sense]
    if not bounds:
        return None
    value = min(bounds) if sense == '<=' else max(bounds)
    return -coefficient * value


def verify_certificate(certificate: Certificate) -> VerificationReport:
    """Decompose the certificate's pairing functional and derive the bound it proves"""
    report = VerificationReport(certificate.cert_id, certificate.target.functional_id, PASS, certificate.claim,
                                findings=certificate.findings)
    if certificate.findings:
        return replace(report, status=LINT)
    if not certificate.curve_weights:
        return replace(report, status=EMPTY)
    if certificate.n != M07_POINTS:
        raise DimensionMismatchError(M07_POINTS, certificate.n)
    params = certificate.params
    total = pairing_functional(certificate)
    labels = [certificate.target] + certificate.functionals()
    columns = [coefficient_functional(label).evaluate(params) for label in labels]
    solution = RatMatrix.from_columns(columns).solve(total)
    if solution is None:
        logger.info("%s: pairing functional leaves a residual", certificate.cert_id or certificate.target)
        return replace(report, status=RESIDUAL)
    m, coefficients = solution[0], solution[1:]
    named = {label.functional_id: a for label, a in zip(labels[1:], coefficients)}
    report = replace(report, m=m, coefficients=named)
    if m <= 0:
        return replace(report, status=DEGENERATE)
    bound = Fraction(0)
    for label, a in zip(labels[1:], coefficients):
        if not a:
            continue
        part = _worst_case(certificate, label, a)
        if part is None:
            return replace(report, status=BOUND_GAP)
        bound += part
    bound /= m
    status = PASS if certificate.claim is None or bound >= certificate.claim else BOUND_GAP
    logger.info("%s: %s >= %s (%s)", certificate.cert_id or 'certificate', certificate.target.functional_id,
                bound, status)
    return replace(report, implied_bound=bound, status=status)


def combined_exit_code(reports) -> int:
    return max((r.exit_code for r in reports), default=EXIT_PASS)
