import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from src.IntersectionPairing import keel_pairing
from src.ModuliLabels import (
    BoundaryLabel,
    FCurve,
    FourTuple,
    enumerate_boundary,
    enumerate_fcurves,
    enumerate_four_tuples,
    fcurve_types,
)
from src.exceptions import InvalidSplitError, NoAdmissibleSplitError

logger = logging.getLogger(__name__)

Split = tuple[int, int, int, int]


def admissible_splits(label: BoundaryLabel, curve_type) -> list[Split]:
    """Size splits (|A|,|B|,|C|,|D|) with |A|+|B| = |J|, normalized |A| <= |B| and |C| <= |D|"""
    curve_type = tuple(sorted(curve_type))
    if sum(curve_type) != label.n or len(curve_type) != 4:
        return []
    splits = set()
    for first in itertools.combinations(range(4), 2):
        a, b = sorted(curve_type[i] for i in first)
        c, d = sorted(curve_type[i] for i in range(4) if i not in first)
        if a + b == label.size:
            splits.add((a, b, c, d))
    return sorted(splits)


def f_collection(label: BoundaryLabel, curve_type, split: Split | None = None) -> list[FCurve]:
    """
    F-curves of the given type with two parts uniting to J

    :param split: restrict to curves whose J-side parts have these sizes
    """
    curve_type = tuple(sorted(curve_type))
    curves = []
    for curve in enumerate_fcurves(label.n):
        if curve.type != curve_type:
            continue
        for first in itertools.combinations(range(4), 2):
            inner = [curve.parts[i] for i in first]
            if inner[0] | inner[1] != label.mask:
                continue
            outer = [curve.parts[i] for i in range(4) if i not in first]
            sizes = tuple(sorted(m.bit_count() for m in inner)) + tuple(sorted(m.bit_count() for m in outer))
            if split is None or sizes == tuple(split):
                curves.append(curve)
                break
    return curves


def keel_multiplicity(label: BoundaryLabel, curve_type, split: Split) -> Fraction:
    """m_t = 3 m' for one split of J"""
    a, b, c, d = split
    if tuple(split) not in admissible_splits(label, curve_type):
        raise InvalidSplitError(str(label), tuple(curve_type), tuple(split))
    n, size = label.n, label.size
    m_prime = ((2 - (a == b)) * (2 - (c == d)) *
               math.comb(size - 2, a - 1) * math.comb(n - size - 2, c - 1))
    return Fraction(3 * m_prime)


@dataclass(frozen=True)
class SplitCertificate:
    split: Split
    curves: tuple[FCurve, ...]
    multiplicity: Fraction
    lhs: dict[FourTuple, Fraction] = field(hash=False)
    passed: bool

    def lhs_text(self) -> str:
        terms = [f"{v}*{four}" for four, v in sorted(self.lhs.items(), key=lambda item: item[0].sort_key())]
        return ' + '.join(terms) if terms else '0'

    def to_certificate_text(self, label: BoundaryLabel) -> str:
        """The collection in certificate grammar, unit weights and claim >= 0"""
        lines = [f"n: {label.n}", f"target: {label.functional_id}", "claim: >= 0"]
        lines.extend(f"1 * {curve}" for curve in self.curves)
        return '\n'.join(lines) + '\n'

    def to_dict(self) -> dict:
        return {
            'split': ','.join(str(s) for s in self.split),
            'curves': len(self.curves),
            'm_t': str(self.multiplicity),
            'lhs': self.lhs_text(),
            'identity': 'PASS' if self.passed else 'FAIL',
        }


@dataclass(frozen=True)
class KeelCoefficientReport:
    label: BoundaryLabel
    curve_type: tuple[int, ...]
    splits: tuple[SplitCertificate, ...]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.splits)

    def to_dict(self) -> dict:
        return {
            'n': self.label.n,
            'J': str(self.label),
            'type': ','.join(str(t) for t in self.curve_type),
            'splits': [s.to_dict() for s in self.splits],
            'verdict': 'PASS' if self.passed else 'FAIL',
        }


def _prove_split(label: BoundaryLabel, curve_type, split: Split) -> SplitCertificate:
    curves = tuple(f_collection(label, curve_type, split))
    multiplicity = keel_multiplicity(label, curve_type, split)
    lhs = {}
    for four in enumerate_four_tuples(label.n):
        total = sum((keel_pairing(four, curve) for curve in curves), Fraction(0))
        if total:
            lhs[four] = total
    # m_t * c_J = (m_t / 3) * sum of s_I over |I & J| = 2
    expected = {four: multiplicity / 3 for four in enumerate_four_tuples(label.n)
                if (four.mask & label.mask).bit_count() == 2}
    passed = lhs == expected
    if not passed:
        logger.warning("%s type %s split %s: %s != %s", label, tuple(curve_type), split, lhs, expected)
    return SplitCertificate(split, curves, multiplicity, lhs, passed)


def prove_keel_coefficient(label: BoundaryLabel, curve_type) -> KeelCoefficientReport:
    """
    Check sum over F^t_J of <sum s_I S_I, C> = m_t c_J(s) as functionals in s

    :raises NoAdmissibleSplitError: If no two entries of t add up to |J|
    """
    curve_type = tuple(sorted(curve_type))
    splits = admissible_splits(label, curve_type)
    if not splits:
        raise NoAdmissibleSplitError(str(label), curve_type)
    return KeelCoefficientReport(label, curve_type, tuple(_prove_split(label, curve_type, s) for s in splits))


def prove_all_keel_coefficients(n: int) -> list[KeelCoefficientReport]:
    reports = []
    for label in enumerate_boundary(n):
        for curve_type in fcurve_types(n):
            if admissible_splits(label, curve_type):
                reports.append(prove_keel_coefficient(label, curve_type))
    logger.info("checked %d Keel coefficient certificates for n=%d", len(reports), n)
    return reports
