import hashlib
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import yaml

from src.Certificates import Assumption, Certificate, LintFinding, parse_certificate
from src.exceptions import (
    CorpusAnnotationError,
    CorpusChecksumError,
    CorpusEntryNotFoundError,
    CorpusError,
)

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).parent / 'corpus'


@dataclass(frozen=True)
class CorpusDefect:
    line: int
    term: str
    repeated: tuple[int, ...] = ()
    uncovered: tuple[int, ...] = ()

    @classmethod
    def from_dict(cls, defect_dict: dict) -> 'CorpusDefect':
        return cls(
            line=int(defect_dict['line']),
            term=defect_dict['term'],
            repeated=tuple(defect_dict.get('repeated') or ()),
            uncovered=tuple(defect_dict.get('uncovered') or ()),
        )

    @classmethod
    def from_finding(cls, finding: LintFinding) -> 'CorpusDefect':
        return cls(finding.line, finding.term, tuple(finding.repeated), tuple(finding.uncovered))

    def to_dict(self) -> dict:
        return {
            'line': self.line,
            'term': self.term,
            'repeated': list(self.repeated),
            'uncovered': list(self.uncovered),
        }


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    path: Path
    case: str
    claim: Fraction
    certificate: Certificate
    defects: tuple[CorpusDefect, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def assumptions(self) -> tuple[Assumption, ...]:
        return self.certificate.assumptions

    @property
    def defective(self) -> bool:
        return bool(self.defects)

    def to_dict(self) -> dict:
        return {
            'id': self.id,
            'file': self.path.name,
            'case': self.case,
            'claim': str(self.claim),
            'assumptions': [str(a) for a in self.assumptions],
            'terms': len(self.certificate.terms),
            'defects': [d.to_dict() for d in self.defects],
        }


class CorpusManager:
    def __init__(self, corpus_dir: str | Path = CORPUS_DIR, index_name: str = 'index.yml'):
        self.corpus_dir = Path(corpus_dir)
        self.index_path = self.corpus_dir / index_name
        self._validate_index_exists()
        self.index = self._load_index()
        self._entries: dict[str, CorpusEntry] | None = None

    def _validate_index_exists(self) -> None:
        if not self.index_path.exists():
            raise CorpusError(f"{self.index_path} does not exist.")

    def _load_index(self) -> list[dict]:
        with open(self.index_path, 'r') as file:
            index = yaml.safe_load(file) or {}
        return index.get('corpus', [])

    @staticmethod
    def checksum(path: Path) -> str:
        return hashlib.sha256(path.read_bytes()).hexdigest()

    def _load_entry(self, record: dict) -> CorpusEntry:
        path = self.corpus_dir / record['file']
        actual = self.checksum(path)
        if actual != record['sha256']:
            raise CorpusChecksumError(str(path), record['sha256'], actual)

        certificate = parse_certificate(path.read_text(), cert_id=record['id'])
        claim = Fraction(str(record['claim']))
        if certificate.claim != claim:
            raise CorpusError(f"Entry '{record['id']}' claims {claim} in the index but {certificate.claim} in {path.name}")

        defects = tuple(CorpusDefect.from_dict(d) for d in record.get('defects') or ())
        found = tuple(CorpusDefect.from_finding(f) for f in certificate.findings)
        if defects != found:
            raise CorpusAnnotationError(record['id'], [d.to_dict() for d in defects], [d.to_dict() for d in found])
        for defect in defects:
            logger.debug("%s line %d: recorded defect %s", record['id'], defect.line, defect.term)

        return CorpusEntry(record['id'], path, record['case'], claim, certificate, defects,
                           tuple(record.get('notes') or ()))

    def entries(self) -> list[CorpusEntry]:
        """
        Every indexed entry, checked against its checksum and recorded defects

        :raises CorpusChecksumError: If a file was altered
        :raises CorpusAnnotationError: If lint findings differ from the recorded defects
        """
        if self._entries is None:
            self._entries = {record['id']: self._load_entry(record) for record in self.index}
            logger.info("loaded %d corpus entries from %s", len(self._entries), self.corpus_dir)
        return list(self._entries.values())

    def get(self, entry_id: str) -> CorpusEntry:
        for entry in self.entries():
            if entry.id == entry_id:
                return entry
        raise CorpusEntryNotFoundError(entry_id)

    def by_case(self, case_id: str) -> list[CorpusEntry]:
        return [entry for entry in self.entries() if entry.case == case_id]


def load_corpus() -> list[CorpusEntry]:
    return CorpusManager().entries()


def appendix_corpus() -> list[Certificate]:
    return [entry.certificate for entry in load_corpus()]
