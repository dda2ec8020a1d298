class FnefError(Exception):
    """Base exception class for all toolkit errors"""
    pass


class DomainError(FnefError):
    """Base exception class for mathematically invalid input"""
    pass


class InvalidPointCountError(DomainError):
    """Raised when the number of marked points is out of range"""

    def __init__(self, n: int, minimum: int, maximum: int | None = None):
        self.n = n
        self.minimum = minimum
        self.maximum = maximum
        if maximum is None:
            super().__init__(f"Invalid point count n={n}: must be at least {minimum}")
        else:
            super().__init__(f"Invalid point count n={n}: must lie in {minimum}..{maximum}")


class InvalidSubsetError(DomainError):
    """Raised when a subset of marked points does not satisfy the required shape"""

    def __init__(self, n: int, subset, reason: str):
        self.n = n
        self.subset = subset
        self.reason = reason
        super().__init__(f"Invalid subset {sorted(subset)} for n={n}: {reason}")


class InvalidPartitionError(DomainError):
    """Raised when four parts do not form a partition of the marked points"""

    def __init__(self, n: int, parts, reason: str):
        self.n = n
        self.parts = parts
        self.reason = reason
        super().__init__(f"Invalid F-curve partition {parts} for n={n}: {reason}")


class NotABijectionError(DomainError):
    """Raised when a relabeling is not a permutation"""

    def __init__(self, images):
        self.images = tuple(images)
        super().__init__(f"Not a bijection on 1..{len(self.images)}: {self.images}")


class DimensionMismatchError(DomainError):
    """Raised when two operands live in different dimensions"""

    def __init__(self, expected, received):
        self.expected = expected
        self.received = received
        super().__init__(f"Dimension mismatch: expected {expected}, got {received}")


class NonSquareMatrixError(DomainError):
    """Raised when a square matrix is required"""

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        super().__init__(f"Square matrix required, got {rows}x{cols}")


class SingularMatrixError(DomainError):
    """Raised when a matrix that must be invertible is singular"""

    def __init__(self, rank: int, expected: int):
        self.rank = rank
        self.expected = expected
        super().__init__(f"Matrix is singular: rank {rank}, expected {expected}")


class InvalidSplitError(DomainError):
    """Raised when split sizes do not fit a label and curve type"""

    def __init__(self, label, curve_type, split):
        self.label = label
        self.curve_type = curve_type
        self.split = split
        super().__init__(f"Split {split} is not admissible for {label} and type {curve_type}")


class NoAdmissibleSplitError(DomainError):
    """Raised when no two entries of a curve type add up to the label size"""

    def __init__(self, label, curve_type):
        self.label = label
        self.curve_type = curve_type
        super().__init__(f"{label} admits no split for curve type {curve_type}")


class InvalidKapranovLabelError(DomainError):
    """Raised when a Kapranov label has invalid indices"""

    def __init__(self, n: int, subset, reason: str):
        self.n = n
        self.subset = subset
        self.reason = reason
        super().__init__(f"Invalid Kapranov label {sorted(subset)} for n={n}: {reason}")


class SingularBasisError(DomainError):
    """Raised when (alpha, lambda, mu) does not give a basis of N1 for n=7"""

    def __init__(self, params):
        self.params = params
        super().__init__(f"Parameters {params} give a singular basis")


class UnknownCaseError(DomainError):
    """Raised when an averaging case id is not one of I, II, III, IV"""

    def __init__(self, case_id: str):
        self.case_id = case_id
        super().__init__(f"Unknown case '{case_id}': must be one of I, II, III, IV")


class InternalConsistencyError(FnefError):
    """Raised when two independent computations of the same quantity disagree"""

    def __init__(self, check: str, detail: str):
        self.check = check
        self.detail = detail
        super().__init__(f"Consistency check '{check}' failed: {detail}")


class CertificateError(FnefError):
    """Base exception class for certificate file errors"""
    pass


class CertificateSyntaxError(CertificateError):
    """Raised when certificate text does not follow the grammar"""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class CertificateLintError(CertificateError):
    """Raised in strict mode when a term names a malformed curve"""

    def __init__(self, finding):
        self.finding = finding
        super().__init__(f"line {finding.line}: {finding.message}")


class CorpusError(FnefError):
    """Base exception class for corpus data errors"""
    pass


class CorpusChecksumError(CorpusError):
    """Raised when a corpus file does not match its recorded checksum"""

    def __init__(self, path: str, expected: str, actual: str):
        self.path = path
        self.expected = expected
        self.actual = actual
        super().__init__(f"Checksum mismatch for '{path}': expected {expected}, got {actual}")


class CorpusAnnotationError(CorpusError):
    """Raised when recorded lint annotations differ from the parser's findings"""

    def __init__(self, entry_id: str, expected, found):
        self.entry_id = entry_id
        self.expected = expected
        self.found = found
        super().__init__(f"Lint annotations of '{entry_id}' do not match: recorded {expected}, found {found}")


class CorpusEntryNotFoundError(CorpusError):
    """Raised when an unknown corpus id is requested"""

    def __init__(self, entry_id: str):
        self.entry_id = entry_id
        super().__init__(f"Corpus entry '{entry_id}' does not exist")


class SolverError(FnefError):
    """Base exception class for linear programming failures"""
    pass


class DualExtractionError(SolverError):
    """Raised when the solution read off the final tableau fails its own check"""

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Dual extraction inconsistent: {detail}")


class BoundUnachievableError(FnefError):
    """Raised when the LP optimum is below a claimed bound"""

    def __init__(self, target: str, claimed, optimum):
        self.target = target
        self.claimed = claimed
        self.optimum = optimum
        super().__init__(f"Claimed bound {target} >= {claimed} is unachievable: optimum is {optimum}")


class ConfigurationError(FnefError):
    """Base exception class for runtime configuration errors"""
    pass


class InvalidThreadCountError(ConfigurationError):
    """Raised when the thread cap is not a positive integer"""

    def __init__(self, value: str):
        self.value = value
        super().__init__(f"Invalid thread count '{value}': must be a positive integer")
