"""Dense exact matrices over the rationals.

Rank and determinant run fraction-free (Bareiss) on integer-scaled rows; kernels
and solves use Gauss-Jordan elimination over :class:`fractions.Fraction`.
"""
import math
from fractions import Fraction
from typing import Iterable, Sequence

from src.exceptions import (
    DimensionMismatchError,
    InternalConsistencyError,
    NonSquareMatrixError,
    SingularMatrixError,
)

Vector = tuple[Fraction, ...]


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatchError(len(u), len(v))
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def _integer_rows(entries: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale every row to integers; returns the rows and the product of the scales"""
    rows = []
    scale = 1
    for row in entries:
        factor = math.lcm(1, *(v.denominator for v in row))
        rows.append([int(v * factor) for v in row])
        scale *= factor
    return rows, scale


def _bareiss_echelon(a: list[list[int]]) -> tuple[int, int]:
    """
    Fraction-free row echelon form in place

    :return: (rank, sign of the row permutation)
    """
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    rank = 0
    sign = 1
    prev = 1
    for c in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((i for i in range(rank, n_rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            a[rank], a[pivot] = a[pivot], a[rank]
            sign = -sign
        p = a[rank][c]
        pivot_row = a[rank]
        for i in range(rank + 1, n_rows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, n_cols):
                q, r = divmod(p * row[j] - f * pivot_row[j], prev)
                if r:
                    raise InternalConsistencyError('bareiss', f"inexact division at column {j}")
                row[j] = q
            row[c] = 0
        prev = p
        rank += 1
    return rank, sign


class RatMatrix:
    """Immutable dense matrix of rationals stored row-major"""

    def __init__(self, rows: Iterable[Iterable], n_cols: int | None = None):
        entries = tuple(as_vector(row) for row in rows)
        if n_cols is None:
            n_cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != n_cols:
                raise DimensionMismatchError(n_cols, len(row))
        self._entries = entries
        self.n_rows = len(entries)
        self.n_cols = n_cols

    @classmethod
    def identity(cls, n: int) -> 'RatMatrix':
        return cls(([1 if i == j else 0 for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> 'RatMatrix':
        return cls(([0] * n_cols for _ in range(n_rows)), n_cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], n_rows: int | None = None) -> 'RatMatrix':
        if n_rows is None:
            n_rows = len(columns[0]) if columns else 0
        return cls(([col[i] for col in columns] for i in range(n_rows)), len(columns))

    @property
    def entries(self) -> tuple[Vector, ...]:
        return self._entries

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def row(self, i: int) -> Vector:
        return self._entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._entries)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self._entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.shape, self._entries))

    def __repr__(self):
        return f"RatMatrix({self.n_rows}x{self.n_cols})"

    def transpose(self) -> 'RatMatrix':
        return RatMatrix(zip(*self._entries), self.n_rows) if self.n_rows else RatMatrix([], 0)

    def apply(self, vector: Sequence) -> Vector:
        vector = as_vector(vector)
        if len(vector) != self.n_cols:
            raise DimensionMismatchError(self.n_cols, len(vector))
        return tuple(dot(row, vector) for row in self._entries)

    def __matmul__(self, other: 'RatMatrix') -> 'RatMatrix':
        if self.n_cols != other.n_rows:
            raise DimensionMismatchError(self.n_cols, other.n_rows)
        columns = [other.column(j) for j in range(other.n_cols)]
        return RatMatrix(([dot(row, col) for col in columns] for row in self._entries), other.n_cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> 'RatMatrix':
        cols = range(self.n_cols) if cols is None else cols
        return RatMatrix(([self._entries[i][j] for j in cols] for i in rows), len(cols))

    def rank(self) -> int:
        if not self.n_rows or not self.n_cols:
            return 0
        rows, _ = _integer_rows(self._entries)
        rank, _ = _bareiss_echelon(rows)
        return rank

    def det(self) -> Fraction:
        if self.n_rows != self.n_cols:
            raise NonSquareMatrixError(self.n_rows, self.n_cols)
        if not self.n_rows:
            return Fraction(1)
        rows, scale = _integer_rows(self._entries)
        rank, sign = _bareiss_echelon(rows)
        if rank < self.n_rows:
            return Fraction(0)
        return Fraction(sign * rows[-1][-1], scale)

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon form and pivot columns"""
        a = [list(row) for row in self._entries]
        pivots = []
        r = 0
        for c in range(self.n_cols):
            if r == self.n_rows:
                break
            pivot = next((i for i in range(r, self.n_rows) if a[i][c] != 0), None)
            if pivot is None:
                continue
            a[r], a[pivot] = a[pivot], a[r]
            p = a[r][c]
            a[r] = [v / p for v in a[r]]
            pivot_row = a[r]
            for i in range(self.n_rows):
                f = a[i][c]
                if i != r and f:
                    a[i] = [v - f * w if w else v for v, w in zip(a[i], pivot_row)]
            pivots.append(c)
            r += 1
        return a, pivots

    def kernel(self) -> list[Vector]:
        reduced, pivots = self.rref()
        free = [c for c in range(self.n_cols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.n_cols
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -reduced[r][f]
            basis.append(tuple(v))
        return basis

    def independent_rows(self) -> list[int]:
        """Indices of a maximal set of linearly independent rows, greedily from the top"""
        _, pivots = self.transpose().rref()
        return pivots

    def solve(self, rhs: Sequence) -> Vector | None:
        """A particular solution of self * x = rhs, or None if inconsistent"""
        rhs = as_vector(rhs)
        if len(rhs) != self.n_rows:
            raise DimensionMismatchError(self.n_rows, len(rhs))
        augmented = RatMatrix((row + (b,) for row, b in zip(self._entries, rhs)), self.n_cols + 1)
        reduced, pivots = augmented.rref()
        if pivots and pivots[-1] == self.n_cols:
            return None
        x = [Fraction(0)] * self.n_cols
        for r, c in enumerate(pivots):
            x[c] = reduced[r][self.n_cols]
        return tuple(x)

    def inverse(self) -> 'RatMatrix':
        if self.n_rows != self.n_cols:
            raise NonSquareMatrixError(self.n_rows, self.n_cols)
        n = self.n_rows
        augmented = RatMatrix((row + tuple(1 if i == j else 0 for j in range(n))
                               for i, row in enumerate(self._entries)), 2 * n)
        reduced, pivots = augmented.rref()
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise SingularMatrixError(len([p for p in pivots if p < n]), n)
        return RatMatrix((row[n:] for row in reduced), n)


class ExactSolver:
    """Solves many right-hand sides against one tall matrix of full column rank"""

    def __init__(self, matrix: RatMatrix):
        self.matrix = matrix
        rows = matrix.independent_rows()
        if len(rows) < matrix.n_cols:
            raise SingularMatrixError(len(rows), matrix.n_cols)
        self.rows = rows
        self._inverse = matrix.submatrix(rows).inverse()

    def solve(self, rhs: Sequence) -> Vector | None:
        rhs = as_vector(rhs)
        if len(rhs) != self.matrix.n_rows:
            raise DimensionMismatchError(self.matrix.n_rows, len(rhs))
        x = self._inverse.apply([rhs[i] for i in self.rows])
        if self.matrix.apply(x) != rhs:
            return None
        return x


def mat_rank(m: RatMatrix) -> int:
    return m.rank()


def mat_kernel(m: RatMatrix) -> list[Vector]:
    return m.kernel()


def mat_det(m: RatMatrix) -> Fraction:
    return m.det()
