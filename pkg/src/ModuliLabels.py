"""Canonical labels on the marked points {1..n}.

Subsets are bitmasks with point ``i`` stored at bit ``i - 1``.
"""
import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from src.exceptions import (
    DimensionMismatchError,
    InvalidPartitionError,
    InvalidPointCountError,
    InvalidSubsetError,
    NotABijectionError,
)

MAX_POINTS = 63

_SET_RE = re.compile(r'^\s*[A-Za-z]\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}\s*$')
_CURVE_RE = re.compile(r'^\s*C\(\s*(.*?)\s*\)\s*$')


def to_mask(points: Iterable[int]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << (p - 1)
    return mask


def to_points(mask: int) -> tuple[int, ...]:
    points = []
    i = 1
    while mask:
        if mask & 1:
            points.append(i)
        mask >>= 1
        i += 1
    return tuple(points)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def format_set(mask: int) -> str:
    return '{' + ','.join(str(p) for p in to_points(mask)) + '}'


def parse_index_set(text: str) -> tuple[int, ...]:
    """Parse "D{1,2}", "c{1,2,3}" or "s{1,2,3,4}" into its sorted points"""
    match = _SET_RE.match(text)
    if not match:
        raise ValueError(f"Cannot parse index set '{text}'")
    return tuple(sorted(int(p) for p in match.group(1).split(',')))


def _check_n(n: int, minimum: int = 4) -> None:
    if n < minimum or n > MAX_POINTS:
        raise InvalidPointCountError(n, minimum, MAX_POINTS)


def _check_points(n: int, points: Iterable[int]) -> tuple[int, ...]:
    points = tuple(points)
    if any(p < 1 or p > n for p in points):
        raise InvalidSubsetError(n, points, "points must lie in 1..n")
    if len(set(points)) != len(points):
        raise InvalidSubsetError(n, points, "repeated point")
    return points


def _set_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return mask.bit_count(), to_points(mask)


class Permutation:
    """A bijection of {1..n}; ``images[i - 1]`` is the image of ``i``"""

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise NotABijectionError(images)
        self.images = images
        self.n = n

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> 'Permutation':
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images)

    @classmethod
    def from_cycles(cls, n: int, *cycles: Iterable[int]) -> 'Permutation':
        images = list(range(1, n + 1))
        for cycle in cycles:
            cycle = tuple(cycle)
            for k, p in enumerate(cycle):
                images[p - 1] = cycle[(k + 1) % len(cycle)]
        return cls(images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        """Composition: (self * other)(x) = self(other(x))"""
        if self.n != other.n:
            raise DimensionMismatchError(self.n, other.n)
        return Permutation(self(other(i)) for i in range(1, self.n + 1))

    def inverse(self) -> 'Permutation':
        images = [0] * self.n
        for i, image in enumerate(self.images, start=1):
            images[image - 1] = i
        return Permutation(images)

    def apply_mask(self, mask: int) -> int:
        return to_mask(self(p) for p in to_points(mask))

    def fixes_set(self, mask: int) -> bool:
        return self.apply_mask(mask) == mask

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.images})"


@dataclass(frozen=True)
class BoundaryLabel:
    """Canonical representative of the pair {J, J^c}"""
    n: int
    mask: int

    @classmethod
    def of(cls, n: int, points: Iterable[int]) -> 'BoundaryLabel':
        _check_n(n)
        points = _check_points(n, points)
        return cls.from_mask(n, to_mask(points))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> 'BoundaryLabel':
        size = mask.bit_count()
        if size < 2 or size > n - 2:
            raise InvalidSubsetError(n, to_points(mask), "size must lie in 2..n-2")
        complement = full_mask(n) ^ mask
        if size > n - size or (2 * size == n and not mask & 1):
            mask = complement
        return cls(n, mask)

    @classmethod
    def parse(cls, n: int, text: str) -> 'BoundaryLabel':
        return cls.of(n, parse_index_set(text))

    @property
    def points(self) -> tuple[int, ...]:
        return to_points(self.mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def complement_mask(self) -> int:
        return full_mask(self.n) ^ self.mask

    def sort_key(self):
        return _set_key(self.mask)

    def __lt__(self, other: 'BoundaryLabel') -> bool:
        return self.sort_key() < other.sort_key()

    def relabel(self, sigma: Permutation) -> 'BoundaryLabel':
        if sigma.n != self.n:
            raise DimensionMismatchError(self.n, sigma.n)
        return BoundaryLabel.from_mask(self.n, sigma.apply_mask(self.mask))

    @property
    def functional_id(self) -> str:
        return 'c' + format_set(self.mask)

    def __str__(self):
        return 'D' + format_set(self.mask)


@dataclass(frozen=True)
class FourTuple:
    n: int
    mask: int

    @classmethod
    def of(cls, n: int, points: Iterable[int]) -> 'FourTuple':
        _check_n(n)
        points = _check_points(n, points)
        if len(points) != 4:
            raise InvalidSubsetError(n, points, "a four-tuple needs exactly four points")
        return cls(n, to_mask(points))

    @classmethod
    def parse(cls, n: int, text: str) -> 'FourTuple':
        return cls.of(n, parse_index_set(text))

    @property
    def points(self) -> tuple[int, ...]:
        return to_points(self.mask)

    def sort_key(self):
        return to_points(self.mask)

    def __lt__(self, other: 'FourTuple') -> bool:
        return self.sort_key() < other.sort_key()

    def relabel(self, sigma: Permutation) -> 'FourTuple':
        if sigma.n != self.n:
            raise DimensionMismatchError(self.n, sigma.n)
        return FourTuple(self.n, sigma.apply_mask(self.mask))

    def __str__(self):
        return 's' + format_set(self.mask)


@dataclass(frozen=True)
class FCurve:
    """An F-curve C(A, B, C, D); parts are masks ordered by their smallest point"""
    n: int
    parts: tuple[int, int, int, int]

    @classmethod
    def of(cls, n: int, parts: Iterable[Iterable[int]]) -> 'FCurve':
        _check_n(n)
        parts = [tuple(part) for part in parts]
        masks = []
        for part in parts:
            if not part:
                raise InvalidPartitionError(n, parts, "empty part")
            masks.append(to_mask(_check_points(n, part)))
        return cls.from_masks(n, masks)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> 'FCurve':
        masks = list(masks)
        if len(masks) != 4:
            raise InvalidPartitionError(n, [to_points(m) for m in masks], "need exactly four parts")
        union = 0
        for m in masks:
            if not m:
                raise InvalidPartitionError(n, [to_points(m) for m in masks], "empty part")
            if union & m:
                raise InvalidPartitionError(n, [to_points(m) for m in masks], "parts overlap")
            union |= m
        if union != full_mask(n):
            raise InvalidPartitionError(n, [to_points(m) for m in masks], "parts do not cover 1..n")
        return cls(n, tuple(sorted(masks, key=lambda m: m & -m)))

    @classmethod
    def parse(cls, text: str) -> 'FCurve':
        match = _CURVE_RE.match(text)
        if not match:
            raise ValueError(f"Cannot parse F-curve '{text}'")
        parts = [[int(p) for p in chunk.split(',')] for chunk in match.group(1).split('|')]
        return cls.of(sum(len(p) for p in parts), parts)

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(sorted(m.bit_count() for m in self.parts))

    @property
    def point_parts(self) -> tuple[tuple[int, ...], ...]:
        return tuple(to_points(m) for m in self.parts)

    def sort_key(self):
        return self.point_parts

    def __lt__(self, other: 'FCurve') -> bool:
        return self.sort_key() < other.sort_key()

    @cached_property
    def pairing_table(self) -> dict[int, int]:
        """Nonzero intersections with boundary labels, keyed by canonical mask"""
        table = {}
        for a, b in itertools.combinations(self.parts, 2):
            table[BoundaryLabel.from_mask(self.n, a | b).mask] = 1
        for part in self.parts:
            if part.bit_count() >= 2:
                table[BoundaryLabel.from_mask(self.n, part).mask] = -1
        return table

    def relabel(self, sigma: Permutation) -> 'FCurve':
        if sigma.n != self.n:
            raise DimensionMismatchError(self.n, sigma.n)
        return FCurve.from_masks(self.n, (sigma.apply_mask(m) for m in self.parts))

    def __str__(self):
        return 'C(' + '|'.join(','.join(str(p) for p in part) for part in self.point_parts) + ')'


@lru_cache(maxsize=None)
def enumerate_boundary(n: int) -> tuple[BoundaryLabel, ...]:
    _check_n(n)
    labels = set()
    for size in range(2, n // 2 + 1):
        for points in itertools.combinations(range(1, n + 1), size):
            labels.add(BoundaryLabel.from_mask(n, to_mask(points)))
    return tuple(sorted(labels, key=BoundaryLabel.sort_key))


@lru_cache(maxsize=None)
def enumerate_four_tuples(n: int) -> tuple[FourTuple, ...]:
    _check_n(n)
    return tuple(FourTuple(n, to_mask(points)) for points in itertools.combinations(range(1, n + 1), 4))


def _set_partitions(n: int, blocks: int):
    """Restricted growth strings with exactly ``blocks`` distinct values"""
    def extend(prefix: list[int], used: int):
        if len(prefix) == n:
            if used == blocks:
                yield prefix
            return
        remaining = n - len(prefix)
        if used + remaining < blocks:
            return
        for b in range(min(used + 1, blocks)):
            yield from extend(prefix + [b], max(used, b + 1))
    yield from extend([], 0)


@lru_cache(maxsize=None)
def enumerate_fcurves(n: int) -> tuple[FCurve, ...]:
    _check_n(n)
    curves = []
    for growth in _set_partitions(n, 4):
        masks = [0, 0, 0, 0]
        for point, block in enumerate(growth, start=1):
            masks[block] |= 1 << (point - 1)
        curves.append(FCurve.from_masks(n, masks))
    return tuple(sorted(curves, key=FCurve.sort_key))


def fcurve_types(n: int) -> list[tuple[int, int, int, int]]:
    """Partitions of n into four positive parts, ascending"""
    _check_n(n)
    return sorted({tuple(sorted(t)) for t in itertools.product(range(1, n - 2), repeat=4) if sum(t) == n})


def symmetric_group(n: int) -> list[Permutation]:
    return [Permutation(images) for images in itertools.permutations(range(1, n + 1))]


def set_stabilizer(n: int, fixed_sets: Iterable[Iterable[int]]) -> list[Permutation]:
    """All permutations mapping each given set onto itself"""
    masks = [to_mask(s) for s in fixed_sets]
    return [sigma for sigma in symmetric_group(n) if all(sigma.fixes_set(m) for m in masks)]


def relabel(obj, sigma: Permutation):
    """Apply sigma elementwise to a label, four-tuple or curve and canonicalize"""
    return obj.relabel(sigma)
