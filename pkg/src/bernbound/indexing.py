"""Multi-index arithmetic and enumeration for Bernstein coefficient grids.

A multi-index ``alpha = (alpha_0, ..., alpha_n)`` addresses one Bernstein
coefficient of degree ``k = |alpha|`` over an ``n``-simplex.  The truncation
dropping the 0th entry, written ``alpha_hat``, addresses power-basis
exponents.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator, Sequence, Tuple

from .errors import ComponentExceeds, OrderExceedsDegree


class MultiIndex(tuple):
    """An (n+1)-tuple of nonnegative integers addressing one coefficient."""

    __slots__ = ()

    def __new__(cls, entries: Sequence[int]) -> "MultiIndex":
        entries = tuple(int(e) for e in entries)
        if any(e < 0 for e in entries):
            raise ValueError(f"multi-index entries must be nonnegative: {entries}")
        return super().__new__(cls, entries)

    @property
    def entries(self) -> Tuple[int, ...]:
        return tuple(self)

    @property
    def order(self) -> int:
        return sum(self)

    @property
    def hat(self) -> Tuple[int, ...]:
        """The view dropping the 0th entry."""
        return tuple(self[1:])

    def vertex_slot(self) -> int | None:
        """Return i if this index is k*e_i (a vertex index), else None."""
        k = self.order
        for i, e in enumerate(self):
            if e == k:
                return i
        return None


def binom_multi(a: Sequence[int], b: Sequence[int]) -> int:
    """Product of componentwise binomials, prod_i C(a_i, b_i), exactly."""
    if len(a) != len(b):
        raise ComponentExceeds(f"length mismatch: {tuple(a)} vs {tuple(b)}")
    result = 1
    for ai, bi in zip(a, b):
        if bi > ai:
            raise ComponentExceeds(f"component {bi} exceeds {ai} in C({tuple(a)}, {tuple(b)})")
        result *= comb(ai, bi)
    return result


def binom_graded(k: int, bhat: Sequence[int]) -> int:
    """Multinomial k! / (b_1! ... b_n! (k - |bhat|)!), exactly."""
    total = sum(bhat)
    if total > k:
        raise OrderExceedsDegree(f"|{tuple(bhat)}| = {total} exceeds degree {k}")
    result = 1
    remaining = k
    for b in bhat:
        result *= comb(remaining, b)
        remaining -= b
    return result


def _hat_indices(total: int, length: int) -> Iterator[Tuple[int, ...]]:
    """All length-tuples of nonnegative ints summing to total, lex ascending."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _hat_indices(total - first, length - 1):
            yield (first,) + rest


class IndexSet:
    """All multi-indices of one degree over one simplex dimension.

    The order is graded lexicographic on the truncation (alpha_1, ..., alpha_n)
    with alpha_0 = k - |alpha_hat| implicit: indices are sorted by |alpha_hat|
    first and lexicographically within each grade.  The order is total,
    deterministic, and the contract for every coefficient list in the package.
    """

    __slots__ = ("degree", "dimension", "indices", "_positions")

    def __init__(self, degree: int, dimension: int):
        if degree < 0:
            raise ValueError(f"degree must be nonnegative, got {degree}")
        if dimension < 1:
            raise ValueError(f"dimension must be at least 1, got {dimension}")
        self.degree = degree
        self.dimension = dimension
        indices = []
        for grade in range(degree + 1):
            for hat in _hat_indices(grade, dimension):
                indices.append(MultiIndex((degree - grade,) + hat))
        self.indices = tuple(indices)
        self._positions = {tuple(ix): pos for pos, ix in enumerate(indices)}

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.indices)

    def __getitem__(self, pos: int) -> MultiIndex:
        return self.indices[pos]

    def position(self, alpha: Sequence[int]) -> int:
        """Position of a multi-index in canonical order."""
        return self._positions[tuple(alpha)]

    def vertex_positions(self) -> Tuple[int, ...]:
        """Positions of the vertex indices k*e_i for i = 0..n."""
        k, n = self.degree, self.dimension
        out = []
        for i in range(n + 1):
            alpha = [0] * (n + 1)
            alpha[i] = k
            out.append(self.position(alpha))
        return tuple(out)


@lru_cache(maxsize=None)
def enumerate_indices(degree: int, dimension: int) -> IndexSet:
    """The canonical IndexSet of all |alpha| = degree indices (cached)."""
    return IndexSet(degree, dimension)
