"""Simplices with exact rational vertices: barycentric coordinates, grid
points, diameters, affine pullback to the standard simplex, and binary
edge-splitting subdivision.

All geometry is kept in exact rationals.  The only irrational quantity, the
diameter, is never materialized: comparisons go through ``diameter_sq``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .errors import BadEdge, DegenerateSimplex, DegreeMismatch, DimensionMismatch
from .powerpoly import PowerPoly
from .rationals import Rational, format_rational, parse_rational

Point = Tuple[Fraction, ...]


def _as_point(values: Sequence[Rational]) -> Point:
    return tuple(parse_rational(v) for v in values)


@dataclass(frozen=True)
class Simplex:
    """Ordered list of n+1 affinely independent points of R^n."""

    vertices: Tuple[Point, ...]

    def __init__(self, vertices: Sequence[Sequence[Rational]]):
        pts = tuple(_as_point(v) for v in vertices)
        if not pts:
            raise DegenerateSimplex("empty vertex list")
        n = len(pts) - 1
        if n < 1:
            raise DegenerateSimplex("a simplex needs at least two vertices")
        if any(len(p) != n for p in pts):
            raise DegenerateSimplex(
                f"{n + 1} vertices must each have {n} coordinates"
            )
        object.__setattr__(self, "vertices", pts)
        if _rank(self.edge_vectors()) != n:
            raise DegenerateSimplex(f"vertices are affinely dependent: {pts}")

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def vertex(self, i: int) -> Point:
        return self.vertices[i]

    def edge_vectors(self) -> List[List[Fraction]]:
        """The n vectors v_i - v_0 as rows."""
        v0 = self.vertices[0]
        return [
            [vi[c] - v0[c] for c in range(self.dimension)]
            for vi in self.vertices[1:]
        ]

    def signature(self):
        """Deterministic sort key over simplices (nested vertex tuples)."""
        return self.vertices

    def to_json(self) -> dict:
        return {
            "vertices": [[format_rational(c) for c in v] for v in self.vertices]
        }

    @classmethod
    def from_json(cls, data) -> "Simplex":
        return cls(data["vertices"])

    @classmethod
    def from_interval(cls, a: Rational, b: Rational) -> "Simplex":
        """The 1-simplex [a], [b]."""
        return cls([[a], [b]])


@lru_cache(maxsize=None)
def standard_simplex(n: int) -> Simplex:
    """The simplex [origin, e_1, ..., e_n]."""
    vertices = [[Fraction(0)] * n]
    for i in range(n):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        vertices.append(v)
    return Simplex(vertices)


def _rank(rows: List[List[Fraction]]) -> int:
    """Exact rank by fraction Gaussian elimination (rows are consumed)."""
    mat = [list(r) for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def _solve(matrix: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    """Solve a square exact system; raises DegenerateSimplex if singular."""
    size = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col]), None)
        if pivot is None:
            raise DegenerateSimplex("singular barycentric system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def barycentric(simplex: Simplex, point: Sequence[Rational]) -> Tuple[Fraction, ...]:
    """Exact coordinates lam with sum(lam) = 1 and sum(lam_i v_i) = point."""
    n = simplex.dimension
    x = _as_point(point)
    if len(x) != n:
        raise DimensionMismatch(f"point has {len(x)} coordinates, expected {n}")
    matrix = [[Fraction(1)] * (n + 1)]
    for c in range(n):
        matrix.append([v[c] for v in simplex.vertices])
    rhs = [Fraction(1)] + list(x)
    return tuple(_solve(matrix, rhs))


def grid_point(alpha: Sequence[int], k: int, simplex: Simplex) -> Point:
    """The point (alpha_0 v_0 + ... + alpha_n v_n) / k, exactly."""
    if k < 1:
        raise DegreeMismatch(f"grid points need degree >= 1, got {k}")
    if sum(alpha) != k:
        raise DegreeMismatch(f"|{tuple(alpha)}| != {k}")
    n = simplex.dimension
    if len(alpha) != n + 1:
        raise DegreeMismatch(f"index {tuple(alpha)} does not fit dimension {n}")
    coords = []
    for c in range(n):
        total = Fraction(0)
        for a, v in zip(alpha, simplex.vertices):
            if a:
                total += a * v[c]
        coords.append(total / k)
    return tuple(coords)


def diameter_sq(simplex: Simplex) -> Fraction:
    """Max squared Euclidean distance over vertex pairs, exactly."""
    best = Fraction(0)
    verts = simplex.vertices
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            d = sum((a - b) ** 2 for a, b in zip(verts[i], verts[j]))
            if d > best:
                best = d
    return best


def longest_edge(simplex: Simplex) -> Tuple[int, int]:
    """The (i, j) pair of the longest edge; lowest (i, j) breaks ties."""
    verts = simplex.vertices
    best = None
    best_len = Fraction(-1)
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            d = sum((a - b) ** 2 for a, b in zip(verts[i], verts[j]))
            if d > best_len:
                best_len = d
                best = (i, j)
    return best


def affine_pullback(simplex: Simplex, poly: PowerPoly) -> PowerPoly:
    """Compose poly with the map t -> v_0 + sum_i t_i (v_i - v_0).

    The result represents poly on |simplex| in standard-simplex coordinates;
    coefficients stay exact and the degree is preserved.
    """
    n = simplex.dimension
    if poly.dimension != n:
        raise DimensionMismatch(
            f"polynomial has {poly.dimension} variables, simplex has {n}"
        )
    if simplex == standard_simplex(n):
        return poly
    v0 = simplex.vertices[0]
    directions = [
        [vi[c] - v0[c] for c in range(n)]
        for vi in simplex.vertices[1:]
    ]
    return poly.substitute_affine(v0, directions)


def bisect_edge(simplex: Simplex, i: int, j: int) -> Tuple[Simplex, Simplex]:
    """Split at the midpoint m of edge (v_i, v_j).

    Returns (simplex with v_j -> m, simplex with v_i -> m); the first child
    keeps vertex v_i.  Their union is |simplex| with disjoint interiors.
    """
    n = simplex.dimension
    if not (0 <= i < j <= n):
        raise BadEdge(f"edge ({i}, {j}) invalid for dimension {n}")
    vi, vj = simplex.vertices[i], simplex.vertices[j]
    mid = tuple((a + b) / 2 for a, b in zip(vi, vj))
    keep_i = list(simplex.vertices)
    keep_i[j] = mid
    keep_j = list(simplex.vertices)
    keep_j[i] = mid
    return Simplex(keep_i), Simplex(keep_j)


def round_length(n: int) -> int:
    """Number of binary splits in one shrink round: n(n+1)/2."""
    return n * (n + 1) // 2


def split_round(simplex: Simplex) -> List[Simplex]:
    """One full shrink round of longest-edge bisection.

    Applies n(n+1)/2 levels of longest-edge binary splitting exhaustively
    breadth-first, then keeps splitting any child whose squared diameter
    still exceeds a quarter of the parent's (a safety net; not observed for
    the tested dimensions).  Every returned child has diameter at most half
    the parent's.
    """
    n = simplex.dimension
    pieces = [simplex]
    for _ in range(round_length(n)):
        pieces = [child for piece in pieces for child in bisect_edge(piece, *longest_edge(piece))]
    target = diameter_sq(simplex) / 4
    guard = 4 * round_length(n) + 4
    while any(diameter_sq(p) > target for p in pieces):
        guard -= 1
        if guard < 0:
            raise DegenerateSimplex("edge bisection failed to halve the diameter")
        refined = []
        for piece in pieces:
            if diameter_sq(piece) > target:
                refined.extend(bisect_edge(piece, *longest_edge(piece)))
            else:
                refined.append(piece)
        pieces = refined
    return pieces


@dataclass(frozen=True)
class SubdivisionPlan:
    """Bookkeeping for a subdivision run: scheme, shrink factor, step count."""

    scheme: str = "longest-edge-bisection"
    shrink_factor: Fraction = Fraction(1, 2)
    steps: int = 0
    round_length: int = 1

    def __post_init__(self):
        if not (0 < self.shrink_factor < 1):
            raise ValueError("shrink factor must lie strictly between 0 and 1")

    @classmethod
    def for_dimension(cls, n: int, steps: int = 0,
                      shrink_factor: Fraction = Fraction(1, 2)) -> "SubdivisionPlan":
        return cls(shrink_factor=shrink_factor, steps=steps,
                   round_length=round_length(n))
