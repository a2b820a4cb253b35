"""Rational Bernstein form: coefficient ratios, range enclosure, sharpness,
and the convergence constants driving degree and subdivision bounds.

A rational patch pairs numerator and denominator coefficient patches of the
same degree over the same simplex and stores the per-index ratios.  All
denominator coefficients must be strictly positive; that is the standing
assumption of the method, and its failure is reported as such rather than as
a claim about the function's sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from .errors import (
    DegreeMismatch,
    DenominatorNotPositive,
    SimplexMismatch,
)
from .geometry import Simplex, affine_pullback, longest_edge
from .polypatch import BernsteinPatch, to_bernstein, to_bernstein_standard
from .powerpoly import PowerPoly
from .rationals import Interval, format_rational


class Sharpness(NamedTuple):
    """Whether the enclosure endpoints are attained, with vertex witnesses."""

    min_sharp: bool
    max_sharp: bool
    min_vertex: Optional[int]
    max_vertex: Optional[int]


@dataclass(frozen=True)
class RationalPatch:
    """Paired numerator/denominator patches plus per-index ratios."""

    num: BernsteinPatch
    den: BernsteinPatch
    ratios: Tuple[Fraction, ...] = field(init=False)

    def __post_init__(self):
        if self.num.simplex != self.den.simplex:
            raise SimplexMismatch("numerator and denominator live on different simplices")
        if self.num.degree != self.den.degree:
            raise DegreeMismatch(
                f"numerator degree {self.num.degree} != denominator degree "
                f"{self.den.degree}; elevate the lower-degree patch first"
            )
        offenders = [
            tuple(alpha)
            for alpha, c in zip(self.den.index_set, self.den.coeffs)
            if c <= 0
        ]
        if offenders:
            raise DenominatorNotPositive(
                f"denominator patch has non-positive coefficients at {offenders}",
                indices=offenders,
                simplex=self.den.simplex,
            )
        ratios = tuple(p / q for p, q in zip(self.num.coeffs, self.den.coeffs))
        object.__setattr__(self, "ratios", ratios)

    @property
    def degree(self) -> int:
        return self.num.degree

    @property
    def simplex(self) -> Simplex:
        return self.num.simplex

    @property
    def dimension(self) -> int:
        return self.num.dimension

    def vertex_ratios(self) -> Tuple[Fraction, ...]:
        """Per-vertex ratios; these are true function values f(v_i)."""
        positions = self.num.index_set.vertex_positions()
        return tuple(self.ratios[p] for p in positions)

    def enclosure(self) -> Interval:
        """[min ratio, max ratio]; contains the function's range over |V|."""
        return Interval(min(self.ratios), max(self.ratios))

    def eval(self, point) -> Fraction:
        """Exact value num(point) / den(point)."""
        return self.num.eval(point) / self.den.eval(point)

    def elevate(self) -> "RationalPatch":
        """Elevate both patches one degree; the enclosure nests inside."""
        return RationalPatch(self.num.elevate(), self.den.elevate())

    def sharpness(self) -> Sharpness:
        """An endpoint is exact iff it is attained at some vertex index."""
        lo, hi = self.enclosure()
        vertex = self.vertex_ratios()
        min_vertex = next((i for i, r in enumerate(vertex) if r == lo), None)
        max_vertex = next((i for i, r in enumerate(vertex) if r == hi), None)
        return Sharpness(min_vertex is not None, max_vertex is not None,
                         min_vertex, max_vertex)

    def split_edge(self, i: int, j: int) -> Tuple["RationalPatch", "RationalPatch"]:
        num_i, num_j = self.num.split_edge(i, j)
        den_i, den_j = self.den.split_edge(i, j)
        return RationalPatch(num_i, den_i), RationalPatch(num_j, den_j)

    def split_round(self) -> List["RationalPatch"]:
        """One shrink round of longest-edge bisection on the patch level.

        Mirrors ``geometry.split_round``: n(n+1)/2 exhaustive levels, then a
        safety top-up until every child's diameter has halved.
        """
        from .geometry import diameter_sq, round_length

        pieces = [self]
        for _ in range(round_length(self.dimension)):
            pieces = [
                child
                for piece in pieces
                for child in piece.split_edge(*longest_edge(piece.simplex))
            ]
        target = diameter_sq(self.simplex) / 4
        while any(diameter_sq(p.simplex) > target for p in pieces):
            refined = []
            for piece in pieces:
                if diameter_sq(piece.simplex) > target:
                    refined.extend(piece.split_edge(*longest_edge(piece.simplex)))
                else:
                    refined.append(piece)
            pieces = refined
        return pieces

    def to_json(self) -> dict:
        return {
            "num": self.num.to_json(),
            "den": self.den.to_json(),
            "ratios": [format_rational(r) for r in self.ratios],
        }


def make_rational(num: BernsteinPatch, den: BernsteinPatch) -> RationalPatch:
    """Pair two same-degree, same-simplex patches into a rational patch."""
    return RationalPatch(num, den)


def rational_patch(
    pnum: PowerPoly,
    pden: PowerPoly,
    simplex: Simplex,
    degree: Optional[int] = None,
) -> RationalPatch:
    """Build the rational patch of pnum/pden over a simplex.

    Both polynomials are converted at the common degree (their maximum degree
    by default), so no elevation mismatch can arise.
    """
    if pnum.dimension != pden.dimension:
        raise DegreeMismatch(
            f"numerator has {pnum.dimension} variables, denominator {pden.dimension}"
        )
    base = max(pnum.degree, pden.degree)
    k = base if degree is None else degree
    return make_rational(
        to_bernstein(pnum, k, simplex),
        to_bernstein(pden, k, simplex),
    )


@dataclass(frozen=True)
class ConvergenceConstants:
    """Exact constants controlling enclosure convergence.

    zeta bounds the absolute rational coefficients at the base degree;
    omega drives the 1/(k-1) rate under degree elevation; omega_prime the
    h^2 rate under subdivision (it carries the working degree as a factor).
    min_den is the smallest denominator coefficient at the base degree over
    the standard simplex.
    """

    zeta: Fraction
    omega: Fraction
    omega_prime: Fraction
    min_den: Fraction
    base_degree: int
    working_degree: int


def convergence_constants(
    pnum: PowerPoly,
    pden: PowerPoly,
    simplex: Simplex,
    degree: Optional[int] = None,
) -> ConvergenceConstants:
    """Compute zeta, omega and omega_prime for pnum/pden over a simplex.

    All quantities are taken from the base-degree patches over the standard
    simplex after affine pullback; ``degree`` is the working degree entering
    omega_prime (defaults to the base degree, the fixed-degree setting).
    """
    n = pnum.dimension
    p_std = affine_pullback(simplex, pnum)
    q_std = affine_pullback(simplex, pden)
    base = max(p_std.degree, q_std.degree)
    working = base if degree is None else degree
    num_patch = to_bernstein_standard(p_std, base)
    den_patch = to_bernstein_standard(q_std, base)
    f_patch = make_rational(num_patch, den_patch)
    min_den = min(den_patch.coeffs)
    lo, hi = f_patch.enclosure()
    zeta = max(abs(lo), abs(hi))
    if base >= 2:
        norm_p = num_patch.second_differences().sup_norm
        norm_q = den_patch.second_differences().sup_norm
    else:
        norm_p = Fraction(0)
        norm_q = Fraction(0)
    mixed = norm_p + zeta * norm_q
    omega = Fraction(n * (n + 2) * base * (base - 1), 24) / min_den * mixed
    omega_prime = (
        working
        * Fraction(n * n * (n + 1) * (n + 2) ** 2 * (n + 3), 576)
        / min_den
        * mixed
    )
    return ConvergenceConstants(
        zeta=zeta,
        omega=omega,
        omega_prime=omega_prime,
        min_den=min_den,
        base_degree=base,
        working_degree=working,
    )
