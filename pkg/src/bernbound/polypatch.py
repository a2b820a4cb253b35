"""Bernstein coefficient patches of polynomials over simplices.

A patch holds the dense list of Bernstein coefficients of one polynomial at
one degree over one simplex, in canonical index order.  The minimum and
maximum coefficient enclose the polynomial's range over the simplex; degree
elevation tightens the enclosure monotonically; edge splitting propagates
coefficients to subsimplices without reconversion.

Coefficients are exact rationals throughout: positivity verdicts downstream
hinge on coefficient signs, so no floating arithmetic enters here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Mapping, Sequence, Tuple

from .errors import DegreeTooLow
from .geometry import Simplex, affine_pullback, barycentric, bisect_edge, standard_simplex
from .indexing import IndexSet, binom_graded, binom_multi, enumerate_indices
from .powerpoly import PowerPoly
from .rationals import Interval, Rational, format_rational, parse_rational

DiffKey = Tuple[Tuple[int, ...], int, int]


def _multinomial(k: int, alpha: Sequence[int]) -> int:
    """k! / (alpha_0! ... alpha_n!) for |alpha| = k, exactly."""
    result = 1
    remaining = k
    for a in alpha:
        result *= comb(remaining, a)
        remaining -= a
    return result


@dataclass(frozen=True)
class SecondDifferences:
    """Discrete second differences of a coefficient net and their sup norm.

    One entry per (gamma, i, j) with |gamma| = k - 2 and 0 <= i < j <= n;
    the sup norm is the exact maximum absolute entry.
    """

    items: Tuple[Tuple[DiffKey, Fraction], ...]
    sup_norm: Fraction

    @property
    def entries(self) -> Dict[DiffKey, Fraction]:
        return dict(self.items)


@dataclass(frozen=True)
class BernsteinPatch:
    """Bernstein coefficients of one polynomial of one degree over a simplex."""

    simplex: Simplex
    degree: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(parse_rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        expected = len(self.index_set)
        if len(coeffs) != expected:
            raise ValueError(
                f"degree-{self.degree} patch over a {self.dimension}-simplex "
                f"needs {expected} coefficients, got {len(coeffs)}"
            )

    @property
    def dimension(self) -> int:
        return self.simplex.dimension

    @property
    def index_set(self) -> IndexSet:
        return enumerate_indices(self.degree, self.dimension)

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self.coeffs[self.index_set.position(alpha)]

    def vertex_values(self) -> Tuple[Fraction, ...]:
        """Coefficients at the vertex indices; these equal p(v_i)."""
        return tuple(self.coeffs[p] for p in self.index_set.vertex_positions())

    def enclosure(self) -> Interval:
        """[min coefficient, max coefficient]; contains the range over |V|."""
        return Interval(min(self.coeffs), max(self.coeffs))

    def eval(self, point: Sequence[Rational]) -> Fraction:
        """Exact value of the represented polynomial at a point.

        Sums coefficient * multinomial * lambda^alpha over the barycentric
        coordinates of the point; exact for rational points.
        """
        lam = barycentric(self.simplex, point)
        k = self.degree
        total = Fraction(0)
        for alpha, coeff in zip(self.index_set, self.coeffs):
            if not coeff:
                continue
            weight = Fraction(_multinomial(k, alpha))
            for l_i, a_i in zip(lam, alpha):
                if a_i:
                    weight *= l_i ** a_i
            total += coeff * weight
        return total

    def elevate(self) -> "BernsteinPatch":
        """Same polynomial one degree higher; the enclosure never widens."""
        k, n = self.degree, self.dimension
        src = self.index_set
        out = []
        for beta in enumerate_indices(k + 1, n):
            total = Fraction(0)
            for i, bi in enumerate(beta):
                if bi:
                    lowered = beta[:i] + (bi - 1,) + beta[i + 1:]
                    total += bi * self.coeffs[src.position(lowered)]
            out.append(total / (k + 1))
        return BernsteinPatch(self.simplex, k + 1, tuple(out))

    def second_differences(self) -> SecondDifferences:
        """All entries b[g+e_i+e_{j-1}] + b[g+e_{i-1}+e_j] - b[g+e_{i-1}+e_{j-1}]
        - b[g+e_i+e_j] for |g| = k-2, i < j, with e_{-1} meaning e_n."""
        k, n = self.degree, self.dimension
        if k < 2:
            raise DegreeTooLow(f"second differences need degree >= 2, got {k}")
        pos = self.index_set.position

        def shifted(gamma, a, b):
            out = list(gamma)
            out[a] += 1
            out[b] += 1
            return self.coeffs[pos(out)]

        items = []
        sup = Fraction(0)
        for gamma in enumerate_indices(k - 2, n):
            for i in range(n + 1):
                prev_i = (i - 1) % (n + 1)
                for j in range(i + 1, n + 1):
                    prev_j = j - 1
                    value = (
                        shifted(gamma, i, prev_j)
                        + shifted(gamma, prev_i, j)
                        - shifted(gamma, prev_i, prev_j)
                        - shifted(gamma, i, j)
                    )
                    items.append(((tuple(gamma), i, j), value))
                    if abs(value) > sup:
                        sup = abs(value)
        return SecondDifferences(tuple(items), sup)

    def split_edge(self, i: int, j: int) -> Tuple["BernsteinPatch", "BernsteinPatch"]:
        """Coefficient patches over the two midpoint children of edge (i, j).

        Univariate midpoint de Casteljau applied along the (i, j) barycentric
        direction; exactly equal to reconverting the polynomial on each child.
        Children are ordered as in ``bisect_edge``: the first keeps vertex v_i.
        """
        child_i, child_j = bisect_edge(self.simplex, i, j)
        pos = self.index_set.position
        left = []
        right = []
        for alpha in self.index_set:
            ai, aj = alpha[i], alpha[j]
            acc = Fraction(0)
            for t in range(aj + 1):
                moved = list(alpha)
                moved[i] += t
                moved[j] -= t
                acc += comb(aj, t) * self.coeffs[pos(moved)]
            left.append(acc / 2 ** aj)
            acc = Fraction(0)
            for u in range(ai + 1):
                moved = list(alpha)
                moved[i] -= u
                moved[j] += u
                acc += comb(ai, u) * self.coeffs[pos(moved)]
            right.append(acc / 2 ** ai)
        return (
            BernsteinPatch(child_i, self.degree, tuple(left)),
            BernsteinPatch(child_j, self.degree, tuple(right)),
        )

    def to_json(self) -> dict:
        return {
            "simplex": self.simplex.to_json(),
            "degree": self.degree,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BernsteinPatch":
        return cls(
            Simplex.from_json(data["simplex"]),
            int(data["degree"]),
            tuple(parse_rational(c) for c in data["coeffs"]),
        )


def to_bernstein_standard(poly: PowerPoly, degree: int) -> BernsteinPatch:
    """Bernstein coefficients of poly at the given degree over the standard
    simplex:  b_alpha = sum over beta <= alpha_hat of
    C(alpha_hat, beta) / C(degree, beta) * a_beta, exactly."""
    if degree < poly.degree:
        raise DegreeTooLow(
            f"Bernstein degree {degree} below polynomial degree {poly.degree}"
        )
    n = poly.dimension
    terms = list(poly.iter_terms())
    weights = [(bhat, coeff, binom_graded(degree, bhat)) for bhat, coeff in terms]
    out = []
    for alpha in enumerate_indices(degree, n):
        ahat = alpha.hat
        total = Fraction(0)
        for bhat, coeff, denom in weights:
            if all(b <= a for b, a in zip(bhat, ahat)):
                total += Fraction(binom_multi(ahat, bhat), denom) * coeff
        out.append(total)
    return BernsteinPatch(standard_simplex(n), degree, tuple(out))


def to_bernstein(poly: PowerPoly, degree: int, simplex: Simplex) -> BernsteinPatch:
    """Bernstein patch of poly over an arbitrary simplex, via affine pullback."""
    pulled = affine_pullback(simplex, poly)
    base = to_bernstein_standard(pulled, degree)
    if simplex == base.simplex:
        return base
    return BernsteinPatch(simplex, degree, base.coeffs)


def discretization_bound(patch: BernsteinPatch, degree: int) -> Fraction:
    """Bound on max |p(grid point) - coefficient| for the degree-``degree``
    patch of the same polynomial.

    ``patch`` is the polynomial's own-degree patch (degree l, second
    differences taken at that degree); the bound is
    n(n+2) l(l-1) / 24 * sup|second differences| / (degree - 1) and requires
    degree > l strictly.
    """
    l = patch.degree
    if degree <= l:
        raise DegreeTooLow(f"bound needs a target degree above {l}, got {degree}")
    if l < 2:
        return Fraction(0)
    n = patch.dimension
    sup = patch.second_differences().sup_norm
    t_const = Fraction(n * (n + 2) * l * (l - 1), 24) * sup
    return t_const / (degree - 1)
