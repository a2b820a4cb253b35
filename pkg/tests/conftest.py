"""Shared builders and independent oracles for the test suite.

Oracles here deliberately avoid the library code paths they are used to
check: determinants and linear solves are re-implemented, expected Bernstein
coefficients come from interpolation at grid points, and extrema of corpus
functions are closed-form by construction.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
import random

from bernbound import (
    PowerPoly,
    Simplex,
    grid_point,
    standard_simplex,
    to_bernstein,
)
from bernbound.errors import DegenerateSimplex, DenominatorNotPositive
from bernbound.ratpatch import rational_patch

F = Fraction


# ---------------------------------------------------------------------------
# Reference rational functions (univariate, degree 2)
# ---------------------------------------------------------------------------

def fn_dip():
    """(7x^2 - 5x + 1) / (x^2 - 2x + 7) on [-1, 1].

    Positive on the interval but with a negative middle coefficient at
    degree 2, so enclosure-based positivity needs elevation or subdivision.
    """
    num = PowerPoly.univariate([1, -5, 7])
    den = PowerPoly.univariate([7, -2, 1])
    return num, den, Simplex.from_interval(-1, 1)


def fn_cert3():
    """(5x^2 - 3x + 1) / (x^2 + 1) on [0, 1].

    Positive on the interval; its degree-3 coefficient list is the smallest
    one that is nonnegative with positive vertex entries.
    """
    num = PowerPoly.univariate([1, -3, 5])
    den = PowerPoly.univariate([1, 0, 1])
    return num, den, Simplex.from_interval(0, 1)


# ---------------------------------------------------------------------------
# Random instance generation (seeded, deterministic)
# ---------------------------------------------------------------------------

def random_fraction(rng, span=9, max_den=6):
    return F(rng.randint(-span, span), rng.randint(1, max_den))


def random_simplex(rng, n):
    """A mildly perturbed standard simplex (always non-degenerate retry loop)."""
    while True:
        vertices = []
        base = standard_simplex(n).vertices
        for v in base:
            vertices.append([c + F(rng.randint(-1, 1), 4) for c in v])
        try:
            return Simplex(vertices)
        except DegenerateSimplex:
            continue


def random_poly(rng, n, degree, span=9, max_den=4):
    """Random polynomial of exact total degree ``degree``."""
    terms = {}
    exponents = _exponents_up_to(n, degree)
    for exps in exponents:
        if rng.random() < 0.6:
            terms[exps] = random_fraction(rng, span, max_den)
    slot = rng.randrange(n)
    top = tuple(degree if i == slot else 0 for i in range(n))
    terms[top] = random_fraction(rng, span, max_den) or F(1)
    return PowerPoly(n, terms)


def _exponents_up_to(n, degree):
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], degree)
    return out


def positive_denominator(rng, n, degree, simplex):
    """A polynomial whose Bernstein patch over ``simplex`` is positive.

    Constructed by rejection: a dominant positive constant plus small random
    terms, re-drawn until every coefficient of the patch is positive.
    """
    while True:
        terms = {}
        for exps in _exponents_up_to(n, degree):
            if sum(exps) and rng.random() < 0.5:
                terms[exps] = F(rng.randint(-2, 2), 8)
        terms[(0,) * n] = F(rng.randint(3, 9))
        poly = PowerPoly(n, terms)
        patch = to_bernstein(poly, max(poly.degree, 1), simplex)
        if all(c > 0 for c in patch.coeffs):
            return poly


def random_point_in(rng, simplex, span=20):
    """Exact rational point of |simplex| via random barycentric weights."""
    n = simplex.dimension
    weights = [rng.randint(0, span) for _ in range(n + 1)]
    if sum(weights) == 0:
        weights[0] = 1
    total = sum(weights)
    lam = [F(w, total) for w in weights]
    return tuple(
        sum(l * v[c] for l, v in zip(lam, simplex.vertices))
        for c in range(n)
    )


def rational_instances(count, seed, max_n=3, max_l=4, standard_only=False):
    """Deterministic stream of (pnum, pden, simplex, degree) instances."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_n)
        l = rng.randint(1, max_l)
        if standard_only or rng.random() < 0.5:
            simplex = standard_simplex(n)
        else:
            simplex = random_simplex(rng, n)
        pnum = random_poly(rng, n, l)
        pden = positive_denominator(rng, n, rng.randint(0, l), simplex)
        degree = max(pnum.degree, pden.degree) + rng.randint(0, 2)
        try:
            rational_patch(pnum, pden, simplex, degree)
        except DenominatorNotPositive:
            continue
        out.append((pnum, pden, simplex, degree))
    return out


# ---------------------------------------------------------------------------
# Univariate corpus with closed-form extrema
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PinnedRational:
    """f = fmin + scale*(x - argmin)^2 / den on [0, 1].

    den has positive coefficients (so its Bernstein patch is positive) and
    2*den - (x - argmin)*den' is linear and positive on [0, 1], which forces
    the only interior critical point to be the minimum at argmin; the maximum
    therefore sits at an endpoint.  Both extrema are exact by construction.
    """

    num: PowerPoly
    den: PowerPoly
    domain: Simplex
    fmin: Fraction
    fmax: Fraction
    argmin: Fraction
    num_min: Fraction


_CORPUS_PARAMS = [
    # (fmin, argmin, scale, den_linear, den_quad)
    (F(1, 2), F(1, 3), F(1), F(0), F(1)),
    (F(1), F(1, 2), F(2), F(1), F(0)),
    (F(2), F(1, 4), F(1, 2), F(1, 2), F(1, 2)),
    (F(1, 4), F(3, 4), F(3), F(0), F(0)),
    (F(3, 2), F(0), F(1), F(2), F(1)),
    (F(1, 2), F(1), F(5, 2), F(1), F(1)),
    (F(3), F(2, 3), F(1), F(0), F(2)),
    (F(5, 4), F(1, 5), F(4), F(1, 4), F(0)),
    (F(1, 3), F(2, 5), F(2), F(3), F(1)),
    (F(1, 8), F(2, 5), F(6), F(1, 2), F(1)),
    (F(1), F(1, 8), F(6), F(1), F(2)),
    (F(1, 10), F(1, 2), F(4), F(0), F(1)),
    (F(1, 2), F(3, 5), F(3, 2), F(2), F(2)),
    (F(5, 2), F(1, 6), F(2), F(0), F(1)),
    (F(3, 4), F(5, 6), F(5), F(1), F(1, 4)),
    (F(2), F(1, 2), F(7, 2), F(1, 3), F(1)),
    (F(1, 6), F(5, 8), F(8), F(1), F(0)),
    (F(4, 3), F(2, 7), F(3), F(0), F(3)),
    (F(1, 2), F(9, 10), F(2), F(1, 2), F(1)),
    (F(3), F(3, 8), F(1, 2), F(2), F(1, 2)),
]


def _quadratic_min_on_unit(a, b, c):
    """Exact min of a*x^2 + b*x + c on [0, 1] (independent closed form)."""
    candidates = [c, a + b + c]
    if a > 0:
        vertex = -b / (2 * a)
        if 0 <= vertex <= 1:
            candidates.append(c - b * b / (4 * a))
    elif a < 0:
        pass  # concave: endpoints already cover it
    return min(candidates)


def pinned_corpus():
    """Twenty positive univariate rationals with exact extrema on [0, 1]."""
    out = []
    domain = Simplex.from_interval(0, 1)
    for fmin, argmin, scale, q1, q2 in _CORPUS_PARAMS:
        den = PowerPoly.univariate([F(1), q1, q2])
        # num = fmin*den + scale*(x - argmin)^2, assembled coefficientwise
        a0 = fmin * 1 + scale * argmin ** 2
        a1 = fmin * q1 - 2 * scale * argmin
        a2 = fmin * q2 + scale
        num = PowerPoly.univariate([a0, a1, a2])
        den_at_1 = 1 + q1 + q2
        f0 = a0  # den(0) = 1
        f1 = (a0 + a1 + a2) / den_at_1
        fmax = max(f0, f1)
        num_min = _quadratic_min_on_unit(a2, a1, a0)
        out.append(
            PinnedRational(num, den, domain, fmin, fmax, argmin, num_min)
        )
    return out


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def det(matrix):
    """Fraction determinant by cofactor expansion (small matrices only)."""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total = F(0)
    for col in range(size):
        if not matrix[0][col]:
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        sign = -1 if col % 2 else 1
        total += sign * matrix[0][col] * det(minor)
    return total


def simplex_volume_scaled(simplex):
    """|det(v_i - v_0)|: n! times the volume; enough for ratio tests."""
    v0 = simplex.vertices[0]
    edges = [
        [vi[c] - v0[c] for c in range(simplex.dimension)]
        for vi in simplex.vertices[1:]
    ]
    return abs(det(edges))


def _solve_fraction_system(matrix, rhs):
    size = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(size)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def _barycentric_oracle(simplex, point):
    n = simplex.dimension
    matrix = [[F(1)] * (n + 1)]
    for c in range(n):
        matrix.append([v[c] for v in simplex.vertices])
    return _solve_fraction_system(matrix, [F(1)] + list(point))


def _multinomial(k, alpha):
    result = 1
    remaining = k
    for a in alpha:
        result *= comb(remaining, a)
        remaining -= a
    return result


def bernstein_by_interpolation(poly, degree, simplex):
    """Bernstein coefficients via interpolation at the grid points.

    Builds the basis-evaluation matrix at the degree-``degree`` grid points
    and solves for the coefficients; independent of the conversion formula
    under test.
    """
    from bernbound import enumerate_indices

    iset = enumerate_indices(degree, simplex.dimension)
    points = [grid_point(alpha, degree, simplex) for alpha in iset]
    matrix = []
    for point in points:
        lam = _barycentric_oracle(simplex, point)
        row = []
        for alpha in iset:
            value = F(_multinomial(degree, alpha))
            for l, a in zip(lam, alpha):
                if a:
                    value *= l ** a
            row.append(value)
        matrix.append(row)
    values = [poly.eval(point) for point in points]
    return tuple(_solve_fraction_system(matrix, values))
