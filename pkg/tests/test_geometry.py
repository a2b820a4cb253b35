"""Simplices, barycentric coordinates, pullback, and subdivision."""

import random
from fractions import Fraction as F

import pytest

from bernbound import (
    PowerPoly,
    Simplex,
    SubdivisionPlan,
    affine_pullback,
    barycentric,
    bisect_edge,
    diameter_sq,
    grid_point,
    longest_edge,
    round_length,
    split_round,
    standard_simplex,
)
from bernbound.errors import (
    BadEdge,
    DegenerateSimplex,
    DegreeMismatch,
    DimensionMismatch,
)
from conftest import random_point_in, random_simplex, simplex_volume_scaled


class TestSimplex:
    def test_standard(self):
        tri = standard_simplex(2)
        assert tri.vertices == ((F(0), F(0)), (F(1), F(0)), (F(0), F(1)))
        assert tri.dimension == 2

    def test_degenerate_rejected(self):
        with pytest.raises(DegenerateSimplex):
            Simplex([[0, 0], [1, 1], [2, 2]])
        with pytest.raises(DegenerateSimplex):
            Simplex([[0], [0]])

    def test_shape_validation(self):
        with pytest.raises(DegenerateSimplex):
            Simplex([[0, 0], [1, 0]])  # two vertices cannot span R^2

    def test_json_round_trip(self):
        s = Simplex([["-1/2", "1.5"], ["2", "0"], ["0", "1/3"]])
        again = Simplex.from_json(s.to_json())
        assert again == s
        assert again.vertices[0] == (F(-1, 2), F(3, 2))

    def test_from_interval(self):
        s = Simplex.from_interval(-1, 1)
        assert s.vertices == ((F(-1),), (F(1),))


class TestBarycentric:
    def test_origin_of_standard(self):
        assert barycentric(standard_simplex(2), (0, 0)) == (F(1), F(0), F(0))

    def test_standard_formula(self):
        lam = barycentric(standard_simplex(2), (F(1, 2), F(1, 4)))
        assert lam == (F(1, 4), F(1, 2), F(1, 4))

    def test_interval_midpoint(self):
        lam = barycentric(Simplex.from_interval(-1, 1), (0,))
        assert lam == (F(1, 2), F(1, 2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            barycentric(standard_simplex(2), (0,))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_recombination_identity(self, n):
        rng = random.Random(100 + n)
        for _ in range(2):
            simplex = random_simplex(rng, n)
            for _ in range(1000):
                point = random_point_in(rng, simplex)
                lam = barycentric(simplex, point)
                assert sum(lam) == 1
                for c in range(n):
                    assert sum(l * v[c] for l, v in zip(lam, simplex.vertices)) == point[c]


class TestGridPoint:
    def test_vertex_case(self):
        tri = standard_simplex(2)
        assert grid_point((3, 0, 0), 3, tri) == tri.vertex(0)
        assert grid_point((0, 0, 3), 3, tri) == tri.vertex(2)

    def test_interval_midpoint(self):
        assert grid_point((1, 1), 2, Simplex.from_interval(-1, 1)) == (F(0),)

    def test_centroid(self):
        assert grid_point((1, 1, 1), 3, standard_simplex(2)) == (F(1, 3), F(1, 3))

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            grid_point((1, 1), 3, Simplex.from_interval(0, 1))
        with pytest.raises(DegreeMismatch):
            grid_point((0, 0), 0, Simplex.from_interval(0, 1))


class TestDiameter:
    def test_standard_interval(self):
        assert diameter_sq(standard_simplex(1)) == 1

    def test_triangle(self):
        assert diameter_sq(standard_simplex(2)) == 2

    def test_interval(self):
        assert diameter_sq(Simplex.from_interval(-1, 1)) == 4

    def test_longest_edge_tie_break(self):
        # equilateral-in-max-norm: all edges tie, lowest pair wins
        assert longest_edge(standard_simplex(1)) == (0, 1)
        assert longest_edge(standard_simplex(2)) == (1, 2)


class TestAffinePullback:
    def test_identity_on_standard(self):
        p = PowerPoly(2, {(1, 0): F(2), (0, 2): F(-1)})
        assert affine_pullback(standard_simplex(2), p) == p

    def test_interval_quadratic(self):
        p = PowerPoly.univariate([1, -5, 7])
        pulled = affine_pullback(Simplex.from_interval(-1, 1), p)
        assert pulled == PowerPoly.univariate([13, -38, 28])

    def test_unit_interval_linear(self):
        p = PowerPoly.univariate([0, 1])
        assert affine_pullback(Simplex.from_interval(0, 1), p) == p

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_value_preservation(self, n):
        rng = random.Random(200 + n)
        simplex = random_simplex(rng, n)
        terms = {}
        for _ in range(6):
            exps = tuple(rng.randint(0, 2) for _ in range(n))
            terms[exps] = F(rng.randint(-5, 5), rng.randint(1, 4))
        p = PowerPoly(n, terms)
        pulled = affine_pullback(simplex, p)
        std = standard_simplex(n)
        for _ in range(40):
            t = random_point_in(rng, std)
            v0 = simplex.vertex(0)
            x = tuple(
                v0[c]
                + sum(t[i] * (simplex.vertex(i + 1)[c] - v0[c]) for i in range(n))
                for c in range(n)
            )
            assert pulled.eval(t) == p.eval(x)

    def test_degree_preserved(self):
        p = PowerPoly.univariate([1, -5, 7])
        assert affine_pullback(Simplex.from_interval(2, 5), p).degree == 2


class TestBisectEdge:
    def test_interval(self):
        left, right = bisect_edge(Simplex.from_interval(-1, 1), 0, 1)
        assert left == Simplex.from_interval(-1, 0)
        assert right == Simplex.from_interval(0, 1)

    def test_triangle_volume_halves(self):
        tri = standard_simplex(2)
        a, b = bisect_edge(tri, 1, 2)
        whole = simplex_volume_scaled(tri)
        assert simplex_volume_scaled(a) == whole / 2
        assert simplex_volume_scaled(b) == whole / 2

    def test_vertex_union_covers_parent(self):
        tri = standard_simplex(2)
        a, b = bisect_edge(tri, 0, 2)
        union = set(a.vertices) | set(b.vertices)
        assert set(tri.vertices) <= union

    def test_repeated_split(self):
        left, _ = bisect_edge(Simplex.from_interval(0, F(1, 2)), 0, 1)
        assert left == Simplex.from_interval(0, F(1, 4))

    def test_bad_edge(self):
        tri = standard_simplex(2)
        with pytest.raises(BadEdge):
            bisect_edge(tri, 1, 1)
        with pytest.raises(BadEdge):
            bisect_edge(tri, 0, 3)


class TestSplitRound:
    def test_interval_round_is_one_split(self):
        kids = split_round(Simplex.from_interval(-1, 1))
        assert kids == [Simplex.from_interval(-1, 0), Simplex.from_interval(0, 1)]

    def test_two_rounds_give_quarters(self):
        pieces = [
            grandchild
            for child in split_round(Simplex.from_interval(-1, 1))
            for grandchild in split_round(child)
        ]
        expected = [
            Simplex.from_interval(F(-1), F(-1, 2)),
            Simplex.from_interval(F(-1, 2), F(0)),
            Simplex.from_interval(F(0), F(1, 2)),
            Simplex.from_interval(F(1, 2), F(1)),
        ]
        assert pieces == expected

    def test_triangle_round_shrinks(self):
        tri = standard_simplex(2)
        kids = split_round(tri)
        assert max(diameter_sq(k) for k in kids) <= diameter_sq(tri) / 4

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_shrink_factor_random(self, n):
        rng = random.Random(300 + n)
        for _ in range(3 if n < 4 else 1):
            simplex = random_simplex(rng, n)
            parent_sq = diameter_sq(simplex)
            kids = split_round(simplex)
            assert max(diameter_sq(k) for k in kids) <= parent_sq / 4
            whole = simplex_volume_scaled(simplex)
            assert sum(simplex_volume_scaled(k) for k in kids) == whole


class TestSubdivisionPlan:
    def test_round_length(self):
        assert round_length(1) == 1
        assert round_length(2) == 3
        assert round_length(4) == 10

    def test_plan_validation(self):
        plan = SubdivisionPlan.for_dimension(2, steps=3)
        assert plan.round_length == 3
        assert plan.shrink_factor == F(1, 2)
        with pytest.raises(ValueError):
            SubdivisionPlan(shrink_factor=F(3, 2))
