from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from diagratio.geom import (
    ConvexityError,
    GeometryError,
    ParallelLinesError,
    Polygon,
    PolygonSizeError,
    area_ratio,
    cevian_polygon,
    inner_diagonal_polygon,
    is_convex_ccw,
    line_intersect,
    marginal_areas,
    marginal_sum,
    peripheral_areas,
    peripheral_sum,
    polygon_area,
    reflex_vertices,
    regular_polygon,
    require_convex,
    triangle_area,
    wedge,
)
from diagratio.pentagon import AFFINE_REGULAR, gauss_area, params_to_vertices
from diagratio.qfield import PHI_CONJ, QuadExt

from .conftest import convex_polygons, float_affine

F = Fraction
SQUARE = Polygon(((0, 0), (1, 0), (1, 1), (0, 1)))
UNIT_TRIANGLE = Polygon(((0, 0), (1, 0), (0, 1)))
RATIO_MAX = 0.14589803375031546


class TestWedgeAndArea:
    def test_wedge(self):
        assert wedge((1, 0), (0, 1)) == F(1, 2)
        assert wedge((3, 4), (3, 4)) == 0
        assert wedge((2, 0), (0, 2)) == 2

    def test_area(self):
        assert polygon_area(SQUARE) == 1
        assert polygon_area(UNIT_TRIANGLE) == F(1, 2)
        assert polygon_area(regular_polygon(5)) == pytest.approx(2.5 * math.sin(math.radians(72)), abs=1e-12)

    def test_clockwise_is_negative(self):
        assert polygon_area(Polygon(tuple(reversed(SQUARE.vertices)))) == -1

    def test_too_few_vertices(self):
        with pytest.raises(PolygonSizeError):
            Polygon(((0, 0), (1, 0)))


class TestConvexity:
    def test_square(self):
        assert is_convex_ccw(SQUARE)

    def test_dent(self):
        dented = Polygon(((0, 0), (1, 0), (F(1, 4), F(1, 4)), (0, 1)))
        assert not is_convex_ccw(dented)
        assert reflex_vertices(dented)[0] in (1, 2)

    def test_collinear_midpoint(self):
        assert not is_convex_ccw(Polygon(((0, 0), (F(1, 2), 0), (1, 0), (1, 1), (0, 1))))

    def test_clockwise(self):
        assert not is_convex_ccw(Polygon(tuple(reversed(SQUARE.vertices))))

    def test_star_is_rejected(self):
        star = Polygon(tuple((math.cos(4 * math.pi * k / 5), math.sin(4 * math.pi * k / 5)) for k in range(5)))
        assert not is_convex_ccw(star)

    def test_error_names_vertex(self):
        P = Polygon(((0, 0), (1, 0), (0.2, 0.2), (0, 1)))
        with pytest.raises(ConvexityError) as info:
            require_convex(P)
        assert info.value.vertex == 2
        assert 2 in reflex_vertices(P)

    def test_float_tolerance(self):
        # a turn far below 1e-12 of the squared diameter counts as collinear
        nearly = Polygon(((0.0, 0.0), (0.5, 1e-15), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
        assert not is_convex_ccw(nearly)


class TestLineIntersect:
    def test_square_diagonals(self):
        assert line_intersect((0, 0), (1, 1), (0, 1), (1, 0)) == (F(1, 2), F(1, 2))

    def test_parallel(self):
        with pytest.raises(ParallelLinesError):
            line_intersect((0, 0), (1, 0), (0, 1), (1, 1))

    def test_axis(self):
        assert line_intersect((0, 0), (2, 2), (2, 0), (2, 5)) == (2, 2)


class TestInnerPolygon:
    def test_regular_pentagon(self):
        assert area_ratio(regular_polygon(5)) == pytest.approx(RATIO_MAX, abs=1e-12)

    def test_affine_regular_exact(self):
        assert area_ratio(params_to_vertices(AFFINE_REGULAR)) == QuadExt(F(7, 2), F(-3, 2))

    def test_square_collapses(self):
        B = inner_diagonal_polygon(SQUARE)
        assert set(B.vertices) == {(F(1, 2), F(1, 2))}
        assert polygon_area(B) == 0

    def test_hexagon_third(self):
        assert area_ratio(regular_polygon(6)) == pytest.approx(1 / 3, abs=1e-12)

    def test_affine_regular_hexagon_exact(self):
        hexagon = Polygon(((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)))
        assert area_ratio(hexagon) == F(1, 3)

    def test_needs_four_vertices(self):
        with pytest.raises(PolygonSizeError):
            inner_diagonal_polygon(UNIT_TRIANGLE)


class TestCevian:
    def test_midpoint_square(self):
        assert area_ratio(SQUARE, F(1, 2)) == F(1, 5)

    def test_medians(self):
        assert area_ratio(UNIT_TRIANGLE, F(1, 2)) == 0

    def test_one_seventh(self):
        assert area_ratio(UNIT_TRIANGLE, F(2, 3)) == F(1, 7)
        assert area_ratio(UNIT_TRIANGLE, F(1, 3)) == F(1, 7)

    def test_r_range(self):
        with pytest.raises(ValueError):
            cevian_polygon(SQUARE, 0)
        with pytest.raises(ValueError):
            cevian_polygon(SQUARE, F(3, 2))

    @given(convex_polygons(min_n=4, max_n=9, exact=True))
    def test_r1_matches_inner_polygon(self, P):
        assert cevian_polygon(P, 1) == inner_diagonal_polygon(P)

    @given(convex_polygons(min_n=4, max_n=10), st.floats(0.02, 1.0), st.floats(0.02, 1.0))
    def test_nesting(self, P, r1, r2):
        lo, hi = sorted((r1, r2))
        a_lo = abs(polygon_area(cevian_polygon(P, lo)))
        a_hi = abs(polygon_area(cevian_polygon(P, hi)))
        assert a_lo >= a_hi - 1e-12 * polygon_area(P)

    def test_triangles_are_not_nested(self):
        # past the centroid the cevian triangle grows back to the whole triangle
        assert area_ratio(UNIT_TRIANGLE, F(3, 4)) > area_ratio(UNIT_TRIANGLE, F(1, 2))

    @given(convex_polygons(min_n=5, max_n=10), st.floats(0.01, 0.49))
    def test_one_minus_two_r(self, P, r):
        assert area_ratio(P, r) >= 1 - 2 * r - 1e-12


class TestPeripheralAndMarginal:
    def test_square_peripheral(self):
        assert peripheral_sum(SQUARE) == 2

    def test_affine_regular_peripheral(self):
        P = params_to_vertices(AFFINE_REGULAR)
        assert peripheral_areas(P) == [1] * 5
        assert peripheral_sum(P) == 5

    def test_hexagon_peripheral(self):
        assert float(peripheral_sum(regular_polygon(6))) == pytest.approx(6 * math.sqrt(3) / 4, abs=1e-12)

    def test_regular_marginal(self):
        P = regular_polygon(5)
        expected = (3 * math.sqrt(5) - 5) / 2 * polygon_area(P)
        assert marginal_sum(P) == pytest.approx(expected, abs=1e-12)

    def test_affine_regular_marginals(self):
        assert marginal_areas(params_to_vertices(AFFINE_REGULAR)) == [PHI_CONJ] * 5

    def test_large_construction_marginal(self):
        from diagratio.construct import construct_large_ratio

        P = construct_large_ratio(6, 0.1)
        assert marginal_sum(P) < 0.1 * polygon_area(P)

    @given(convex_polygons(min_n=5, max_n=5))
    def test_omega_below_twice_area(self, P):
        assert peripheral_sum(P) < 2 * polygon_area(P)

    @given(convex_polygons(min_n=5, max_n=5))
    def test_gauss(self, P):
        assert gauss_area(peripheral_areas(P)) == pytest.approx(polygon_area(P), rel=1e-9)

    @given(convex_polygons(min_n=5, max_n=8, exact=True))
    def test_marginal_forms_agree_exactly(self, P):
        marginal_sum(P)  # asserts internally


class TestAffineInvariance:
    matrices = st.tuples(*[st.integers(-5, 5)] * 4).filter(lambda m: m[0] * m[3] - m[1] * m[2] > 0)

    @given(convex_polygons(min_n=5, max_n=5, exact=True), matrices, st.integers(-9, 9), st.integers(-9, 9))
    def test_exact(self, P, m, ox, oy):
        Q = P.affine(((m[0], m[1]), (m[2], m[3])), (ox, oy))
        assert area_ratio(Q) == area_ratio(P)

    @given(convex_polygons(min_n=5, max_n=5), float_affine())
    def test_float(self, P, m):
        Q = P.affine(((m[0], m[1]), (m[2], m[3])), (0.5, -2.0))
        assume(is_convex_ccw(Q))
        assert area_ratio(Q) == pytest.approx(area_ratio(P), abs=1e-10)


class TestJson:
    def test_round_trip_exact(self):
        P = params_to_vertices(AFFINE_REGULAR)
        assert Polygon.from_json(P.to_json()) == P

    def test_round_trip_float(self):
        P = regular_polygon(7)
        assert Polygon.from_json(P.to_json()) == P

    @pytest.mark.parametrize(
        "data",
        [{"vertices": [[0, 0], [1, 0]]}, {"verts": []}, {"vertices": [[0, 0, 1]]}, {"vertices": [["a", 0], [1, 0], [0, 1]]}, {"vertices": [[float("nan"), 0], [1, 0], [0, 1]]}],
    )
    def test_malformed(self, data):
        with pytest.raises(GeometryError):
            Polygon.from_json(data)

    def test_quadext_string(self):
        P = Polygon.from_json({"vertices": [["0", "0"], ["1", "0"], ["1/2+1/2*sqrt5", "1"]]})
        assert isinstance(P[2][0], QuadExt)
        assert triangle_area(*P.vertices) == F(1, 2)
