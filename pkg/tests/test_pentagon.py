from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from diagratio.certificate import F_NORMALISATION, transcribe_f
from diagratio.geom import (
    GeometryError,
    marginal_areas,
    marginal_sum,
    peripheral_areas,
    peripheral_sum,
    polygon_area,
    regular_polygon,
)
from diagratio.pentagon import (
    AFFINE_REGULAR,
    AFFINE_REGULAR_FLOAT,
    ConstraintViolation,
    PentagonParams,
    cleared_denominator,
    closed_form_areas,
    gauss_area,
    inequality_lhs,
    params_to_vertices,
    to_xy,
    vertices_to_params,
)
from diagratio.poly import poly_eval
from diagratio.qfield import PHI_CONJ, QuadExt

from .conftest import exact_affine, float_affine, valid_params

F = Fraction
RATIO_MAX = QuadExt(F(7, 2), F(-3, 2))


def abc_is_largest(p: PentagonParams) -> bool:
    sig = closed_form_areas(p).peripheral
    return sig[0] >= max(sig)


class TestDomain:
    def test_unit_params_valid(self):
        assert PentagonParams(1, 1, 1, 1).is_valid()

    def test_violation_names_inequality(self):
        with pytest.raises(ConstraintViolation) as info:
            PentagonParams(1, 1, 3, 1).validate()
        assert info.value.inequality == "b - b*c + d > 0"

    @pytest.mark.parametrize("bad", [(0, 1, 1, 1), (1, -1, 1, 1), (1, 1, F(1, 2), 1), (1, 1, 1, F(9, 10)), (1, 1, 1, 3)])
    def test_other_violations(self, bad):
        assert not PentagonParams(*bad).is_valid()

    def test_json(self):
        assert PentagonParams.from_json(AFFINE_REGULAR.to_json()) == AFFINE_REGULAR
        assert PentagonParams.from_json({"a": 0.5, "b": 1, "c": 1.5, "d": 1}).is_valid()


class TestEmbedding:
    def test_affine_regular_vertices(self):
        P = params_to_vertices(AFFINE_REGULAR)
        assert P.vertices == ((1, 0), (1, 2), (0, 2), (-PHI_CONJ, 0), (0, -2 * PHI_CONJ))
        assert float(P[3][0]) == pytest.approx(-0.618034, abs=1e-6)
        assert float(P[4][1]) == pytest.approx(-1.236068, abs=1e-6)

    def test_regular_pentagon_params(self):
        p = vertices_to_params(regular_polygon(5, radius=3.0, phase=0.3))
        assert p.astuple() == pytest.approx((0.6180339887, 0.6180339887, 1, 1), abs=1e-9)

    def test_affine_regular_exact_round_trip(self):
        assert vertices_to_params(params_to_vertices(AFFINE_REGULAR)) == AFFINE_REGULAR

    def test_rejects_non_pentagon(self):
        with pytest.raises(GeometryError):
            vertices_to_params(regular_polygon(6))

    @pytest.mark.parametrize("p", [PentagonParams(F(1, 2), F(1, 2), 1, 1), PentagonParams(F(1, 2), F(2, 3), F(3, 2), F(6, 5))])
    def test_exact_round_trip(self, p):
        assert abc_is_largest(p)
        assert vertices_to_params(params_to_vertices(p)) == p

    @given(valid_params(exact=True))
    def test_canonical_params_are_fixed(self, p):
        q = vertices_to_params(params_to_vertices(p))
        assert abc_is_largest(q)
        assert vertices_to_params(params_to_vertices(q)) == q

    def test_round_trip_needs_abc_largest(self):
        # c, d >= 1 alone does not make ABC the largest peripheral triangle
        p = PentagonParams(5, 5, 1, 1)
        assert not abc_is_largest(p)
        assert vertices_to_params(params_to_vertices(p)) != p

    @given(valid_params())
    def test_float_round_trip(self, p):
        q = vertices_to_params(params_to_vertices(p))
        sig = sorted(closed_form_areas(q).peripheral)
        assume(sig[-1] > sig[-2] * (1 + 1e-6))
        r = vertices_to_params(params_to_vertices(q))
        assert r.astuple() == pytest.approx(q.astuple(), rel=1e-10, abs=1e-10)

    @given(valid_params(exact=True), exact_affine(), st.integers(-5, 5))
    def test_affine_invariance(self, p, m, off):
        P = params_to_vertices(p)
        Q = P.affine(((m[0], m[1]), (m[2], m[3])), (off, -off))
        assert vertices_to_params(Q) == vertices_to_params(P)

    @given(valid_params(), float_affine())
    def test_affine_invariance_float(self, p, m):
        sig = sorted(closed_form_areas(p).peripheral)
        assume(sig[-1] > sig[-2] * (1 + 1e-6))  # ties may resolve differently under roundoff
        P = params_to_vertices(p)
        Q = P.affine(((m[0], m[1]), (m[2], m[3])), (1.0, 2.0))
        a = vertices_to_params(P).astuple()
        b = vertices_to_params(Q).astuple()
        assert b == pytest.approx(a, rel=1e-8)


class TestClosedForms:
    def test_affine_regular(self):
        ar = closed_form_areas(AFFINE_REGULAR)
        assert ar.total == QuadExt(F(5, 2), F(1, 2))
        assert ar.peripheral == (1,) * 5
        assert ar.marginal == (PHI_CONJ,) * 5
        assert ar.ratio == RATIO_MAX
        assert float(ar.total) == pytest.approx(3.6180340, abs=1e-7)

    def test_first_marginal(self):
        ar = closed_form_areas(PentagonParams(F(1, 2), F(1, 2), F(3, 2), F(6, 5)))
        assert ar.marginal[0] == F(153, 160)
        assert float(ar.marginal[0]) == 0.95625

    @given(st.fractions(min_value=F(1, 100), max_value=1000, max_denominator=100))
    def test_omega_family(self, x):
        ar = closed_form_areas(PentagonParams(x, x, 1, 1))
        assert ar.omega / ar.total == (2 * x * x + 2 * x + 3) / (x * x + 2 * x + 2)

    @given(valid_params(exact=True))
    def test_matches_geometry_exactly(self, p):
        P = params_to_vertices(p)
        ar = closed_form_areas(p)
        assert polygon_area(P) == ar.total
        assert tuple(peripheral_areas(P)) == ar.peripheral
        assert tuple(marginal_areas(P)) == ar.marginal
        assert peripheral_sum(P) == ar.omega
        assert marginal_sum(P) == ar.phi

    @given(valid_params())
    def test_matches_geometry_float(self, p):
        P = params_to_vertices(p)
        ar = closed_form_areas(p)
        assert polygon_area(P) == pytest.approx(ar.total, rel=1e-9)
        assert peripheral_areas(P) == pytest.approx(list(ar.peripheral), rel=1e-9)
        assert marginal_areas(P) == pytest.approx(list(ar.marginal), rel=1e-9)
        assert marginal_sum(P) == pytest.approx(ar.phi, rel=1e-9)

    @given(valid_params())
    def test_ratio_bound(self, p):
        assert closed_form_areas(p).ratio <= float(RATIO_MAX) + 1e-12


class TestGauss:
    def test_unit_sigmas(self):
        assert gauss_area([1] * 5) == QuadExt(F(5, 2), F(1, 2))

    def test_irrational_root_falls_back_to_float(self):
        sig = [1, 2, 3, 4, 6]
        s, cyc = 16, 2 + 6 + 12 + 24 + 6
        assert gauss_area(sig) == pytest.approx((s + math.sqrt(s * s - 4 * cyc)) / 2)

    def test_nonpositive(self):
        with pytest.raises(ValueError):
            gauss_area([1, 1, 1, 1, 0])
        with pytest.raises(ValueError):
            gauss_area([1, 1, 1, 1])

    def test_unrealisable_tuple_still_has_a_root(self):
        # the discriminant of (1,1,1,1,100) is positive, so it yields a number
        assert gauss_area([1, 1, 1, 1, 100]) > 100

    @given(st.lists(st.fractions(min_value=F(1, 1000), max_value=1000), min_size=5, max_size=5))
    def test_discriminant_never_negative(self, sig):
        # cyclic products of a 5-cycle never exceed (sum)^2 / 4
        assert gauss_area(sig) >= sum(sig) / 2

    @given(valid_params(exact=True))
    def test_exact_pentagons(self, p):
        P = params_to_vertices(p)
        assert float(gauss_area(peripheral_areas(P))) == pytest.approx(float(polygon_area(P)), rel=1e-12)


class TestInequality:
    def test_xy(self):
        assert to_xy(AFFINE_REGULAR) == (1, 1)
        assert to_xy(PentagonParams(1, 1, 1, 1))[0] == QuadExt(F(1, 2), F(1, 2))
        assert to_xy(AFFINE_REGULAR_FLOAT) == pytest.approx((1.0, 1.0))

    def test_equality_at_regular(self):
        assert inequality_lhs(AFFINE_REGULAR) == 0

    @given(valid_params(exact=True))
    def test_f_identity_exact(self, p):
        x, y = to_xy(p)
        f_val = poly_eval(transcribe_f(), (p.c, p.d, x, y))
        assert f_val == F_NORMALISATION * inequality_lhs(p) * cleared_denominator(p)
        assert f_val >= 0

    @given(valid_params())
    def test_lhs_nonnegative(self, p):
        assert inequality_lhs(p) >= -1e-9 * closed_form_areas(p).total
