from __future__ import annotations

import csv
import io
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diagratio import kernels
from diagratio.geom import Polygon, is_convex_ccw
from diagratio.optimize import (
    MAX_RATIO_FLOAT,
    OptimizerConfig,
    ash_bounds,
    maximize,
    objective,
    random_convex_polygons,
    regular_ratio,
    routh,
    sample_bounds,
    sample_params,
    sweep_r,
    triangle_ratio,
)
from diagratio.pentagon import AFFINE_REGULAR_FLOAT, ConstraintViolation, PentagonParams

from .conftest import valid_params

F = Fraction
QUICK = dict(starts=6, max_iters=600, workers=1)


class TestObjective:
    def test_regular_closed_form(self):
        assert objective(AFFINE_REGULAR_FLOAT, 1) == pytest.approx(0.1458980338, abs=1e-10)
        assert abs(objective(AFFINE_REGULAR_FLOAT, 1) - MAX_RATIO_FLOAT) < 1e-12

    def test_regular_geometric_path(self):
        assert objective(AFFINE_REGULAR_FLOAT, 1 - 1e-15) == pytest.approx(MAX_RATIO_FLOAT, abs=1e-9)

    @given(valid_params())
    def test_small_r_bound(self, p):
        assert objective(p, 0.1) >= 0.8 - 1e-12

    @given(valid_params())
    def test_paths_agree(self, p):
        from diagratio.geom import area_ratio
        from diagratio.pentagon import params_to_vertices

        assert objective(p, 1) == pytest.approx(float(area_ratio(params_to_vertices(p), 1.0)), rel=1e-9)

    def test_errors(self):
        with pytest.raises(ConstraintViolation):
            objective(PentagonParams(1.0, 1.0, 3.0, 1.0), 1)
        with pytest.raises(ValueError):
            objective(AFFINE_REGULAR_FLOAT, 0)
        with pytest.raises(ValueError):
            objective(AFFINE_REGULAR_FLOAT, 1.5)


class TestConfig:
    @pytest.mark.parametrize("kw", [dict(starts=0), dict(tol=0), dict(r=0), dict(max_iters=0), dict(ab_range=(2, 1))])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            OptimizerConfig(**kw)

    def test_defaults(self):
        cfg = OptimizerConfig()
        assert (cfg.starts, cfg.max_iters, cfg.tol) == (64, 2000, 1e-12)


class TestMaximize:
    def test_finds_regular_at_one(self):
        res = maximize(OptimizerConfig(seed=1, **QUICK))
        assert abs(res.best_ratio - MAX_RATIO_FLOAT) < 1e-7
        a, b, c, d = res.best_params.astuple()
        assert max(abs(a - 0.6180339887), abs(b - 0.6180339887), abs(c - 1), abs(d - 1)) < 1e-3
        assert len(res.per_start_ratios) == 6
        assert res.best_ratio == objective(res.best_params, 1.0)

    def test_ceiling(self):
        res = maximize(OptimizerConfig(seed=4, **QUICK))
        assert max(res.per_start_ratios) <= MAX_RATIO_FLOAT + 1e-9

    def test_deterministic(self):
        cfg = OptimizerConfig(seed=3, r=0.7, **QUICK)
        assert maximize(cfg) == maximize(cfg)

    def test_parallel_matches_serial(self):
        cfg = OptimizerConfig(seed=3, r=0.9, starts=4, max_iters=300, workers=1)
        par = maximize(OptimizerConfig(seed=3, r=0.9, starts=4, max_iters=300, workers=2))
        assert par.to_json() == maximize(cfg).to_json()

    def test_beats_regular_below_threshold(self):
        res = maximize(OptimizerConfig(seed=1, r=0.8, starts=16, workers=1))
        assert res.best_ratio - regular_ratio(0.8) > 1e-6
        assert res.best_params.is_valid()

    def test_json(self):
        data = maximize(OptimizerConfig(seed=2, starts=2, max_iters=100, workers=1)).to_json()
        assert set(data) >= {"best_ratio", "best_params", "converged", "evaluations", "per_start_ratios"}
        assert set(data["best_params"]) == set("abcd")


class TestSweep:
    def test_near_one(self):
        table = sweep_r(0.999, 1.0, 2, OptimizerConfig(seed=1, **QUICK))
        (r0, r1) = table.rows
        assert (r0.r, r1.r) == (0.999, 1.0)
        assert r0.best_ratio > r1.best_ratio > 0.1458
        assert abs(r1.gap) < 1e-7
        assert table.crossover is None

    def test_bisection_bracket(self):
        table = sweep_r(0.8, 0.9, 2, OptimizerConfig(seed=1, starts=16, workers=1), bisect_iters=3)
        assert table.bracket == (0.8, 0.9)
        assert 0.8 < table.crossover < 0.9

    def test_csv(self):
        table = sweep_r(0.99, 1.0, 2, OptimizerConfig(seed=1, starts=2, max_iters=200, workers=1))
        rows = list(csv.reader(io.StringIO(table.to_csv())))
        assert rows[0] == ["r", "best_ratio", "regular_ratio", "gap", "best_a", "best_b", "best_c", "best_d"]
        assert len(rows) == 3
        for row in rows[1:]:
            assert [float(v) for v in row] == table.rows[rows.index(row) - 1].as_list()

    @pytest.mark.parametrize("args", [(0.5, 0.5, 3), (0, 1, 3), (0.5, 1.0, 1)])
    def test_rejects(self, args):
        with pytest.raises(ValueError):
            sweep_r(*args)


class TestClosedForms:
    def test_routh(self):
        assert routh(F(1, 2), F(1, 2), F(1, 2)) == 0
        assert routh(F(2, 3), F(2, 3), F(2, 3)) == F(1, 7)
        assert routh(1, 1, 1) == 1

    def test_triangle_ratio(self):
        assert triangle_ratio(F(1, 2)) == 0
        assert triangle_ratio(1) == 1
        assert triangle_ratio(F(1, 3)) == F(1, 7)

    @given(st.fractions(min_value=F(1, 100), max_value=1, max_denominator=100))
    def test_triangle_is_equal_routh(self, r):
        assert triangle_ratio(r) == routh(r, r, r)

    def test_ash_at_half(self):
        assert ash_bounds(F(1, 2)) == (F(1, 6), F(1, 5))
        with pytest.raises(ValueError):
            ash_bounds(1)


class TestSampling:
    def test_generator(self):
        X, Y = random_convex_polygons(6, 200, seed=1)
        assert X.shape == (200, 6)
        for i in range(0, 200, 20):
            assert is_convex_ccw(Polygon(tuple(zip(X[i], Y[i]))))
        assert np.all(np.hypot(X, Y) <= 1 + 1e-12)
        assert np.all(np.hypot(X, Y) >= 0.5 - 1e-12)
        X2, _ = random_convex_polygons(6, 200, seed=1)
        assert np.array_equal(X, X2)

    def test_sample_params_valid(self):
        for row in sample_params(500, seed=2):
            assert PentagonParams(*row).is_valid()

    def test_quad_half(self):
        rep = sample_bounds("quad", 0.5, 10_000, seed=0)
        assert rep.ok
        assert 1 / 6 < rep.min_ratio and rep.max_ratio <= 0.2 + 1e-12

    def test_triangle(self):
        rep = sample_bounds("triangle", 2 / 3, 1000, seed=0)
        assert rep.ok
        assert rep.min_ratio == pytest.approx(1 / 7, abs=1e-10)
        assert rep.max_ratio == pytest.approx(1 / 7, abs=1e-10)

    def test_heptagon(self):
        rep = sample_bounds("ngon", 0.3, 10_000, seed=0, n=7)
        assert rep.ok and rep.min_ratio >= 0.4

    def test_above_half_reports_only(self):
        rep = sample_bounds("ngon", 0.7, 100, seed=0, n=5)
        assert rep.bound == "none" and rep.ok

    def test_violations_are_serialised(self, monkeypatch):
        monkeypatch.setattr(kernels, "cevian_ratios", lambda X, Y, r: np.zeros(len(X)))
        rep = sample_bounds("quad", 0.5, 50, seed=0, max_reported=3)
        assert rep.violation_count == 50 and len(rep.violations) == 3
        v = rep.violations[0]
        P = Polygon.from_json(v["polygon"])
        assert P.n == 4 and v["geom_ratio"] > 1 / 6
        assert rep.to_json()["ok"] is False

    @pytest.mark.parametrize("args", [("hexagon", 0.5, 10), ("ngon", 0.5, 10), ("quad", 0.5, 0), ("quad", 1.0, 10)])
    def test_rejects(self, args):
        with pytest.raises(ValueError):
            sample_bounds(*args)
