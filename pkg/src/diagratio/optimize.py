"""Numerical maximisation of area(K_r)/area(K) over pentagon parameters,
sweeps over r, and sampled checks of the known cevian-polygon bounds.

The optimiser works in the coordinates

    (log a, log b, log(c - 1 + eta), log(d - 1 + eta)),   eta = 1e-9,

so that the face ``c = 1`` (where the r = 1 maximiser lives) sits at a
finite point. Infeasible points score ``-inf``.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .geom import Polygon, area_ratio
from .pentagon import (
    AFFINE_REGULAR_FLOAT,
    PentagonParams,
    closed_form_areas,
    params_to_vertices,
)
from .qfield import QuadExt

__all__ = [
    "ETA",
    "MAX_RATIO",
    "MAX_RATIO_FLOAT",
    "OptimizerConfig",
    "OptResult",
    "objective",
    "maximize",
    "regular_ratio",
    "SweepRow",
    "SweepTable",
    "sweep_r",
    "routh",
    "triangle_ratio",
    "ash_bounds",
    "sample_params",
    "random_convex_polygons",
    "BoundsReport",
    "sample_bounds",
    "worker_count",
]

ETA = 1e-9
#: the r = 1 maximum (7 - 3 sqrt5)/2, attained by affine-regular pentagons
MAX_RATIO = QuadExt(7, -3) / 2
MAX_RATIO_FLOAT = float(MAX_RATIO)
GAP_THRESHOLD = 1e-9


def _check_r(r) -> None:
    if not (0 < r <= 1):
        raise ValueError(f"r must lie in (0, 1], got {r}")


# --------------------------------------------------------------------------
# objective


def objective(p: PentagonParams, r=1.0) -> float:
    """area(K_r)/area(K) for the pentagon with parameters p.

    r = 1 goes through the closed-form areas, other r through the
    coordinates and the geometric cevian polygon.
    """
    _check_r(r)
    p = p.to_float().validate()
    if r == 1:
        return float(closed_form_areas(p).ratio)
    return float(area_ratio(params_to_vertices(p), float(r)))


def regular_ratio(r=1.0) -> float:
    """Ratio of the affine-regular pentagon."""
    return objective(AFFINE_REGULAR_FLOAT, r)


# --------------------------------------------------------------------------
# configuration and results


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 64
    max_iters: int = 2000
    tol: float = 1e-12
    seed: int = 0
    r: float = 1.0
    #: log-uniform range for a and b
    ab_range: tuple[float, float] = (0.05, 20.0)
    #: c - 1 and d - 1 are drawn log-uniformly from this range
    cd_shift_range: tuple[float, float] = (1e-3, 19.0)
    workers: int | None = None

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        _check_r(self.r)
        lo, hi = self.ab_range
        if not 0 < lo < hi:
            raise ValueError("ab_range must satisfy 0 < lo < hi")
        lo, hi = self.cd_shift_range
        if not 0 < lo < hi:
            raise ValueError("cd_shift_range must satisfy 0 < lo < hi")


@dataclass(frozen=True)
class OptResult:
    best_params: PentagonParams
    best_ratio: float
    converged: bool
    evaluations: int
    per_start_ratios: list = field(default_factory=list)
    best_start: int = 0
    r: float = 1.0

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "best_ratio": self.best_ratio,
            "best_params": self.best_params.to_json(exact=False),
            "converged": self.converged,
            "evaluations": self.evaluations,
            "best_start": self.best_start,
            "per_start_ratios": list(self.per_start_ratios),
        }


# --------------------------------------------------------------------------
# multi-start Nelder-Mead


def _decode(u) -> tuple[float, float, float, float]:
    return (
        math.exp(u[0]),
        math.exp(u[1]),
        1.0 + math.exp(u[2]) - ETA,
        1.0 + math.exp(u[3]) - ETA,
    )


def _encode(a, b, c, d) -> np.ndarray:
    return np.array([math.log(a), math.log(b), math.log(c - 1 + ETA), math.log(d - 1 + ETA)])


def _draw_params(rng: np.random.Generator, cfg: OptimizerConfig, count: int) -> np.ndarray:
    """``count`` valid (a, b, c, d) rows drawn from the sampling box."""
    la, ha = np.log(cfg.ab_range)
    lc, hc = np.log(cfg.cd_shift_range)
    out = np.empty((0, 4))
    while len(out) < count:
        m = max(2 * (count - len(out)), 16)
        a = np.exp(rng.uniform(la, ha, m))
        b = np.exp(rng.uniform(la, ha, m))
        c = 1.0 + np.exp(rng.uniform(lc, hc, m))
        d = 1.0 + np.exp(rng.uniform(lc, hc, m))
        ok = (a - a * d + c > 0) & (b - b * c + d > 0)
        out = np.vstack([out, np.column_stack([a, b, c, d])[ok]])
    return out[:count]


def sample_params(count: int, seed: int = 0, cfg: OptimizerConfig | None = None) -> np.ndarray:
    """Seeded valid parameter rows, shape (count, 4)."""
    cfg = cfg or OptimizerConfig()
    return _draw_params(np.random.default_rng(seed), cfg, count)


def _run_start(args) -> tuple[float, tuple, bool, int]:
    cfg, index = args
    rng = np.random.default_rng([cfg.seed, index])
    x0 = _encode(*_draw_params(rng, cfg, 1)[0])
    fn = kernels.params_objective
    r = float(cfg.r)

    def neg(u):
        if not np.all(np.abs(u) < 700):
            return math.inf
        val = fn(*_decode(u), r)
        return -val if val == val else math.inf

    opts = {"maxiter": cfg.max_iters, "maxfev": 4 * cfg.max_iters, "xatol": cfg.tol, "fatol": cfg.tol}
    res = minimize(neg, x0, method="Nelder-Mead", options=opts)
    nfev = int(res.nfev)
    # restart from the incumbent with a fresh simplex to escape early collapse
    res2 = minimize(neg, res.x, method="Nelder-Mead", options=opts)
    nfev += int(res2.nfev)
    best = res2 if res2.fun <= res.fun else res
    return (-float(best.fun), _decode(best.x), bool(res2.success), nfev)


def worker_count(requested: int | None = None) -> int:
    """Parallelism cap: ``requested``, else ``DIAGRATIO_THREADS``, else the CPU count."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("DIAGRATIO_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def maximize(cfg: OptimizerConfig) -> OptResult:
    """Best ratio over ``cfg.starts`` independent Nelder-Mead runs.

    Start ``i`` draws from its own generator seeded by ``(seed, i)``; the
    merge keeps the largest ratio and breaks ties by the lowest index, so
    the result does not depend on how the starts are scheduled.
    """
    jobs = [(cfg, i) for i in range(cfg.starts)]
    workers = min(worker_count(cfg.workers), cfg.starts)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(_run_start, jobs, chunksize=max(1, cfg.starts // (4 * workers))))
    else:
        outs = [_run_start(j) for j in jobs]
    best_i = 0
    for i, o in enumerate(outs):
        if o[0] > outs[best_i][0]:
            best_i = i
    ratio, params, _, _ = outs[best_i]
    p = PentagonParams(*params)
    if not p.is_valid():
        raise RuntimeError(f"optimizer returned infeasible parameters {params}")
    return OptResult(
        best_params=p,
        best_ratio=objective(p, cfg.r),
        converged=all(o[2] for o in outs),
        evaluations=sum(o[3] for o in outs),
        per_start_ratios=[o[0] for o in outs],
        best_start=best_i,
        r=float(cfg.r),
    )


# --------------------------------------------------------------------------
# sweeps over r


@dataclass(frozen=True)
class SweepRow:
    r: float
    best_ratio: float
    regular_ratio: float
    gap: float
    params: PentagonParams

    def as_list(self) -> list[float]:
        return [self.r, self.best_ratio, self.regular_ratio, self.gap, *map(float, self.params.astuple())]


@dataclass(frozen=True)
class SweepTable:
    rows: list[SweepRow]
    crossover: float | None
    bracket: tuple[float, float] | None = None

    COLUMNS = ("r", "best_ratio", "regular_ratio", "gap", "best_a", "best_b", "best_c", "best_d")

    def to_json(self) -> dict:
        return {
            "columns": list(self.COLUMNS),
            "rows": [row.as_list() for row in self.rows],
            "crossover": self.crossover,
            "bracket": list(self.bracket) if self.bracket else None,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.COLUMNS)
        for row in self.rows:
            w.writerow([f"{v:.17g}" for v in row.as_list()])
        return buf.getvalue()


def _row(r: float, cfg: OptimizerConfig) -> SweepRow:
    res = maximize(replace(cfg, r=r))
    reg = regular_ratio(r)
    return SweepRow(r, res.best_ratio, reg, res.best_ratio - reg, res.best_params)


def sweep_r(
    r_from: float,
    r_to: float,
    steps: int,
    cfg: OptimizerConfig | None = None,
    bisect_iters: int = 8,
) -> SweepTable:
    """Optimise on an even grid of r and bisect for the last r with a gap.

    The crossover is the estimated largest r at which the optimiser still
    beats the affine-regular pentagon by more than ``GAP_THRESHOLD``; it is
    None when no grid bracket exists.
    """
    if not (0 < r_from < r_to <= 1):
        raise ValueError("need 0 < r_from < r_to <= 1")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    cfg = cfg or OptimizerConfig()
    grid = np.linspace(r_from, r_to, steps)
    grid[-1] = r_to
    rows = [_row(float(r), cfg) for r in grid]
    bracket = None
    for lo, hi in zip(rows, rows[1:]):
        if lo.gap > GAP_THRESHOLD and hi.gap <= GAP_THRESHOLD:
            bracket = (lo.r, hi.r)
    crossover = None
    if bracket is not None:
        lo, hi = bracket
        for _ in range(bisect_iters):
            mid = 0.5 * (lo + hi)
            if _row(mid, cfg).gap > GAP_THRESHOLD:
                lo = mid
            else:
                hi = mid
        crossover = 0.5 * (lo + hi)
    return SweepTable(rows, crossover, bracket)


# --------------------------------------------------------------------------
# closed forms for triangles and quadrilaterals


def _one(v):
    return 1 if isinstance(v, (int, Fraction)) else 1.0


def routh(r, s, t):
    """Area ratio of the triangle cut out by three cevians with side ratios r, s, t."""
    for v in (r, s, t):
        _check_r(v)
    one = _one(r)
    num = (r * s * t - (one - r) * (one - s) * (one - t)) ** 2
    den = (one - s + r * s) * (one - t + s * t) * (one - r + r * t)
    return Fraction(num) / Fraction(den) if isinstance(num, (int, Fraction)) else num / den


def triangle_ratio(r):
    """``(2r-1)^2 / (r^2-r+1)``, the equal-ratio case of :func:`routh`."""
    _check_r(r)
    num = (2 * r - 1) ** 2
    den = r * r - r + 1
    return Fraction(num) / Fraction(den) if isinstance(num, (int, Fraction)) else num / den


def ash_bounds(r):
    """(lower, upper) with ``lower < ratio <= upper`` for every convex quadrilateral."""
    if not (0 < r < 1):
        raise ValueError(f"quadrilateral bounds need 0 < r < 1, got {r}")
    den = r * r - r + 1
    if isinstance(r, (int, Fraction)):
        return Fraction((1 - r) ** 3) / den, Fraction((1 - r) ** 2) / (r * r + 1)
    return (1 - r) ** 3 / den, (1 - r) ** 2 / (r * r + 1)


# --------------------------------------------------------------------------
# random convex polygons


@lru_cache(maxsize=16)
def _convex_batch(n: int, count: int, seed: int) -> tuple[np.ndarray, np.ndarray, int]:
    rng = np.random.default_rng([seed, n])
    xs, ys = [], []
    got = attempts = 0
    chunk = 4096 if n <= 6 else 1 << 16
    while got < count:
        theta = np.sort(rng.uniform(0.0, 2 * np.pi, (chunk, n)), axis=1)
        rad = rng.uniform(0.5, 1.0, (chunk, n))
        X = np.ascontiguousarray(rad * np.cos(theta))
        Y = np.ascontiguousarray(rad * np.sin(theta))
        ok = kernels.convex_mask(X, Y)
        attempts += chunk
        xs.append(X[ok])
        ys.append(Y[ok])
        got += int(ok.sum())
    X = np.ascontiguousarray(np.vstack(xs)[:count])
    Y = np.ascontiguousarray(np.vstack(ys)[:count])
    X.flags.writeable = False
    Y.flags.writeable = False
    return X, Y, attempts


def random_convex_polygons(n: int, count: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """``count`` strictly convex counterclockwise n-gons as (X, Y) arrays.

    Vertices are sorted uniform angles with radii uniform in [0.5, 1];
    non-convex draws are rejected. Results are cached and read-only.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if count < 1:
        raise ValueError("count must be >= 1")
    X, Y, _ = _convex_batch(int(n), int(count), int(seed))
    return X, Y


def _polygon_of(X, Y, i) -> Polygon:
    return Polygon(tuple(zip(map(float, X[i]), map(float, Y[i]))))


@dataclass
class BoundsReport:
    shape: str
    n: int
    r: float
    samples: int
    seed: int
    bound: str
    lower: float | None
    upper: float | None
    min_ratio: float
    max_ratio: float
    violation_count: int = 0
    #: the first few offenders, each with its polygon serialised
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_json(self) -> dict:
        return {
            "shape": self.shape,
            "n": self.n,
            "r": self.r,
            "samples": self.samples,
            "seed": self.seed,
            "bound": self.bound,
            "lower": self.lower,
            "upper": self.upper,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "ok": self.ok,
        }


_SHAPE_N = {"triangle": 3, "quad": 4}


def sample_bounds(
    shape: str,
    r: float,
    samples: int,
    seed: int = 0,
    n: int | None = None,
    rel_tol: float = 1e-12,
    max_reported: int = 10,
) -> BoundsReport:
    """Ratios of K_r over random convex shapes, checked against the known bound.

    ``shape`` is ``"triangle"`` (ratio equals :func:`triangle_ratio`),
    ``"quad"`` (Ash bounds) or ``"ngon"`` with ``n`` vertices (``ratio >= 1-2r``
    when r < 1/2, otherwise only the range is reported).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    _check_r(r)
    if shape in _SHAPE_N:
        n = _SHAPE_N[shape]
    elif shape == "ngon":
        if n is None or n < 3:
            raise ValueError("ngon needs n >= 3")
    else:
        raise ValueError(f"unknown shape {shape!r}")
    r = float(r)
    X, Y = random_convex_polygons(n, samples, seed)
    ratios = kernels.cevian_ratios(X, Y, r)

    lower = upper = None
    if shape == "triangle":
        bound = "routh"
        expected = float(triangle_ratio(r))
        lower = upper = expected
        bad = np.abs(ratios - expected) > 1e-10
    elif shape == "quad":
        if not r < 1:
            raise ValueError("quadrilateral bounds need r < 1")
        bound = "ash"
        lower, upper = map(float, ash_bounds(r))
        slack = rel_tol * max(upper, 1e-300)
        bad = ~((ratios > lower - slack) & (ratios <= upper + slack))
    elif r < 0.5:
        bound = "1-2r"
        lower = 1 - 2 * r
        bad = ~(ratios >= lower - rel_tol)
    else:
        bound = "none"
        bad = np.isnan(ratios)

    violations = []
    for i in np.flatnonzero(bad)[:max_reported]:
        P = _polygon_of(X, Y, i)
        violations.append(
            {
                "index": int(i),
                "ratio": float(ratios[i]),
                "geom_ratio": float(area_ratio(P, r)),
                "polygon": P.to_json(),
            }
        )
    return BoundsReport(
        shape=shape,
        n=n,
        r=r,
        samples=samples,
        seed=seed,
        bound=bound,
        lower=lower,
        upper=upper,
        min_ratio=float(np.nanmin(ratios)),
        max_ratio=float(np.nanmax(ratios)),
        violation_count=int(bad.sum()),
        violations=violations,
    )
