"""Witness polygons: convex n-gons with inner-diagonal ratio below eps
(n >= 5) or above 1 - eps (n >= 6).

Nothing here is trusted analytically. Each generator searches over one
shape parameter and stops only when the measured quantities, computed by
:mod:`diagratio.geom`, satisfy the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .geom import (
    Polygon,
    area_ratio,
    is_convex_ccw,
    peripheral_areas,
    polygon_area,
)
from .pentagon import PentagonParams, closed_form_areas, params_to_vertices

__all__ = [
    "ConstructionSpec",
    "construct",
    "construct_small_ratio",
    "construct_large_ratio",
    "verify_construction",
]

_MAX_HALVINGS = 60


@dataclass(frozen=True)
class ConstructionSpec:
    n: int
    eps: float
    mode: str = "small_ratio"

    def __post_init__(self):
        if self.mode in ("small", "large"):
            object.__setattr__(self, "mode", self.mode + "_ratio")
        if self.mode not in ("small_ratio", "large_ratio"):
            raise ValueError(f"mode must be small_ratio or large_ratio, got {self.mode!r}")
        if int(self.n) != self.n or self.n < 5:
            raise ValueError(f"n must be an integer >= 5, got {self.n}")
        if self.mode == "large_ratio" and self.n < 6:
            raise ValueError("no convex pentagon has ratio above 1 - eps; large_ratio needs n >= 6")
        if not (0 < self.eps < 1):
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")


def _small_pentagon(eps) -> tuple[Polygon, Fraction]:
    """a = b = t, c = d = 1 with t doubled until the exact ratio is below eps/2."""
    e = Fraction(repr(eps)) if isinstance(eps, float) else Fraction(eps)
    target = e / 2
    t = 4 / e
    while closed_form_areas(PentagonParams(t, t, Fraction(1), Fraction(1))).ratio >= target:
        t *= 2
    return params_to_vertices(PentagonParams(t, t, Fraction(1), Fraction(1))), t


def _arc_points(p, q, k: int, height: float) -> list[tuple[float, float]]:
    """k points strictly inside the circular arc over chord pq with sagitta ``height``,
    bulging to the right of p -> q, ordered from p to q."""
    px, py = p
    qx, qy = q
    dx, dy = qx - px, qy - py
    chord = math.hypot(dx, dy)
    nx, ny = dy / chord, -dx / chord  # right-hand normal
    half = chord / 2
    radius = (half * half + height * height) / (2 * height)
    mx, my = (px + qx) / 2, (py + qy) / 2
    cx, cy = mx - (radius - height) * nx, my - (radius - height) * ny
    a0 = math.atan2(py - cy, px - cx)
    a1 = math.atan2(qy - cy, qx - cx)
    # walk the short way round, which passes through the bulge
    sweep = (a1 - a0 + math.pi) % (2 * math.pi) - math.pi
    return [
        (cx + radius * math.cos(a0 + sweep * j / (k + 1)), cy + radius * math.sin(a0 + sweep * j / (k + 1)))
        for j in range(1, k + 1)
    ]


def construct_small_ratio(n: int, eps: float) -> Polygon:
    """A strictly convex n-gon with area(K_1)/area(K) < eps.

    For n = 5 the pentagon is exact (rational vertices). For larger n the
    extra vertices sit on a flat outward arc over the edge EA whose height
    is halved until the polygon is convex and the measured ratio is small.
    """
    ConstructionSpec(n, eps, "small_ratio")
    base, _ = _small_pentagon(eps)
    if n == 5:
        return base
    verts = [(float(x), float(y)) for x, y in base.vertices]
    E, A = verts[4], verts[0]
    height = 1.0
    for _ in range(_MAX_HALVINGS):
        P = Polygon(tuple(verts + _arc_points(E, A, n - 5, height)))
        if is_convex_ccw(P) and area_ratio(P) < eps:
            return P
        height /= 2
    raise RuntimeError(f"no small-ratio {n}-gon found for eps={eps}")


def _circle_polygon(angles) -> Polygon:
    return Polygon(tuple((math.cos(a), math.sin(a)) for a in sorted(angles)))


def construct_large_ratio(n: int, eps: float) -> Polygon:
    """A strictly convex n-gon on the unit circle with area(K_1)/area(K) > 1 - eps.

    A regular m-gon (m = n // 2) together with a copy rotated by ``delta``;
    odd n adds one vertex at ``delta / 2``. ``delta`` starts at eps/20 and is
    halved until every peripheral triangle has area at most eps/n^2.
    """
    ConstructionSpec(n, eps, "large_ratio")
    m = n // 2
    delta = eps / 20
    for _ in range(_MAX_HALVINGS):
        angles = [2 * math.pi * k / m for k in range(m)]
        angles += [2 * math.pi * k / m + delta for k in range(m)]
        if n % 2:
            angles.append(delta / 2)
        P = _circle_polygon(angles)
        if is_convex_ccw(P) and max(peripheral_areas(P)) <= eps / n**2 and area_ratio(P) > 1 - eps:
            return P
        delta /= 2
    raise RuntimeError(f"no large-ratio {n}-gon found for eps={eps}")


def construct(spec: ConstructionSpec) -> Polygon:
    if spec.mode == "small_ratio":
        return construct_small_ratio(spec.n, spec.eps)
    return construct_large_ratio(spec.n, spec.eps)


def verify_construction(P: Polygon, spec: ConstructionSpec) -> dict:
    """Measured quantities and the checks each mode promises."""
    ratio = area_ratio(P)
    area = polygon_area(P)
    per = peripheral_areas(P)
    omega = sum(per[1:], per[0])
    out = {
        "n": P.n,
        "eps": spec.eps,
        "mode": spec.mode,
        "ratio": float(ratio),
        "area": float(area),
        "omega": float(omega),
        "max_peripheral": float(max(per)),
        "convex": is_convex_ccw(P),
    }
    checks = {"convex": out["convex"], "n": P.n == spec.n}
    if spec.mode == "small_ratio":
        checks["ratio"] = ratio < spec.eps
    else:
        n = spec.n
        checks["ratio"] = ratio > 1 - spec.eps
        checks["omega"] = omega <= spec.eps / n
        checks["peripheral"] = max(per) <= spec.eps / n**2
        checks["area"] = area > Fraction(1, n)
    out["checks"] = {k: bool(v) for k, v in checks.items()}
    out["ok"] = all(checks.values())
    return out
