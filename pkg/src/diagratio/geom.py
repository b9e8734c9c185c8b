"""Planar geometry of convex polygons, generic over the scalar type.

Every function here works unchanged with ``float``, ``Fraction`` and
:class:`~diagratio.qfield.QuadExt` coordinates. Exact scalars get exact
predicates; floats use a relative tolerance for strict convexity.
Vertices are listed counterclockwise and all indices are taken mod n.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .qfield import QuadExt

__all__ = [
    "GeometryError",
    "PolygonSizeError",
    "ParallelLinesError",
    "ConvexityError",
    "Polygon",
    "wedge",
    "triangle_area",
    "polygon_area",
    "is_convex_ccw",
    "reflex_vertices",
    "require_convex",
    "line_intersect",
    "inner_diagonal_polygon",
    "cevian_polygon",
    "peripheral_areas",
    "peripheral_sum",
    "marginal_areas",
    "marginal_sum",
    "regular_polygon",
    "area_ratio",
    "cevian_points",
    "CONVEXITY_REL_TOL",
]

#: a float triple counts as strictly convex iff its wedge exceeds this
#: fraction of the squared diameter
CONVEXITY_REL_TOL = 1e-12


class GeometryError(ValueError):
    pass


class PolygonSizeError(GeometryError):
    pass


class ParallelLinesError(GeometryError):
    pass


class ConvexityError(GeometryError):
    def __init__(self, message: str, vertex: int | None = None):
        super().__init__(message)
        self.vertex = vertex


def _is_float(v) -> bool:
    return isinstance(v, (float, np.floating))


def _half(v):
    if isinstance(v, int):
        return Fraction(v, 2)
    if _is_float(v):
        return 0.5 * v
    return v / 2


def _exact(v) -> bool:
    return isinstance(v, (int, Fraction, QuadExt))


@dataclass(frozen=True)
class Polygon:
    """An ordered vertex list ``((x0, y0), (x1, y1), ...)``."""

    vertices: tuple[tuple, ...]

    def __post_init__(self):
        verts = tuple((v[0], v[1]) for v in self.vertices)
        if len(verts) < 3:
            raise PolygonSizeError(f"a polygon needs at least 3 vertices, got {len(verts)}")
        object.__setattr__(self, "vertices", verts)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, k: int) -> tuple:
        return self.vertices[k % len(self.vertices)]

    def __iter__(self):
        return iter(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def is_exact(self) -> bool:
        return all(_exact(c) for v in self.vertices for c in v)

    def map(self, fn: Callable) -> Polygon:
        return Polygon(tuple((fn(x), fn(y)) for x, y in self.vertices))

    def to_float(self) -> Polygon:
        return self.map(float)

    def affine(self, matrix, offset=(0, 0)) -> Polygon:
        (m00, m01), (m10, m11) = matrix
        ox, oy = offset
        return Polygon(
            tuple((m00 * x + m01 * y + ox, m10 * x + m11 * y + oy) for x, y in self.vertices)
        )

    def rotated(self, k: int) -> Polygon:
        """Cyclic relabelling so that vertex ``k`` comes first."""
        k %= self.n
        return Polygon(self.vertices[k:] + self.vertices[:k])

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        xs = np.array([float(x) for x, _ in self.vertices])
        ys = np.array([float(y) for _, y in self.vertices])
        return xs, ys

    def to_json(self) -> dict:
        def enc(v):
            return float(v) if _is_float(v) else str(v)

        return {"vertices": [[enc(x), enc(y)] for x, y in self.vertices]}

    @classmethod
    def from_json(cls, data) -> Polygon:
        """Accepts numbers (binary64) or exact strings (``"1/3"``, ``"1/2+1/2*sqrt5"``)."""
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "vertices" not in data:
            raise GeometryError('polygon JSON must be an object with a "vertices" list')
        verts = []
        for v in data["vertices"]:
            if not isinstance(v, (list, tuple)) or len(v) != 2:
                raise GeometryError(f"bad vertex {v!r}")
            verts.append(tuple(_decode_scalar(c) for c in v))
        return cls(tuple(verts))


def _decode_scalar(c):
    if isinstance(c, bool):
        raise GeometryError("booleans are not coordinates")
    if isinstance(c, (int, float)):
        if not math.isfinite(c):
            raise GeometryError("coordinates must be finite")
        return float(c)
    if isinstance(c, str):
        if "sqrt" in c:
            q = QuadExt.parse(c)
            return q.p if q.is_rational() else q
        try:
            return Fraction(c)
        except ValueError:
            raise GeometryError(f"bad exact coordinate {c!r}") from None
    raise GeometryError(f"bad coordinate {c!r}")


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def wedge(u, v):
    """Signed area of the triangle spanned by vectors u and v: (u_x v_y - u_y v_x)/2."""
    return _half(u[0] * v[1] - u[1] * v[0])


def triangle_area(p, q, r):
    """Signed area of triangle pqr (positive when counterclockwise)."""
    return wedge(_sub(q, p), _sub(r, p))


def polygon_area(P: Polygon):
    """Signed area by the fan from vertex 0."""
    v0 = P[0]
    total = 0
    for k in range(1, P.n - 1):
        total = total + triangle_area(v0, P[k], P[k + 1])
    return total


def _diameter_sq(P: Polygon) -> float:
    pts = [(float(x), float(y)) for x, y in P.vertices]
    return max((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 for a in pts for b in pts)


def reflex_vertices(P: Polygon, rel_tol: float = CONVEXITY_REL_TOL) -> list[int]:
    """Indices k at which P fails strict convexity.

    Vertex ``k`` is flagged when the turn ``A[k-1] A[k] A[k+1]`` is not
    strictly left, or when some other vertex fails to lie strictly left of
    the edge leaving ``A[k]`` (this also rejects self-overlapping stars).
    """
    exact = P.is_exact
    thresh = 0.0 if exact else rel_tol * _diameter_sq(P)
    n = P.n
    bad = []

    def positive(w) -> bool:
        if exact:
            return w > 0
        return float(w) > thresh

    for k in range(n):
        if not positive(triangle_area(P[k - 1], P[k], P[k + 1])):
            bad.append(k)
            continue
        edge = (P[k], P[k + 1])
        if not all(positive(triangle_area(edge[0], edge[1], P[j])) for j in range(k + 2, k + n)):
            bad.append(k)
    return bad


def is_convex_ccw(P: Polygon, rel_tol: float = CONVEXITY_REL_TOL) -> bool:
    return not reflex_vertices(P, rel_tol)


def require_convex(P: Polygon) -> None:
    bad = reflex_vertices(P)
    if bad:
        # name a vertex whose own turn fails when there is one
        exact = P.is_exact
        thresh = 0.0 if exact else CONVEXITY_REL_TOL * _diameter_sq(P)
        turns = [k for k in bad if not (triangle_area(P[k - 1], P[k], P[k + 1]) > thresh)]
        k = turns[0] if turns else bad[0]
        raise ConvexityError(
            f"polygon is not strictly convex counterclockwise at vertex {k}", vertex=k
        )


def line_intersect(p1, p2, p3, p4):
    """Intersection of the infinite lines p1p2 and p3p4."""
    d1 = _sub(p2, p1)
    d2 = _sub(p4, p3)
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if _is_float(den):
        scale = math.hypot(*map(float, d1)) * math.hypot(*map(float, d2))
        if abs(den) <= 1e-15 * scale:
            raise ParallelLinesError("lines are parallel")
    elif den == 0:
        raise ParallelLinesError("lines are parallel")
    w = _sub(p3, p1)
    num = w[0] * d2[1] - w[1] * d2[0]
    t = Fraction(num, den) if isinstance(num, int) and isinstance(den, int) else num / den
    return (p1[0] + t * d1[0], p1[1] + t * d1[1])


def inner_diagonal_polygon(P: Polygon) -> Polygon:
    """The polygon ``B_0 ... B_{n-1}`` with ``B_i = A_{i-1}A_{i+1} x A_iA_{i+2}``.

    For a quadrilateral all four points coincide at the crossing of the two
    diagonals, giving a degenerate polygon of area zero.
    """
    if P.n < 4:
        raise PolygonSizeError("short diagonals need at least 4 vertices")
    require_convex(P)
    return Polygon(
        tuple(line_intersect(P[i - 1], P[i + 1], P[i], P[i + 2]) for i in range(P.n))
    )


def _check_r(r) -> None:
    if not (0 < r <= 1):
        raise ValueError(f"r must lie in (0, 1], got {r}")


def cevian_points(P: Polygon, r) -> list[tuple]:
    """``B_k = A_{k+1} + r (A_{k+2} - A_{k+1})`` for every k."""
    out = []
    for k in range(P.n):
        a, b = P[k + 1], P[k + 2]
        out.append((a[0] + r * (b[0] - a[0]), a[1] + r * (b[1] - a[1])))
    return out


def cevian_polygon(P: Polygon, r) -> Polygon:
    """The polygon bounded by the chords ``A_k B_k``.

    Vertex ``j`` is the crossing of chords ``j-1`` and ``j``, so at ``r = 1``
    the result coincides vertex by vertex with :func:`inner_diagonal_polygon`.
    For triangles with ``r < 1/2`` the cevian triangle comes out clockwise;
    use ``abs(polygon_area(...))`` when a ratio is wanted.
    """
    _check_r(r)
    require_convex(P)
    bs = cevian_points(P, r)
    verts = []
    for j in range(P.n):
        i = (j - 1) % P.n
        try:
            verts.append(line_intersect(P[i], bs[i], P[j], bs[j]))
        except ParallelLinesError as exc:
            raise GeometryError(f"chords {i} and {j} are parallel") from exc
    return Polygon(tuple(verts))


def peripheral_areas(P: Polygon) -> list:
    """Areas of the triangles ``A_k A_{k+1} A_{k+2}``."""
    return [triangle_area(P[k], P[k + 1], P[k + 2]) for k in range(P.n)]


def peripheral_sum(P: Polygon):
    parts = peripheral_areas(P)
    total = parts[0]
    for t in parts[1:]:
        total = total + t
    return total


def marginal_areas(P: Polygon) -> list:
    """Areas of the triangles ``A_k A_{k+1} B_{k+1}``."""
    if P.n < 5:
        raise PolygonSizeError("marginal triangles need at least 5 vertices")
    B = inner_diagonal_polygon(P)
    return [triangle_area(P[k], P[k + 1], B[k + 1]) for k in range(P.n)]


def marginal_sum(P: Polygon):
    """Total marginal area, computed twice (triangle sum and area difference)."""
    parts = marginal_areas(P)
    by_triangles = parts[0]
    for t in parts[1:]:
        by_triangles = by_triangles + t
    by_difference = polygon_area(P) - polygon_area(inner_diagonal_polygon(P))
    if P.is_exact:
        if by_triangles != by_difference:
            raise AssertionError(f"marginal sum mismatch: {by_triangles} != {by_difference}")
    else:
        tb, td = float(by_triangles), float(by_difference)
        if abs(tb - td) > 1e-9 * max(abs(tb), abs(td), float(abs(polygon_area(P)))):
            raise AssertionError(f"marginal sum mismatch: {tb!r} vs {td!r}")
    return by_triangles


def regular_polygon(n: int, radius: float = 1.0, phase: float = 0.0) -> Polygon:
    """Float vertices of a regular n-gon, counterclockwise."""
    return Polygon(
        tuple(
            (radius * math.cos(phase + 2 * math.pi * k / n), radius * math.sin(phase + 2 * math.pi * k / n))
            for k in range(n)
        )
    )


def area_ratio(P: Polygon, r=1):
    """``|area(K_r)| / area(K)``; r = 1 uses the short diagonals."""
    inner = inner_diagonal_polygon(P) if (r == 1 and P.n >= 4) else cevian_polygon(P, r)
    return abs(polygon_area(inner)) / polygon_area(P)
