"""Pure-Python float kernels; the reference the compiled core must match.

Signatures mirror ``_kernels.pyx`` one to one. Arrays are 1-D float64 for
single polygons and 2-D (polygons x vertices) for the batch variants; the
batch variants lean on numpy vectorisation, the scalar ones are plain loops.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def polygon_area(xs, ys) -> float:
    n = len(xs)
    s = 0.0
    for k in range(n):
        j = k + 1 if k + 1 < n else 0
        s += xs[k] * ys[j] - xs[j] * ys[k]
    return 0.5 * s


def _tri2(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def is_strictly_convex(xs, ys, rel_tol: float = 1e-12) -> bool:
    n = len(xs)
    if n < 3:
        return False
    diam2 = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = (xs[i] - xs[j]) ** 2 + (ys[i] - ys[j]) ** 2
            if d > diam2:
                diam2 = d
    # doubled areas against a doubled threshold
    thresh = 2.0 * rel_tol * diam2
    for k in range(n):
        k1 = (k + 1) % n
        for m in range(2, n + 1):
            j = (k + m) % n
            if m == n:
                j = (k - 1) % n
                w = _tri2(xs[j], ys[j], xs[k], ys[k], xs[k1], ys[k1])
            else:
                w = _tri2(xs[k], ys[k], xs[k1], ys[k1], xs[j], ys[j])
            if not w > thresh:
                return False
    return True


def peripheral_sum(xs, ys) -> float:
    n = len(xs)
    s = 0.0
    for k in range(n):
        a, b, c = k, (k + 1) % n, (k + 2) % n
        s += _tri2(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c])
    return 0.5 * s


def cevian_ratio(xs, ys, r: float) -> float:
    """|area(K_r)| / area(K); NaN if two consecutive chords are parallel."""
    n = len(xs)
    bx = [0.0] * n
    by = [0.0] * n
    for k in range(n):
        i1, i2 = (k + 1) % n, (k + 2) % n
        bx[k] = xs[i1] + r * (xs[i2] - xs[i1])
        by[k] = ys[i1] + r * (ys[i2] - ys[i1])
    px = [0.0] * n
    py = [0.0] * n
    for j in range(n):
        i = j - 1 if j > 0 else n - 1
        d1x, d1y = bx[i] - xs[i], by[i] - ys[i]
        d2x, d2y = bx[j] - xs[j], by[j] - ys[j]
        den = d1x * d2y - d1y * d2x
        if den == 0.0:
            return math.nan
        wx, wy = xs[j] - xs[i], ys[j] - ys[i]
        t = (wx * d2y - wy * d2x) / den
        px[j] = xs[i] + t * d1x
        py[j] = ys[i] + t * d1y
    return abs(polygon_area(px, py)) / polygon_area(xs, ys)


def cevian_ratios(X, Y, r: float) -> np.ndarray:
    """Row-wise :func:`cevian_ratio`, vectorised over polygons with numpy."""
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    X1, Y1 = np.roll(X, -1, axis=1), np.roll(Y, -1, axis=1)
    X2, Y2 = np.roll(X, -2, axis=1), np.roll(Y, -2, axis=1)
    BX, BY = X1 + r * (X2 - X1), Y1 + r * (Y2 - Y1)
    # chord j-1 against chord j
    AXi, AYi = np.roll(X, 1, axis=1), np.roll(Y, 1, axis=1)
    BXi, BYi = np.roll(BX, 1, axis=1), np.roll(BY, 1, axis=1)
    d1x, d1y = BXi - AXi, BYi - AYi
    d2x, d2y = BX - X, BY - Y
    den = d1x * d2y - d1y * d2x
    with np.errstate(divide="ignore", invalid="ignore"):
        t = ((X - AXi) * d2y - (Y - AYi) * d2x) / den
    PX, PY = AXi + t * d1x, AYi + t * d1y
    out = np.abs(_areas(PX, PY)) / _areas(X, Y)
    out[np.any(den == 0.0, axis=1)] = np.nan
    return out


def _areas(X, Y) -> np.ndarray:
    return 0.5 * np.sum(X * np.roll(Y, -1, axis=1) - np.roll(X, -1, axis=1) * Y, axis=1)


def convex_mask(X, Y, rel_tol: float = 1e-12) -> np.ndarray:
    """Row-wise :func:`is_strictly_convex`, vectorised with numpy."""
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    m, n = X.shape
    diam2 = np.zeros(m)
    for i in range(n):
        for j in range(i + 1, n):
            np.maximum(diam2, (X[:, i] - X[:, j]) ** 2 + (Y[:, i] - Y[:, j]) ** 2, out=diam2)
    thresh = 2.0 * rel_tol * diam2
    ok = np.ones(m, dtype=bool)
    for k in range(n):
        k1 = (k + 1) % n
        ex, ey = X[:, k1] - X[:, k], Y[:, k1] - Y[:, k]
        for step in range(2, n):
            j = (k + step) % n
            w = ex * (Y[:, j] - Y[:, k]) - ey * (X[:, j] - X[:, k])
            ok &= w > thresh
        j = (k - 1) % n
        w = (X[:, k] - X[:, j]) * (Y[:, k1] - Y[:, j]) - (Y[:, k] - Y[:, j]) * (X[:, k1] - X[:, j])
        ok &= w > thresh
    return ok


def params_valid(a: float, b: float, c: float, d: float) -> bool:
    return a > 0 and b > 0 and c >= 1 and d >= 1 and a - a * d + c > 0 and b - b * c + d > 0


def closed_form_ratio(a: float, b: float, c: float, d: float) -> float:
    total = a + b + c + d + a * b
    phi = (
        d * (a + 1) * (c + d - 1) / (a + c + d)
        + c * (a + c - a * d) / (a + c)
        + a
        + b * (a * b + a * d + b * c) / (b + d)
        + (1 + b) * (b + d - b * c) / (b + c + d)
    )
    return (total - phi) / total


def closed_form_ratios(A, B, C, D) -> np.ndarray:
    a, b, c, d = (np.asarray(v, dtype=np.float64) for v in (A, B, C, D))
    return closed_form_ratio(a, b, c, d)


def pentagon_ratio(a: float, b: float, c: float, d: float, r: float) -> float:
    """Area ratio of K_r for the canonical embedding of (a, b, c, d)."""
    xs = [1.0, c, 0.0, -a, 0.0]
    ys = [0.0, 2.0 * d, 2.0, 0.0, -2.0 * b]
    return cevian_ratio(xs, ys, r)


def params_feasible(a: float, b: float, c: float, d: float, rel_tol: float = 1e-12) -> bool:
    """Valid params whose canonical pentagon also passes the float convexity test."""
    if not params_valid(a, b, c, d):
        return False
    return is_strictly_convex([1.0, c, 0.0, -a, 0.0], [0.0, 2.0 * d, 2.0, 0.0, -2.0 * b], rel_tol)


def params_objective(a: float, b: float, c: float, d: float, r: float) -> float:
    """Ratio for feasible params, -inf otherwise; closed form when r == 1."""
    if not params_feasible(a, b, c, d):
        return -math.inf
    if r == 1.0:
        return closed_form_ratio(a, b, c, d)
    return pentagon_ratio(a, b, c, d, r)
