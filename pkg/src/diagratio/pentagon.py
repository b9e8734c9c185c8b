"""The (a, b, c, d) parametrisation of convex pentagons and its area formulas.

With ``O`` the crossing of the diagonals ``AD`` and ``CE`` and the
normalisation ``area(AOC) = 1``:

* ``D - O = -a (A - O)`` and ``E - O = -b (C - O)``,
* ``B - O = c (A - O) + d (C - O)``,

and ``ABC`` is chosen as the peripheral triangle of largest area, which
forces ``c >= 1`` and ``d >= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .geom import (
    GeometryError,
    Polygon,
    line_intersect,
    peripheral_areas,
    require_convex,
    triangle_area,
)
from .qfield import PHI, PHI_CONJ, QuadExt

__all__ = [
    "ConstraintViolation",
    "NegativeDiscriminantError",
    "PentagonParams",
    "PentagonAreas",
    "AFFINE_REGULAR",
    "AFFINE_REGULAR_FLOAT",
    "params_to_vertices",
    "vertices_to_params",
    "closed_form_areas",
    "gauss_area",
    "to_xy",
    "inequality_lhs",
    "cleared_denominator",
]

_PHI_F = (1 + math.sqrt(5)) / 2


class ConstraintViolation(ValueError):
    """Parameters outside the domain of convex pentagons."""

    def __init__(self, message: str, inequality: str):
        super().__init__(message)
        self.inequality = inequality


class NegativeDiscriminantError(ValueError):
    pass


def _is_float(v) -> bool:
    return isinstance(v, float) or type(v).__module__ == "numpy"


@dataclass(frozen=True)
class PentagonParams:
    a: object
    b: object
    c: object
    d: object

    def violations(self) -> list[str]:
        a, b, c, d = self.a, self.b, self.c, self.d
        checks = [
            (a > 0, "a > 0"),
            (b > 0, "b > 0"),
            (c >= 1, "c >= 1"),
            (d >= 1, "d >= 1"),
            (a - a * d + c > 0, "a - a*d + c > 0"),
            (b - b * c + d > 0, "b - b*c + d > 0"),
        ]
        return [name for ok, name in checks if not ok]

    def is_valid(self) -> bool:
        return not self.violations()

    def validate(self) -> PentagonParams:
        bad = self.violations()
        if bad:
            raise ConstraintViolation(f"parameters {self} violate {bad[0]}", bad[0])
        return self

    @property
    def is_exact(self) -> bool:
        return not any(_is_float(v) for v in self.astuple())

    def astuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def to_float(self) -> PentagonParams:
        return PentagonParams(*(float(v) for v in self.astuple()))

    @property
    def x(self):
        return to_xy(self)[0]

    @property
    def y(self):
        return to_xy(self)[1]

    def to_json(self, exact: bool | None = None) -> dict:
        exact = self.is_exact if exact is None else exact
        enc = str if exact else float
        return {k: enc(v) for k, v in zip("abcd", self.astuple())}

    @classmethod
    def from_json(cls, data: dict) -> PentagonParams:
        def dec(v):
            if isinstance(v, str):
                q = QuadExt.parse(v) if "sqrt" in v else QuadExt(Fraction(v))
                return q.p if q.is_rational() else q
            return float(v)

        return cls(*(dec(data[k]) for k in "abcd"))


AFFINE_REGULAR = PentagonParams(PHI_CONJ, PHI_CONJ, Fraction(1), Fraction(1))
AFFINE_REGULAR_FLOAT = AFFINE_REGULAR.to_float()


@dataclass(frozen=True)
class PentagonAreas:
    total: object
    peripheral: tuple
    marginal: tuple
    omega: object
    phi: object
    ratio: object


def params_to_vertices(p: PentagonParams) -> Polygon:
    """Canonical embedding ``O = (0,0)``, ``A - O = (1,0)``, ``C - O = (0,2)``.

    Returns the vertices ``A, B, C, D, E``.
    """
    p.validate()
    a, b, c, d = p.astuple()
    zero = 0.0 if not p.is_exact else 0
    return Polygon(((1 + zero, zero), (c, 2 * d), (zero, 2 + zero), (-a, zero), (zero, -2 * b)))


def _snap_unit(v, slack: float = 1e-12):
    # float roundoff can leave c or d just below 1 at the maximal label
    if _is_float(v) and 1 - slack < v < 1:
        return 1.0
    return v


def vertices_to_params(P: Polygon, rel_tol: float = 1e-9) -> PentagonParams:
    """Recover (a, b, c, d) from a strictly convex counterclockwise pentagon.

    The labelling starts at the peripheral triangle of largest area (lowest
    index on ties). The parameters are ratios of signed areas, hence affine
    invariants.
    """
    if P.n != 5:
        raise GeometryError(f"expected a pentagon, got {P.n} vertices")
    require_convex(P)
    sig = peripheral_areas(P)
    start = max(range(5), key=lambda k: (sig[k], -k))
    A, B, C, D, E = (P[start + k] for k in range(5))
    O = line_intersect(A, D, C, E)
    unit = triangle_area(O, A, C)
    if unit == 0:
        raise GeometryError("degenerate pentagon: area(AOC) vanishes")
    a = triangle_area(O, C, D) / unit
    b = triangle_area(O, E, A) / unit
    c = triangle_area(O, B, C) / unit
    d = triangle_area(O, A, B) / unit
    ab = triangle_area(O, D, E) / unit
    if P.is_exact:
        if ab != a * b:
            raise AssertionError(f"area(ODE)/area(AOC) = {ab} but a*b = {a * b}")
    elif abs(float(ab) - float(a) * float(b)) > rel_tol * max(1.0, abs(float(ab))):
        raise AssertionError(f"area(ODE)/area(AOC) = {ab!r} but a*b = {a * b!r}")
    return PentagonParams(a, b, _snap_unit(c), _snap_unit(d)).validate()


def closed_form_areas(p: PentagonParams) -> PentagonAreas:
    p.validate()
    a, b, c, d = p.astuple()
    total = a + b + c + d + a * b
    peripheral = (c + d - 1, a - a * d + c, a * b + a, a * b + b, b - b * c + d)
    marginal = (
        d * (a + 1) * (c + d - 1) / (a + c + d),
        c * (a + c - a * d) / (a + c),
        a,
        b * (a * b + a * d + b * c) / (b + d),
        (1 + b) * (b + d - b * c) / (b + c + d),
    )
    phi = marginal[0] + marginal[1] + marginal[2] + marginal[3] + marginal[4]
    omega = 2 * total - 1 - a * d - b * c
    return PentagonAreas(
        total=total,
        peripheral=peripheral,
        marginal=marginal,
        omega=omega,
        phi=phi,
        ratio=(total - phi) / total,
    )


def _rational_sqrt(v: Fraction) -> Fraction | None:
    n, m = v.numerator, v.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


def _sqrt(disc):
    """Exact square root when it lies in Q(sqrt5) in an obvious way, else float."""
    if isinstance(disc, QuadExt) and disc.is_rational():
        disc = disc.p
    if isinstance(disc, (int, Fraction)):
        disc = Fraction(disc)
        r = _rational_sqrt(disc)
        if r is not None:
            return r
        r = _rational_sqrt(disc / 5)
        if r is not None:
            return QuadExt(0, r)
    return math.sqrt(float(disc))


def gauss_area(sigmas) -> object:
    """Larger root of ``D^2 - (sum s_i) D + sum s_i s_{i+1} = 0``."""
    s = list(sigmas)
    if len(s) != 5:
        raise ValueError("need five peripheral areas")
    if any(v <= 0 for v in s):
        raise ValueError("peripheral areas must be positive")
    total = s[0] + s[1] + s[2] + s[3] + s[4]
    cyc = s[0] * s[1]
    for k in range(1, 5):
        cyc = cyc + s[k] * s[(k + 1) % 5]
    disc = total * total - 4 * cyc
    if disc < 0:
        raise NegativeDiscriminantError(f"discriminant {disc} < 0: not realisable by a convex pentagon")
    root = _sqrt(disc)
    if isinstance(root, float):
        return (float(total) + root) / 2
    return (total + root) / 2


def to_xy(p: PentagonParams) -> tuple:
    """``x = a (sqrt5+1)/2``, ``y = b (sqrt5+1)/2``; (1, 1) at the affine-regular point."""
    if p.is_exact:
        return (PHI * p.a, PHI * p.b)
    return (float(p.a) * _PHI_F, float(p.b) * _PHI_F)


def inequality_lhs(p: PentagonParams):
    """``phi - (3 sqrt5 - 5)/2 * total``; nonnegative on the whole domain."""
    areas = closed_form_areas(p)
    if p.is_exact:
        return areas.phi - QuadExt(Fraction(-5, 2), Fraction(3, 2)) * areas.total
    return float(areas.phi) - (3 * math.sqrt(5) - 5) / 2 * float(areas.total)


def cleared_denominator(p: PentagonParams):
    """``(a+c+d)(a+c)(b+d)(b+c+d)``, the factor cleared to obtain the polynomial f."""
    a, b, c, d = p.astuple()
    return (a + c + d) * (a + c) * (b + d) * (b + c + d)
