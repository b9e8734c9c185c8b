"""Exact and numeric tools for the area of the polygon cut out by the short
diagonals of a convex polygon."""

from .qfield import PHI, PHI_CONJ, SQRT5, QuadExt
from .geom import Polygon

#: (7 - 3 sqrt5)/2, the largest possible inner-to-outer area ratio for pentagons
MAX_PENTAGON_RATIO = QuadExt(7, -3) / 2

__all__ = ["QuadExt", "SQRT5", "PHI", "PHI_CONJ", "Polygon", "MAX_PENTAGON_RATIO"]
__version__ = "0.1.0"
