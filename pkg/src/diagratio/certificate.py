"""The pentagon inequality as a polynomial, and its positivity certificate.

``transcribe_f`` enters the 73-term polynomial ``f(c, d, x, y)`` as literal
data; ``build_f_from_areas`` derives the same polynomial independently from
the marginal-triangle areas. ``build_certificate`` assembles

    (x-1)^2 Q5 + (y-1)^2 Q6 + (x-c)^2 Q7 + (y-d)^2 Q8 + (x-d)^2 Q9
    + (y-c)^2 Q10 + (c-d)^2 Q11 + (x-y)^2 Q12 + (xy-1)^2 Q13
    + (xy-cd)^2 Q14 + Q0

from the Q polynomials, which are stored in the shifted generators
``(c-1), (d-1), x, y`` where nonnegativity of coefficients is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .poly import GENS, Monomial, SparsePoly
from .qfield import PHI_CONJ, QuadExt

__all__ = [
    "SHIFTED_GENS",
    "SQUARE_FACTORS",
    "CertificateReport",
    "transcribe_f",
    "build_f_from_areas",
    "certificate_terms",
    "build_certificate",
    "verify_certificate",
]

SHIFTED_GENS: tuple[str, ...] = ("(c-1)", "(d-1)", "x", "y")


def s(p, q=0) -> QuadExt:
    """Shorthand for the coefficient p + q*sqrt5."""
    return QuadExt(p, q)


@lru_cache(maxsize=None)
def transcribe_f() -> SparsePoly:
    """The 73-term polynomial f(c, d, x, y), entered term group by term group.

    One group carries a correction of an evident misprint: the printed
    ``(36-36 sqrt5)(c^2 d x y + c d^2 x^2 y)`` would duplicate the monomial
    ``c d^2 x^2 y`` of the preceding group and break the (c,d,x,y) ->
    (d,c,y,x) symmetry; the second monomial is ``c d^2 x y``.
    """
    c, d, x, y = SparsePoly.gens_of(GENS)
    f = (
        s(14, -6) * (c**2 * x * y**3 + d**2 * x**3 * y + c * d * x**3 * y + c * d * x * y**3 + c * x**3 * y + d * x * y**3)
        + s(32, -12) * (c**2 * x**2 * y**2 + d**2 * x**2 * y**2)
        + s(-48, 12) * (c**2 * x * y**2 + d**2 * x**2 * y)
        + s(-24, 12) * (c**2 * x**2 * y + d**2 * x * y**2)
        + s(-44, 20) * (c * x**2 * y**3 + d * x**3 * y**2)
        + s(28, -12) * (c * x * y**3 + d * x**3 * y)
        + s(-22, 10) * (c * x**3 * y**2 + d * x**2 * y**3)
        + s(48, -24) * (c * x**2 * y**2 + d * x**2 * y**2)
        + s(4, 4) * (c * x * y**2 + d * x**2 * y)
        + s(-6, 6) * (c**3 * d * x + c * d**3 * y)
        + s(6, 2) * (c**3 * d * y**2 + c * d**3 * x**2)
        + s(-26, 2) * (c**3 * d * y + c * d**3 * x)
        + s(-4, 8) * (c**3 * x * y**2 + d**3 * x**2 * y)
        + s(18, -6) * (c**3 * x * y + d**3 * x * y)
        + s(-30, 6) * (c**2 * d**2 * x + c**2 * d**2 * y)
        + s(18, -6) * (c**2 * d * x**2 + c * d**2 * y**2)
        + s(18, -14) * (c**2 * d * y**2 + c * d**2 * x**2)
        + s(8, 4) * (c**2 * d * y + c * d**2 * x)
        + s(-8, 4) * (c * d * x**3 + c * d * y**3)
        + s(-8, 4) * (c**2 * y**3 + d**2 * x**3)
        + s(6, 2) * (c**2 * y**2 + d**2 * x**2)
        + s(-22, 10) * (x**3 * y**2 + x**2 * y**3)
        + s(6, 2) * (c**4 * y**2 + d**4 * x**2)
        + s(-2, 2) * (c**4 * y + d**4 * x)
        + s(-16, 8) * (c**2 * d * x**2 * y + c * d**2 * x * y**2)
        + s(-22, 14) * (c**2 * d * x * y**2 + c * d**2 * x**2 * y)
        + s(36, -36) * (c**2 * d * x * y + c * d**2 * x * y)
        + s(6, -2) * (c**3 * d * x * y + c * d**3 * x * y)
        + s(-80, 28) * (c * d * x**2 * y + c * d * x * y**2)
        + 12 * (c**3 * d**2 + c**2 * d**3)
        + 4 * (c**4 * d + c * d**4)
        + s(0, -8) * (c**3 * y**2 + d**3 * x**2)
        + 4 * x**2 * y**2
        + s(18, 6) * c * d * x * y
        + s(12, -4) * c**2 * d**2 * x * y
        + s(36, -16) * x**3 * y**3
        + s(70, -30) * c * d * x**2 * y**2
    )
    return f


#: The cleared numerator is multiplied by 2(7+3 sqrt5), i.e. 16 (7+3 sqrt5)/8,
#: which is the normalisation of the literal 73-term listing.
F_NORMALISATION = s(14, 6)


@lru_cache(maxsize=None)
def build_f_from_areas() -> SparsePoly:
    """Derive f from the five marginal-triangle areas.

    Works in generators (a, b, c, d), clears the common denominator
    (a+c+d)(a+c)(b+d)(b+c+d) by exact division, scales the numerator and
    finally substitutes a = x (sqrt5-1)/2, b = y (sqrt5-1)/2.
    """
    g4 = ("a", "b", "c", "d")
    a, b, c, d = SparsePoly.gens_of(g4)
    marginals = [
        (d * (a + 1) * (c + d - 1), a + c + d),
        (c * (a + c - a * d), a + c),
        (a, SparsePoly.const(1, g4)),
        (b * (a * b + a * d + b * c), b + d),
        ((1 + b) * (b + d - b * c), b + c + d),
    ]
    den = (a + c + d) * (a + c) * (b + d) * (b + c + d)
    total = a + b + c + d + a * b
    numerator = s(Fraction(5, 2), Fraction(-3, 2)) * total * den
    for num, part in marginals:
        numerator = numerator + num * den.divide_exact(part)
    numerator = numerator * F_NORMALISATION

    x = SparsePoly.var("x", GENS) * PHI_CONJ
    y = SparsePoly.var("y", GENS) * PHI_CONJ
    return numerator.compose({"a": x, "b": y, "c": SparsePoly.var("c"), "d": SparsePoly.var("d")}, GENS)


def _shifted() -> tuple[SparsePoly, ...]:
    return SparsePoly.gens_of(SHIFTED_GENS)


@lru_cache(maxsize=None)
def q_polynomials() -> dict[str, SparsePoly]:
    """Q0, Q5..Q14 in the generators (c-1), (d-1), x, y, as listed."""
    C, D, x, y = _shifted()
    Q = {}
    Q["Q5"] = (
        4 * y + s(53, -23) * x * y + s(98, -36) * D * y + s(72, -31) * D * x * y + s(75, -24) * D**2
        + s(8, 8) * D**2 * y + s(-8, 4) * D**2 * x + s(67, -27) * D**3 + s(2, 2) * D**3 * y
        + 4 * D**4 + s(-78, 36) * C * y + s(-62, 28) * C * D + s(21, -1) * C * D**2
        + s(-48, 24) * C * D**2 * y + s(12, -4) * C * D**3 + s(12, -4) * C**2 * D * y
    )
    Q["Q6"] = (
        4 * x + s(53, -23) * x * y + s(98, -36) * C * x + s(72, -31) * C * y * x + s(75, -24) * C**2
        + s(8, 8) * C**2 * x + s(-8, 4) * C**2 * y + s(67, -27) * C**3 + s(2, 2) * C**3 * x
        + 4 * C**4 + s(-78, 36) * D * x + s(-62, 28) * C * D + s(21, -1) * D * C**2
        + s(-48, 24) * D * C**2 * x + s(12, -4) * D * C**3 + s(12, -4) * D**2 * C * x
    )
    Q["Q7"] = (
        s(65, -26) + s(-16, 8) * x + s(-88, 40) * x * y**2 + s(108, -40) * D + s(-24, 12) * D * x
        + s(-44, 20) * D * x * y**2 + s(14, -6) * D**2 * x * y + s(-3, 3) * D**3 + 12 * C
        + s(-8, 4) * C * x + s(30, -13) * C * x * y + s(-22, 10) * C * x * y**2 + s(-5, 7) * C * D
        + s(-8, 4) * C * D * x + s(14, -6) * C * D * x * y + s(15, -3) * C * D**2
        + s(-50, 24) * C**2 * y
    )
    Q["Q8"] = (
        s(65, -26) + s(-16, 8) * y + s(-88, 40) * y * x**2 + s(108, -40) * C + s(-24, 12) * C * y
        + s(-44, 20) * C * y * x**2 + s(14, -6) * C**2 * y * x + s(-3, 3) * C**3 + 12 * D
        + s(-8, 4) * D * y + s(30, -13) * D * y * x + s(-22, 10) * D * y * x**2 + s(-5, 7) * C * D
        + s(-8, 4) * D * C * y + s(14, -6) * C * D * x * y + s(15, -3) * D * C**2
        + s(-50, 24) * D**2 * x
    )
    Q["Q9"] = s(-43, 20) + s(-48, 24) * D + s(31, -9) * C * D + 4 * C * D**2
    Q["Q10"] = s(-43, 20) + s(-48, 24) * C + s(31, -9) * D * C + 4 * D * C**2
    # the listing's "++" before (4 sqrt5 - 8) is read as a single "+"
    Q["Q11"] = (
        s(2, 2) * (x**2 + y**2) + s(-38, 32) * x * y + s(70, -30) * (x + y) * x * y
        + s(-8, 4) * C * D * x * y + s(-12, 8) * x**2 * y**2 + s(50, -14) * (C + D) * x * y
        + s(2, 2) * (C * y**2 + D * x**2)
    )
    Q["Q12"] = s(17, -7) * x * y + s(-2, 1) * (C + D) * x * y + s(66, -24) * C * D
    Q["Q13"] = s(-59, 30) + s(36, -16) * x * y + s(-130, 64) * (C + D) + s(-130, 66) * C * D
    Q["Q14"] = SparsePoly.const(s(47, -18), SHIFTED_GENS)
    Q["Q0"] = (
        s(-152, 71) * (C**3 + D**3) * x * y + s(2, 2) * (C**4 * y**2 + D**4 * x**2)
        + s(16, -4) * (C**3 * y + D**3 * x) * x * y + s(2, 2) * C * D * (C**2 * x + D**2 * y)
        + s(-6, 6) * C * D * (C**2 * y**2 + D**2 * x**2) + s(56, -22) * (C**4 * y + D**4 * x)
        + s(-36, 24) * (C**3 * y**2 + D**3 * x**2) + s(194, -86) * (C**3 * y + D**3 * x)
        + s(-15, 12) * (C**2 * y**2 + D**2 * x**2) + s(-162, 84) * C * D * (C + D)
        + s(98, -42) * C * D * x * y * (C * y + D * x) + s(100, -40) * C * D * x * y * (x + y)
        + s(-35, 30) * C**2 * D**2 + s(-32, 16) * C**2 * D**2 * x * y
        + s(-242, 114) * C * D + s(108, -42) * C * D * x * y
    )
    return Q


def _square_factors() -> dict[str, SparsePoly]:
    c, d, x, y = SparsePoly.gens_of(GENS)
    return {
        "Q5": (x - 1) ** 2,
        "Q6": (y - 1) ** 2,
        "Q7": (x - c) ** 2,
        "Q8": (y - d) ** 2,
        "Q9": (x - d) ** 2,
        "Q10": (y - c) ** 2,
        "Q11": (c - d) ** 2,
        "Q12": (x - y) ** 2,
        "Q13": (x * y - 1) ** 2,
        "Q14": (x * y - c * d) ** 2,
    }


SQUARE_FACTORS = ("(x-1)^2", "(y-1)^2", "(x-c)^2", "(y-d)^2", "(x-d)^2", "(y-c)^2",
                  "(c-d)^2", "(x-y)^2", "(xy-1)^2", "(xy-cd)^2")


def unshift(q: SparsePoly) -> SparsePoly:
    """Map a polynomial in (c-1), (d-1), x, y back to c, d, x, y."""
    c, d, x, y = SparsePoly.gens_of(GENS)
    return q.compose({"(c-1)": c - 1, "(d-1)": d - 1, "x": x, "y": y}, GENS)


def certificate_terms() -> dict[str, SparsePoly]:
    """Each summand of the certificate, expanded in (c, d, x, y)."""
    Q = q_polynomials()
    out = {name: sq * unshift(Q[name]) for name, sq in _square_factors().items()}
    out["Q0"] = unshift(Q["Q0"])
    return out


@lru_cache(maxsize=None)
def build_certificate() -> SparsePoly:
    total = SparsePoly({}, GENS)
    for term in certificate_terms().values():
        total = total + term
    return total


@dataclass
class CertificateReport:
    residual: SparsePoly
    term_count_f: int
    symmetry_ok: bool
    nonneg_violations: list[tuple[str, Monomial, QuadExt]] = field(default_factory=list)
    f_from_areas_matches: bool = True
    from_areas_difference: SparsePoly | None = None

    @property
    def ok(self) -> bool:
        return (
            not self.residual
            and self.term_count_f == 73
            and self.symmetry_ok
            and not self.nonneg_violations
            and self.f_from_areas_matches
        )

    def to_json(self) -> dict:
        out = {
            "residual_terms": len(self.residual),
            "term_count_f": self.term_count_f,
            "symmetry_ok": self.symmetry_ok,
            "nonneg_violations": [
                {"polynomial": name, "monomial": list(mono), "coefficient": str(coef)}
                for name, mono, coef in self.nonneg_violations
            ],
            "f_from_areas_matches": self.f_from_areas_matches,
            "ok": self.ok,
        }
        if self.residual:
            out["residual"] = [
                {"monomial": list(m), "coefficient": str(c)} for m, c in self.residual.sorted_terms()
            ]
        if self.from_areas_difference:
            out["from_areas_difference"] = [
                {"monomial": list(m), "coefficient": str(c)}
                for m, c in self.from_areas_difference.sorted_terms()
            ]
        return out


def verify_certificate(f: SparsePoly | None = None) -> CertificateReport:
    """Check the certificate identity exactly.

    ``f`` defaults to :func:`transcribe_f`; passing another polynomial lets
    callers (and negative-control tests) check an alternative transcription.
    A nonzero residual is reported, never raised.
    """
    if f is None:
        f = transcribe_f()
    if f.gens != GENS:
        f = f.with_gens(GENS)
    residual = f - build_certificate()
    symmetry_ok = f.permute(("d", "c", "y", "x")) == f
    violations = []
    for name, q in q_polynomials().items():
        for mono, coef in q.sorted_terms():
            if coef.sign() < 0:
                violations.append((name, mono, coef))
    diff = build_f_from_areas() - f
    return CertificateReport(
        residual=residual,
        term_count_f=len(f),
        symmetry_ok=symmetry_ok,
        nonneg_violations=violations,
        f_from_areas_matches=not diff,
        from_areas_difference=diff if diff else None,
    )
