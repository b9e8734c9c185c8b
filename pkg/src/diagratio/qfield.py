"""Exact arithmetic in the real quadratic field Q(sqrt 5).

Rationals are :class:`fractions.Fraction`; an element of the field is a pair
of rationals ``(p, q)`` standing for ``p + q*sqrt(5)``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = [
    "QuadExt",
    "Rational",
    "SQRT5",
    "PHI",
    "PHI_CONJ",
    "to_rational",
    "q5_arith",
    "q5_inv",
    "q5_sign",
    "q5_to_float",
]

Rational = Fraction
Scalar = Union[int, Fraction, "QuadExt"]


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or exact decimal/fraction string to a Fraction.

    Floats are rejected on purpose: a binary64 value silently entering an
    exact computation would defeat the point of this module.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _fmt_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


_TERM_RE = re.compile(r"[+-]?[^+-]+")
_SURD_RE = re.compile(r"([+-]?(?:\d+(?:/\d+)?)?)\*?sqrt\(?5\)?")


@total_ordering
class QuadExt:
    """An element ``p + q*sqrt(5)`` of Q(sqrt 5) with rational ``p`` and ``q``.

    Instances are immutable and hashable. Mixed arithmetic with ``int`` and
    ``Fraction`` is supported; ``float`` operands are refused.
    """

    __slots__ = ("_p", "_q")

    def __init__(self, p=0, q=0) -> None:
        self._p = to_rational(p)
        self._q = to_rational(q)

    @property
    def p(self) -> Fraction:
        return self._p

    @property
    def q(self) -> Fraction:
        return self._q

    @classmethod
    def coerce(cls, value) -> QuadExt:
        if isinstance(value, QuadExt):
            return value
        return cls(to_rational(value), 0)

    def is_rational(self) -> bool:
        return self._q == 0

    def conjugate(self) -> QuadExt:
        return QuadExt(self._p, -self._q)

    def norm(self) -> Fraction:
        """Field norm ``p**2 - 5*q**2`` (product with the conjugate)."""
        return self._p * self._p - 5 * self._q * self._q

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> QuadExt:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self._p + o._p, self._q + o._q)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self._p, -self._q)

    def __pos__(self) -> QuadExt:
        return self

    def __sub__(self, other) -> QuadExt:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self._p - o._p, self._q - o._q)

    def __rsub__(self, other) -> QuadExt:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> QuadExt:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        return QuadExt(p1 * p2 + 5 * q1 * q2, p1 * q2 + p2 * q1)

    __rmul__ = __mul__

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            # norm vanishes only at zero since sqrt(5) is irrational
            raise ZeroDivisionError("inverse of zero in Q(sqrt5)")
        return QuadExt(self._p / n, -self._q / n)

    def __truediv__(self, other) -> QuadExt:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> QuadExt:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> QuadExt:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuadExt(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def sign(self) -> int:
        p, q = self._p, self._q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: the larger of |p| and |q|*sqrt5 wins
        return sp if p * p > 5 * q * q else sq

    def __eq__(self, other) -> bool:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self._p == o._p and self._q == o._q

    def __lt__(self, other) -> bool:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(self._p)
        return hash((self._p, self._q))

    def __bool__(self) -> bool:
        return bool(self._p) or bool(self._q)

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    # -- conversion -------------------------------------------------------

    def __float__(self) -> float:
        return q5_to_float(self)

    def __repr__(self) -> str:
        return f"QuadExt({_fmt_rational(self._p)!r}, {_fmt_rational(self._q)!r})"

    def __str__(self) -> str:
        p, q = self._p, self._q
        if q == 0:
            return _fmt_rational(p)
        surd = "sqrt5" if abs(q) == 1 else f"{_fmt_rational(abs(q))}*sqrt5"
        if p == 0:
            return surd if q > 0 else f"-{surd}"
        return f"{_fmt_rational(p)}{'+' if q > 0 else '-'}{surd}"

    @classmethod
    def parse(cls, text: str) -> QuadExt:
        """Inverse of ``str``: accepts forms like ``7/2-3/2*sqrt5``, ``sqrt5``, ``-4``."""
        s = text.replace(" ", "")
        terms = _TERM_RE.findall(s)
        if not s or "".join(terms) != s:
            raise ValueError(f"not an element of Q(sqrt5): {text!r}")
        p = q = Fraction(0)
        for term in terms:
            m = _SURD_RE.fullmatch(term)
            try:
                if m is None:
                    p += Fraction(term)
                else:
                    coef = m.group(1)
                    q += Fraction(coef + "1" if coef in ("", "+", "-") else coef)
            except ValueError:
                raise ValueError(f"not an element of Q(sqrt5): {text!r}") from None
        return cls(p, q)

    def to_json(self) -> list[list[str]]:
        """``[[p_num, p_den], [q_num, q_den]]`` as decimal strings."""
        return [
            [str(self._p.numerator), str(self._p.denominator)],
            [str(self._q.numerator), str(self._q.denominator)],
        ]

    @classmethod
    def from_json(cls, data) -> QuadExt:
        (pn, pd), (qn, qd) = data
        return cls(Fraction(int(pn), int(pd)), Fraction(int(qn), int(qd)))


SQRT5 = QuadExt(0, 1)
#: golden ratio (1 + sqrt5)/2
PHI = QuadExt(Fraction(1, 2), Fraction(1, 2))
#: its reciprocal (sqrt5 - 1)/2, the affine-regular value of a and b
PHI_CONJ = QuadExt(Fraction(-1, 2), Fraction(1, 2))


def q5_arith(a, b, op: str) -> QuadExt:
    a, b = QuadExt.coerce(a), QuadExt.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def q5_inv(a) -> QuadExt:
    return QuadExt.coerce(a).inverse()


def q5_sign(a) -> int:
    return QuadExt.coerce(a).sign()


def q5_to_float(a) -> float:
    """Correctly rounded binary64 value of ``p + q*sqrt5``.

    Works in integer arithmetic. When ``p`` and ``q`` have opposite signs the
    value is rewritten as ``norm / (p - q*sqrt5)`` so that no cancellation
    happens in the approximated part.
    """
    a = QuadExt.coerce(a)
    p, q = a.p, a.q
    if q == 0:
        return float(p)
    if p != 0 and (p > 0) != (q > 0):
        return float(a.norm() / _approx_same_sign(p, -q))
    return float(_approx_same_sign(p, q))


def _approx_same_sign(p: Fraction, q: Fraction) -> Fraction:
    """Rational approximation of ``p + q*sqrt5`` when ``p*q >= 0``.

    Relative error is below 2**-256, far under half an ulp, so the final
    ``float()`` rounding is correct barring ties closer than that.
    """
    den = p.denominator * q.denominator
    P = abs(p.numerator * q.denominator)
    Q = abs(q.numerator * p.denominator)
    sgn = -1 if (p < 0 or q < 0) else 1
    shift = 256 + max(P.bit_length(), Q.bit_length())
    s = math.isqrt((5 * Q * Q) << (2 * shift))
    return sgn * Fraction((P << shift) + s, den << shift)
