"""Sparse multivariate polynomials with exact Q(sqrt5) coefficients.

A :class:`SparsePoly` is a map from exponent tuples to nonzero
:class:`~diagratio.qfield.QuadExt` coefficients, together with the names
of its generators. The default generators are ``("c", "d", "x", "y")``;
their order is also the priority used by the graded-lexicographic display
order.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from typing import Union

import numpy as np

from .qfield import QuadExt, to_rational

__all__ = [
    "GENS",
    "Monomial",
    "SparsePoly",
    "PolynomialDivisionError",
    "poly_arith",
    "poly_substitute",
    "poly_eval",
]

GENS: tuple[str, ...] = ("c", "d", "x", "y")

Monomial = tuple[int, ...]
Coeff = Union[int, Fraction, QuadExt]


class PolynomialDivisionError(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


def _coeff(value) -> QuadExt:
    if isinstance(value, QuadExt):
        return value
    return QuadExt(to_rational(value))


def _grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), mono)


class SparsePoly:
    """Immutable sparse polynomial over Q(sqrt5)."""

    __slots__ = ("_terms", "_gens")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None, gens: Sequence[str] = GENS):
        self._gens = tuple(gens)
        n = len(self._gens)
        clean: dict[Monomial, QuadExt] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n or min(mono, default=0) < 0:
                raise ValueError(f"bad exponent tuple {mono} for generators {self._gens}")
            c = _coeff(coef)
            if c:
                clean[mono] = clean.get(mono, QuadExt(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, value: Coeff, gens: Sequence[str] = GENS) -> SparsePoly:
        return cls({(0,) * len(gens): value}, gens)

    @classmethod
    def var(cls, name: str, gens: Sequence[str] = GENS) -> SparsePoly:
        gens = tuple(gens)
        mono = tuple(1 if g == name else 0 for g in gens)
        if sum(mono) != 1:
            raise ValueError(f"{name!r} is not one of {gens}")
        return cls({mono: 1}, gens)

    @classmethod
    def gens_of(cls, gens: Sequence[str] = GENS) -> tuple[SparsePoly, ...]:
        return tuple(cls.var(g, gens) for g in gens)

    @classmethod
    def _raw(cls, terms: dict[Monomial, QuadExt], gens: tuple[str, ...]) -> SparsePoly:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._gens = gens
        return obj

    # -- accessors ----------------------------------------------------------

    @property
    def gens(self) -> tuple[str, ...]:
        return self._gens

    @property
    def terms(self) -> dict[Monomial, QuadExt]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, mono: Monomial) -> QuadExt:
        return self._terms.get(tuple(mono), QuadExt(0))

    def sorted_terms(self) -> list[tuple[Monomial, QuadExt]]:
        """Terms in descending graded-lex order (first generator largest)."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, QuadExt]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self._terms, key=_grlex_key)
        return mono, self._terms[mono]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def degrees(self) -> set[int]:
        return {sum(m) for m in self._terms}

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other) -> SparsePoly | None:
        if isinstance(other, SparsePoly):
            if other._gens != self._gens:
                raise ValueError(f"generator mismatch: {self._gens} vs {other._gens}")
            return other
        try:
            return SparsePoly.const(_coeff(other), self._gens)
        except TypeError:
            return None

    def __add__(self, other) -> SparsePoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in o._terms.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return SparsePoly._raw(out, self._gens)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly._raw({m: -c for m, c in self._terms.items()}, self._gens)

    def __sub__(self, other) -> SparsePoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> SparsePoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> SparsePoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, QuadExt] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                s = out.get(mono)
                out[mono] = c1 * c2 if s is None else s + c1 * c2
        return SparsePoly._raw({m: c for m, c in out.items() if c}, self._gens)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = SparsePoly.const(1, self._gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self._gens == other._gens and self._terms == other._terms
        try:
            return self._terms == SparsePoly.const(_coeff(other), self._gens)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self._gens, frozenset(self._terms.items())))

    def divide_exact(self, divisor: SparsePoly) -> SparsePoly:
        """Quotient of an exact division; raises if a remainder would be left."""
        d = self._lift(divisor)
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        d_mono, d_coef = d.leading_term()
        quotient = SparsePoly({}, self._gens)
        rem = self
        while rem:
            r_mono, r_coef = rem.leading_term()
            q_mono = tuple(a - b for a, b in zip(r_mono, d_mono))
            if min(q_mono) < 0:
                raise PolynomialDivisionError(f"{divisor} does not divide {self}")
            t = SparsePoly._raw({q_mono: r_coef / d_coef}, self._gens)
            quotient = quotient + t
            rem = rem - t * d
        return quotient

    # -- change of variables ------------------------------------------------

    def compose(self, images: Mapping[str, SparsePoly], gens: Sequence[str] | None = None) -> SparsePoly:
        """Replace every generator ``g`` by ``images[g]`` (generators absent from
        ``images`` map to the same-named generator of the target ring)."""
        gens = tuple(gens) if gens is not None else self._gens
        imgs = []
        for g in self._gens:
            img = images.get(g)
            if img is None:
                img = SparsePoly.var(g, gens)
            elif not isinstance(img, SparsePoly):
                img = SparsePoly.const(img, gens)
            if img._gens != gens:
                raise ValueError(f"image of {g!r} lives in {img._gens}, expected {gens}")
            imgs.append(img)
        cache: list[dict[int, SparsePoly]] = [{0: SparsePoly.const(1, gens), 1: img} for img in imgs]

        def power(i: int, e: int) -> SparsePoly:
            if e not in cache[i]:
                cache[i][e] = power(i, e - 1) * imgs[i]
            return cache[i][e]

        out = SparsePoly({}, gens)
        for mono, coef in self._terms.items():
            term = SparsePoly.const(coef, gens)
            for i, e in enumerate(mono):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def substitute(self, var: str, replacement) -> SparsePoly:
        if var not in self._gens:
            raise ValueError(f"{var!r} is not one of {self._gens}")
        return self.compose({var: replacement})

    def permute(self, new_order: Sequence[str]) -> SparsePoly:
        """Rename generators simultaneously: generator ``gens[i]`` becomes
        ``new_order[i]``. ``f.permute(("d","c","y","x"))`` is f(d,c,y,x)."""
        idx = [self._gens.index(g) for g in new_order]
        out = {}
        for mono, coef in self._terms.items():
            new = [0] * len(mono)
            for i, e in enumerate(mono):
                new[idx[i]] = e
            out[tuple(new)] = coef
        return SparsePoly._raw(out, self._gens)

    def with_gens(self, gens: Sequence[str]) -> SparsePoly:
        """Re-express in another generator tuple; dropped generators must not occur."""
        gens = tuple(gens)
        out = {}
        for mono, coef in self._terms.items():
            new = [0] * len(gens)
            for g, e in zip(self._gens, mono):
                if e == 0:
                    continue
                if g not in gens:
                    raise ValueError(f"generator {g!r} occurs but is not in {gens}")
                new[gens.index(g)] = e
            out[tuple(new)] = coef
        return SparsePoly._raw(out, gens)

    # -- evaluation ---------------------------------------------------------

    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point: Sequence) -> QuadExt:
        """Exact value at a point of int/Fraction/QuadExt coordinates."""
        if len(point) != len(self._gens):
            raise ValueError(f"expected {len(self._gens)} coordinates")
        pt = [_coeff(v) for v in point]
        total = QuadExt(0)
        for mono, coef in self._terms.items():
            term = coef
            for v, e in zip(pt, mono):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def numeric(self) -> tuple[np.ndarray, np.ndarray]:
        """(exponents[nterms, ngens], float coefficients[nterms])."""
        items = self.sorted_terms()
        expo = np.array([m for m, _ in items], dtype=np.int64).reshape(len(items), len(self._gens))
        coef = np.array([float(c) for _, c in items], dtype=np.float64)
        return expo, coef

    def term_values(self, points: np.ndarray) -> np.ndarray:
        """Float value of every term at every point: shape (npoints, nterms)."""
        expo, coef = self.numeric()
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        mons = np.prod(pts[:, None, :] ** expo[None, :, :], axis=2)
        return mons * coef[None, :]

    def eval_float(self, points: np.ndarray) -> np.ndarray:
        return self.term_values(points).sum(axis=1)

    # -- formatting ---------------------------------------------------------

    def _mono_str(self, mono: Monomial) -> str:
        parts = []
        for g, e in zip(self._gens, mono):
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append(f"{g}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for mono, coef in self.sorted_terms():
            ms = self._mono_str(mono)
            cs = str(coef)
            if not ms:
                body = cs
            elif coef == 1:
                body = ms
            elif coef == -1:
                body = "-" + ms
            elif coef.is_rational():
                body = f"{cs}*{ms}"
            else:
                body = f"({cs})*{ms}"
            if out and not body.startswith("-"):
                body = "+" + body
            out.append(body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"SparsePoly({str(self)!r}, gens={self._gens})"

    def to_json(self) -> dict:
        return {
            "gens": list(self._gens),
            "terms": [{"exponents": list(m), "coeff": c.to_json()} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> SparsePoly:
        gens = tuple(data["gens"])
        terms: dict[Monomial, QuadExt] = {}
        for t in data["terms"]:
            mono = tuple(t["exponents"])
            if mono in terms:
                raise ValueError(f"duplicate monomial {mono}")
            terms[mono] = QuadExt.from_json(t["coeff"])
        return cls(terms, gens)


def poly_arith(p: SparsePoly, q: SparsePoly, op: str) -> SparsePoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_substitute(p: SparsePoly, var: str, replacement) -> SparsePoly:
    return p.substitute(var, replacement)


def poly_eval(p: SparsePoly, point: Iterable) -> QuadExt:
    return p.eval(tuple(point))
