"""Exact scalars: rationals and multivariate polynomials over the rationals.

Rationals are plain :class:`fractions.Fraction`.  Polynomials are
:class:`Poly`; every arithmetic result that turns out to be constant is
collapsed back to a ``Fraction`` so the two kinds mix freely.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[Fraction, "Poly"]

ZERO = Fraction(0)
ONE = Fraction(1)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: Dict[str, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_key(m: Monomial):
    # total degree first, then lexicographic on (name, exponent) pairs
    return (sum(e for _, e in m), m)


class Poly:
    """Polynomial with Fraction coefficients; canonical, hashable, immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction]):
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    @staticmethod
    def var(name: str) -> "Poly":
        if not name or not re.fullmatch(r"[A-Za-z_][\w\[\],*.]*", name):
            raise ValueError(f"bad indeterminate name {name!r}")
        return Poly({((name, 1),): ONE})

    @staticmethod
    def _wrap(terms: Dict[Monomial, Fraction]) -> Scalar:
        terms = {m: c for m, c in terms.items() if c}
        if not terms:
            return ZERO
        if len(terms) == 1 and () in terms:
            return terms[()]
        return Poly(terms)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max(sum(e for _, e in m) for m in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return (not other and not self.terms) or self.terms == {(): Fraction(other)}
        return NotImplemented

    def __neg__(self) -> Scalar:
        return Poly({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> Scalar:
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            t = dict(self.terms)
            t[()] = t.get((), ZERO) + other
            return Poly._wrap(t)
        if isinstance(other, Poly):
            t = dict(self.terms)
            for m, c in other.terms.items():
                t[m] = t.get(m, ZERO) + c
            return Poly._wrap(t)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> Scalar:
        return self + (-other)

    def __rsub__(self, other) -> Scalar:
        return (-self) + other

    def __mul__(self, other) -> Scalar:
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Poly({m: c * other for m, c in self.terms.items()})
        if isinstance(other, Poly):
            t: Dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = _mono_mul(m1, m2)
                    t[m] = t.get(m, ZERO) + c1 * c2
            return Poly._wrap(t)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> Scalar:
        if isinstance(other, (int, Fraction)):
            return self * (ONE / Fraction(other))
        raise TypeError("polynomials can only be divided by rationals")

    def __pow__(self, k: int) -> Scalar:
        out: Scalar = ONE
        for _ in range(k):
            out = out * self
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1]

    def substitute(self, values: Mapping[str, Scalar]) -> Scalar:
        out: Scalar = ZERO
        for m, c in self.terms.items():
            term: Scalar = c
            for v, e in m:
                base = values[v] if v in values else Poly.var(v)
                for _ in range(e):
                    term = term * base
            out = out + term
        return out

    def coefficient_of(self, name: str, power: int = 1) -> Scalar:
        """Coefficient of ``name**power`` viewed as a polynomial in ``name``."""
        t: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) == power:
                d.pop(name, None)
                key = tuple(sorted(d.items()))
                t[key] = t.get(key, ZERO) + c
        return Poly._wrap(t)

    def __str__(self) -> str:
        return poly_str(self)

    def __repr__(self) -> str:
        return f"Poly({poly_str(self)!r})"


def _mono_str(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def poly_str(p: Scalar) -> str:
    """Canonical text form, e.g. ``2*s[1] + 2*nu_xy[1,1,1] - 1``."""
    if not isinstance(p, Poly):
        return scalar_str(p)
    parts = []
    for m, c in p.sorted_terms():
        mag = abs(c)
        if not m:
            body = scalar_str(mag)
        elif mag == 1:
            body = _mono_str(m)
        else:
            body = f"{scalar_str(mag)}*{_mono_str(m)}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def scalar_str(c: Scalar) -> str:
    if isinstance(c, Poly):
        return poly_str(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def as_scalar(v) -> Scalar:
    if isinstance(v, Poly):
        return Poly._wrap(v.terms)
    if isinstance(v, str):
        return parse_rational(v)
    return Fraction(v)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def is_zero(c: Scalar) -> bool:
    return not c


def normalize_monic(p: Scalar) -> Scalar:
    """Scale so that the leading term has coefficient 1 (canonical up to units)."""
    if isinstance(p, Poly):
        return p * (ONE / p.leading_coefficient())
    return ONE if p else ZERO


def collect_variables(values: Iterable[Scalar]) -> set:
    out: set = set()
    for v in values:
        if isinstance(v, Poly):
            out |= v.variables()
    return out
