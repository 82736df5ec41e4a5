"""Graded Goldman-Turaev operations on U(L(H)) and U(L(H) ⊕ K t_**).

H is spanned by x[*,a], y[*,a] (weight 1) and t[j,*] (weight 2); the extra
central letter t[*,*] only appears in the source of quasi-derivations.  Fox
pairings lower the weight by two, so every result is exact up to weight D - 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional

from .alphabet import Alphabet, Word
from .catalog import strands, uf_alphabet
from .cyclic import CyclicPair
from .errors import InvariantError
from .scalars import ONE, Scalar
from .series import s_series, series_substitute
from .tensor import PairTensor, TensorElement, _add_into

HALF = Fraction(1, 2)
Pairing = Callable[[TensorElement, TensorElement], TensorElement]


class GtContext:
    """Alphabet and distinguished elements for genus g with n punctures."""

    def __init__(self, g: int, n: int, D: int, star: str = "*"):
        self.g, self.n, self.D = g, n, D
        self.alphabet: Alphabet = uf_alphabet(g, strands(n), star)
        self.star = star
        self.center = self.alphabet.index(f"t[{star},{star}]")
        a = self.alphabet
        self.x = [a.index(f"x[{star},{i}]") for i in range(1, g + 1)]
        self.y = [a.index(f"y[{star},{i}]") for i in range(1, g + 1)]
        self.t = [a.index(f"t[{j},{star}]") for j in strands(n)]
        om = self.zero()
        for xi, yi in zip(self.x, self.y):
            X, Y = self.letter(xi), self.letter(yi)
            om = om + X * Y - Y * X
        for ti in self.t:
            om = om + self.letter(ti)
        self.omega = om
        self.s_omega = series_substitute(s_series(D), om)
        table: Dict[tuple, TensorElement] = {}
        for xi, yi in zip(self.x, self.y):
            table[(xi, yi)] = self.one()
            table[(yi, xi)] = -self.one()
        for ti in self.t:
            table[(ti, ti)] = -self.letter(ti)
        self._diamond_table = table

    # constructors
    def zero(self) -> TensorElement:
        return TensorElement.zero(self.alphabet, self.D)

    def one(self, c: Scalar = ONE) -> TensorElement:
        return TensorElement.one(self.alphabet, self.D, c)

    def letter(self, i, c: Scalar = ONE) -> TensorElement:
        return TensorElement.letter(self.alphabet, self.D, i, c)

    def word(self, w: Word, c: Scalar = ONE) -> TensorElement:
        return TensorElement.word(self.alphabet, self.D, w, c)

    def project(self, a: TensorElement) -> TensorElement:
        """U(L(H) ⊕ K t_**) -> U(L(H)): kill every word containing t_**."""
        c = self.center
        return TensorElement(a.alphabet, a.D, {w: v for w, v in a.terms.items() if c not in w})

    # --- Fox pairings ------------------------------------------------------
    def diamond_letters(self, i: int, j: int) -> TensorElement:
        return self._diamond_table.get((i, j), self.zero())

    def diamond(self, a: TensorElement, b: TensorElement) -> TensorElement:
        """The Fox pairing determined by its letter table:
        η(a_1..a_k, b_1..b_m) = a_1..a_{k-1} η(a_k, b_1) b_2..b_m."""
        return fox_extend(self.diamond_letters, a, b)

    def rho(self, e: TensorElement, a: TensorElement, b: TensorElement) -> TensorElement:
        """ρ_e(a, b) = (a - ε(a)) e (b - ε(b))."""
        return a.without_constant() * e * b.without_constant()

    def E(self, a: TensorElement, b: TensorElement) -> TensorElement:
        return self.diamond(a, b) + self.rho(self.s_omega, a, b)

    # --- quasi-derivations -----------------------------------------------------
    def xi_qd(self, a: TensorElement) -> TensorElement:
        out: Dict[Word, Scalar] = {}
        c = self.center
        for w, coef in a.terms.items():
            s = w.count(c)
            z = tuple(l for l in w if l != c)
            if s == 1:
                _add_into(out, z, -2 * coef)
            elif s == 0 and len(z) >= 2:
                for i in range(len(z) - 1):
                    mid = self._diamond_table.get((z[i], z[i + 1]))
                    if mid is None:
                        continue
                    for m, mc in mid.terms.items():
                        _add_into(out, z[:i] + m + z[i + 2:], coef * mc)
        return TensorElement(self.alphabet, self.D, out)

    def q(self, e1: TensorElement, e2: TensorElement, a: TensorElement) -> TensorElement:
        """q_{e1,e2}(a) = (ε(x) - x) e1 + e2 (ε(x) - x), x the projection of a."""
        x = self.project(a)
        d = -x.without_constant()
        return d * e1 + e2 * d

    def phi0(self) -> "PhiConstant":
        return PhiConstant(self, (self.one(HALF) + self.s_omega).scale(HALF))

    def N(self, a: TensorElement, phi: Optional["PhiConstant"] = None) -> TensorElement:
        phi = phi or self.phi0()
        e2 = -phi.value.antipode() - self.one(HALF)
        return self.xi_qd(a) + self.q(phi.value, e2, a)

    # --- group-like constructions -------------------------------------------------
    def kappa(self, pairing: Pairing, alpha: TensorElement, beta: TensorElement) -> PairTensor:
        """κ(α, β) = β S(η′) α ⊗ η″ with η = η(α, β), for group-like α, β."""
        for name, v in (("first", alpha), ("second", beta)):
            if not v.is_grouplike():
                raise InvariantError(f"{name} argument of kappa is not group-like")
        eta = pairing(alpha, beta)
        return _left_sandwich(eta.coproduct(), beta, alpha, antipode_left=True).truncate(self.D - 2)

    def goldman(self, pairing: Pairing, alpha: TensorElement, beta: TensorElement):
        """|mult κ(α, β)| in the trace space."""
        from .cyclic import trace_project
        return trace_project(self.kappa(pairing, alpha, beta).multiply_out())

    def cobracket(self, alpha_vec: TensorElement, phi: Optional["PhiConstant"] = None) -> PairTensor:
        """δ_N(α⃗) = α S(N(α⃗)′) ⊗ N(α⃗)″ for group-like α⃗, α its projection."""
        if not alpha_vec.is_grouplike():
            raise InvariantError("cobracket needs a group-like argument")
        alpha = self.project(alpha_vec)
        mu = self.N(alpha_vec, phi)
        return _left_sandwich(mu.coproduct(), alpha, self.one(), antipode_left=True).truncate(self.D - 2)

    def delta_q_incl(self, e: TensorElement, X: TensorElement) -> CyclicPair:
        """|X S(e′)⊗e″ + X e″⊗S(e′) - S(e′)⊗e″ X - e″⊗S(e′) X|."""
        cop = e.coproduct()
        s_first = PairTensor(cop.alphabet, cop.D, {(_anti(l)[0], r): c * _anti(l)[1]
                                                   for (l, r), c in cop.terms.items()})
        s_second = s_first.swap()
        sym = s_first + s_second
        one = self.one()
        left = PairTensor.outer(X, one).mul(sym)
        right = sym.mul(PairTensor.outer(one, X))
        return CyclicPair.project(left - right)

    def one_wedge(self, X: TensorElement) -> CyclicPair:
        one = self.one()
        return CyclicPair.project(PairTensor.outer(one, X) - PairTensor.outer(X, one))

    def antipode_pair_identity(self, e: Optional[TensorElement] = None) -> PairTensor:
        """S(e′)⊗e″ + e″⊗S(e′) (equal to -1⊗1 for e = s(ω))."""
        e = self.s_omega if e is None else e
        cop = e.coproduct()
        s_first = PairTensor(cop.alphabet, cop.D, {(_anti(l)[0], r): c * _anti(l)[1]
                                                   for (l, r), c in cop.terms.items()})
        return s_first + s_first.swap()


@dataclass
class PhiConstant:
    """A constant φ with φ - S(φ) = 1/2 + s(ω)."""

    ctx: GtContext
    value: TensorElement

    def __post_init__(self):
        lhs = self.value - self.value.antipode()
        rhs = self.ctx.one(HALF) + self.ctx.s_omega
        if lhs != rhs:
            raise InvariantError("φ - S(φ) differs from 1/2 + s(ω)")

    @property
    def bar(self) -> TensorElement:
        return self.value + self.ctx.one(HALF)


def _anti(word: Word):
    return word[::-1], (-1 if len(word) % 2 else 1)


def fox_extend(letters: Callable[[int, int], TensorElement], a: TensorElement, b: TensorElement) -> TensorElement:
    """Bilinear Fox pairing from its values on letters."""
    out: Dict[Word, Scalar] = {}
    D = a.D
    ws = a.alphabet.weights
    for u, cu in a.terms.items():
        if not u:
            continue
        for v, cv in b.terms.items():
            if not v:
                continue
            mid = letters(u[-1], v[0])
            if not mid:
                continue
            head, tail = u[:-1], v[1:]
            base = sum(ws[i] for i in head) + sum(ws[i] for i in tail)
            for m, cm in mid.terms.items():
                if base + sum(ws[i] for i in m) <= D:
                    _add_into(out, head + m + tail, cu * cv * cm)
    return TensorElement(a.alphabet, D, out)


def _left_sandwich(p: PairTensor, before: TensorElement, after: TensorElement,
                   antipode_left: bool) -> PairTensor:
    """Σ before · S(l) · after ⊗ r over the terms l ⊗ r of p."""
    alph, D = p.alphabet, p.D
    out: Dict = {}
    for (l, r), c in p.terms.items():
        if antipode_left:
            l, sign = _anti(l)
            c = c * sign
        mid = TensorElement(alph, D, {l: ONE})
        val = before * mid * after
        for w, cw in val.terms.items():
            _add_into(out, (w, r), c * cw)
    return PairTensor(alph, D, out)

