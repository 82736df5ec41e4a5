"""Tangential derivations and automorphisms of the free Lie algebra on
x[i], y[i] (weight 1) and z[j] (weight 2), their divergence cocycles, and the
KV / KRV / SolKV membership checks at finite truncation.

Lie elements are carried as primitive elements of the tensor algebra.  A
tangential automorphism is stored by its logarithm ũ = (u; u_1, ..., u_n),
with u(z_j) = [z_j, u_j].  The divergence cocycles lower the weight by up to
two, so their values are reported up to weight D - 2.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .alphabet import Alphabet, Word
from .cyclic import CyclicElement, trace_project
from .errors import InvariantError, UnknownSymbolError
from .lie import lie_series_bch
from .presented import subspace_membership
from .scalars import ONE, Scalar, parse_rational, scalar_str
from .series import r_series, series_substitute
from .tensor import TensorElement, _add_into

Cocycle = Callable[["TangentialDerivation"], CyclicElement]


class KvContext:
    def __init__(self, g: int, n: int, D: int):
        if g < 0 or n < 0:
            raise ValueError("genus and puncture count must be non-negative")
        self.g, self.n, self.D = g, n, D
        names = ([f"x[{i}]" for i in range(1, g + 1)] + [f"y[{i}]" for i in range(1, g + 1)]
                 + [f"z[{j}]" for j in range(1, n + 1)])
        self.alphabet = Alphabet.from_names(names)
        a = self.alphabet
        self.x = [a.index(f"x[{i}]") for i in range(1, g + 1)]
        self.y = [a.index(f"y[{i}]") for i in range(1, g + 1)]
        self.z = [a.index(f"z[{j}]") for j in range(1, n + 1)]
        self._xi: Optional[TensorElement] = None
        self._rbold: Optional[CyclicElement] = None

    def zero(self) -> TensorElement:
        return TensorElement.zero(self.alphabet, self.D)

    def one(self) -> TensorElement:
        return TensorElement.one(self.alphabet, self.D)

    def letter(self, i: int, c: Scalar = ONE) -> TensorElement:
        return TensorElement.letter(self.alphabet, self.D, i, c)

    def cyclic_zero(self) -> CyclicElement:
        return CyclicElement.zero(self.alphabet, self.D)

    @property
    def omega(self) -> TensorElement:
        om = self.zero()
        for xi, yi in zip(self.x, self.y):
            om = om + self.letter(xi).bracket(self.letter(yi))
        for zj in self.z:
            om = om + self.letter(zj)
        return om

    @property
    def xi(self) -> TensorElement:
        """log(Π_i e^{x_i} e^{y_i} e^{-x_i} e^{-y_i} Π_j e^{z_j})."""
        if self._xi is None:
            prod = self.one()
            for xi, yi in zip(self.x, self.y):
                X, Y = self.letter(xi), self.letter(yi)
                prod = prod * X.exp() * Y.exp() * (-X).exp() * (-Y).exp()
            for zj in self.z:
                prod = prod * self.letter(zj).exp()
            self._xi = prod.log()
        return self._xi

    @property
    def rbold(self) -> CyclicElement:
        """Σ_i |r(x_i) + r(y_i)|."""
        if self._rbold is None:
            r = r_series(self.D)
            total = self.zero()
            for i in self.x + self.y:
                total = total + series_substitute(r, self.letter(i))
            self._rbold = trace_project(total)
        return self._rbold

    def membership_seeds(self, base: TensorElement) -> List[CyclicElement]:
        """|z_j^k| for 2k <= D and |base^m| for m >= 2, 2m <= D, all truncated."""
        seeds = []
        for zj in self.z:
            p = self.one()
            for _ in range(1, self.D // 2 + 1):
                p = p * self.letter(zj)
                seeds.append(trace_project(p))
        p = base
        for m in range(2, self.D // 2 + 1):
            p = p * base
            seeds.append(trace_project(p))
        return seeds

    def member(self, c: CyclicElement, base: TensorElement) -> Tuple[bool, Optional[dict], dict]:
        """Membership up to the truncation degree of c."""
        seeds = [s.truncate(c.D).terms for s in self.membership_seeds(base)]
        return subspace_membership(seeds, c.terms)

    def theta_exp(self, word: Sequence[Tuple[str, int]]) -> TensorElement:
        """α_i -> e^{x_i}, β_i -> e^{y_i}, γ_j -> e^{z_j}, multiplicatively."""
        out = self.one()
        for name, power in word:
            out = out * self.letter(self._loop_letter(name)).scale(power).exp()
        return out

    def _loop_letter(self, name: str) -> int:
        m = re.fullmatch(r"(alpha|beta|gamma)(\d+)", name)
        if not m:
            raise UnknownSymbolError(f"unknown loop {name!r}")
        kind, k = m.group(1), int(m.group(2))
        pool = {"alpha": self.x, "beta": self.y, "gamma": self.z}[kind]
        if not 1 <= k <= len(pool):
            raise UnknownSymbolError(f"loop {name!r} out of range")
        return pool[k - 1]

    def boundary_word(self) -> List[Tuple[str, int]]:
        """Π_i α_i β_i α_i⁻¹ β_i⁻¹ Π_j γ_j."""
        word = []
        for i in range(1, self.g + 1):
            word += [(f"alpha{i}", 1), (f"beta{i}", 1), (f"alpha{i}", -1), (f"beta{i}", -1)]
        word += [(f"gamma{j}", 1) for j in range(1, self.n + 1)]
        return word


def parse_loop_word(text: str) -> List[Tuple[str, int]]:
    """'alpha1 beta1 alpha1^-1 gamma2' -> [(name, ±1), ...]."""
    out = []
    for tok in text.split():
        m = re.fullmatch(r"(alpha\d+|beta\d+|gamma\d+)(\^(-?1))?", tok)
        if not m:
            raise UnknownSymbolError(f"malformed loop word token {tok!r}")
        out.append((m.group(1), int(m.group(3) or 1)))
    return out


def apply_derivation(images: Callable[[int], TensorElement], a: TensorElement) -> TensorElement:
    """The derivation of T(H) extending letter -> images(letter)."""
    out: Dict[Word, Scalar] = {}
    ws = a.alphabet.weights
    D = a.D
    cache: Dict[int, TensorElement] = {}
    for w, c in a.terms.items():
        total = sum(ws[i] for i in w)
        for k, letter in enumerate(w):
            img = cache.get(letter)
            if img is None:
                img = cache[letter] = images(letter)
            rest = total - ws[letter]
            for m, cm in img.terms.items():
                if rest + sum(ws[i] for i in m) <= D:
                    _add_into(out, w[:k] + m + w[k + 1:], c * cm)
    return TensorElement(a.alphabet, D, out)


def right_derivative(a: TensorElement, letter: int) -> TensorElement:
    """d_w with a = ε(a) + Σ_w d_w(a) w."""
    return TensorElement(a.alphabet, a.D, {w[:-1]: c for w, c in a.terms.items() if w and w[-1] == letter})


class TangentialDerivation:
    """ũ = (u; u_1..u_n): u given on x_i, y_i; u(z_j) = [z_j, u_j]."""

    def __init__(self, ctx: KvContext, images: Dict[int, TensorElement], conj: Sequence[TensorElement],
                 check: bool = True):
        self.ctx = ctx
        self.images = {i: v for i, v in images.items() if v}
        self.conj = list(conj)
        if len(self.conj) != ctx.n:
            raise ValueError(f"expected {ctx.n} conjugators, got {len(self.conj)}")
        if check:
            self._validate()

    def _validate(self) -> None:
        ctx, ws = self.ctx, self.ctx.alphabet.weights
        for i, v in self.images.items():
            if i in ctx.z:
                raise InvariantError("z_j images are fixed by the conjugators")
            if v.min_weight() is not None and v.min_weight() <= ws[i]:
                raise InvariantError("u must raise the weight of every generator")
            if not v.is_primitive():
                raise InvariantError("derivation images must be Lie elements")
        for v in self.conj:
            if v.epsilon():
                raise InvariantError("conjugators must have no constant term")
            if v and not v.is_primitive():
                raise InvariantError("conjugators must be Lie elements")

    @classmethod
    def zero(cls, ctx: KvContext) -> "TangentialDerivation":
        return cls(ctx, {}, [ctx.zero()] * ctx.n, check=False)

    @classmethod
    def inner(cls, ctx: KvContext, a: TensorElement, lam: Scalar = ONE) -> "TangentialDerivation":
        """u(v) = [v, λa], u_j = λa (the logarithm of Ad_{e^{λa}})."""
        la = a.scale(lam)
        images = {i: ctx.letter(i).bracket(la) for i in ctx.x + ctx.y}
        return cls(ctx, images, [la] * ctx.n, check=False)

    def image(self, letter: int) -> TensorElement:
        ctx = self.ctx
        if letter in ctx.z:
            return ctx.letter(letter).bracket(self.conj[ctx.z.index(letter)])
        return self.images.get(letter, ctx.zero())

    def __call__(self, a: TensorElement) -> TensorElement:
        return apply_derivation(self.image, a)

    def act(self, c: CyclicElement) -> CyclicElement:
        return c.act(self)

    def __add__(self, other: "TangentialDerivation") -> "TangentialDerivation":
        keys = set(self.images) | set(other.images)
        z = self.ctx.zero()
        return TangentialDerivation(self.ctx, {k: self.images.get(k, z) + other.images.get(k, z) for k in keys},
                                    [a + b for a, b in zip(self.conj, other.conj)], check=False)

    def scale(self, c: Scalar) -> "TangentialDerivation":
        return TangentialDerivation(self.ctx, {k: v.scale(c) for k, v in self.images.items()},
                                    [v.scale(c) for v in self.conj], check=False)

    def __neg__(self) -> "TangentialDerivation":
        return self.scale(-1)

    def __sub__(self, other: "TangentialDerivation") -> "TangentialDerivation":
        return self + (-other)

    def bracket(self, other: "TangentialDerivation") -> "TangentialDerivation":
        """[u, v](w) = u(v(w)) - v(u(w)); [u, v]_j = u(v_j) - v(u_j) + [u_j, v_j]."""
        keys = set(self.images) | set(other.images)
        images = {k: self(other.image(k)) - other(self.image(k)) for k in keys}
        conj = [self(b) - other(a) + a.bracket(b) for a, b in zip(self.conj, other.conj)]
        return TangentialDerivation(self.ctx, images, conj, check=False)

    def is_zero(self) -> bool:
        return not self.images and not any(self.conj)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TangentialDerivation) and self.images == other.images
                and self.conj == other.conj)

    def to_json(self) -> dict:
        a = self.ctx.alphabet
        return {"u": {a.symbols[k].name: v.to_json() for k, v in sorted(self.images.items())},
                "conjugators": [v.to_json() for v in self.conj]}


class TangentialAutomorphism:
    """G = exp(u), stored by ũ."""

    def __init__(self, log: TangentialDerivation):
        self.log = log
        self.ctx = log.ctx

    @classmethod
    def identity(cls, ctx: KvContext) -> "TangentialAutomorphism":
        return cls(TangentialDerivation.zero(ctx))

    @classmethod
    def inner(cls, ctx: KvContext, a: TensorElement, lam: Scalar = ONE) -> "TangentialAutomorphism":
        """Ad_{e^{λa}}: v -> e^{-λa} v e^{λa}, conjugators g_j = e^{λa}."""
        return cls(TangentialDerivation.inner(ctx, a, lam))

    def __call__(self, a: TensorElement) -> TensorElement:
        out, term, k = a, a, 0
        while True:
            k += 1
            term = self.log(term).scale(Fraction(1, k))
            if not term:
                return out
            out = out + term

    def act(self, c: CyclicElement) -> CyclicElement:
        out, term, k = c, c, 0
        while True:
            k += 1
            term = self.log.act(term).scale(Fraction(1, k))
            if not term:
                return out
            out = out + term

    def inverse(self) -> "TangentialAutomorphism":
        return TangentialAutomorphism(-self.log)

    def compose(self, other: "TangentialAutomorphism") -> "TangentialAutomorphism":
        """self ∘ other = exp(bch(u, v))."""
        u = lie_series_bch(self.log, other.log, lambda p, q: p.bracket(q), lambda p, q: p + q,
                           lambda p, c: p.scale(c), self.ctx.D)
        return TangentialAutomorphism(u)

    def conjugators(self) -> List[TensorElement]:
        """g_j with G(z_j) = g_j⁻¹ z_j g_j: the solution at t = 1 of
        ġ = g · G_t(u_j), g(0) = 1, expanded as a power series in t."""
        u, D = self.log, self.ctx.D
        out = []
        for uj in u.conj:
            # G_t(u_j) = Σ_m t^m u^m(u_j)/m!
            terms = [uj]
            while terms[-1]:
                terms.append(u(terms[-1]).scale(Fraction(1, len(terms))))
            coeffs = [self.ctx.one()]
            for k in range(D):
                nxt = self.ctx.zero()
                for m in range(min(k + 1, len(terms))):
                    nxt = nxt + coeffs[k - m] * terms[m]
                coeffs.append(nxt.scale(Fraction(1, k + 1)))
            total = self.ctx.zero()
            for c in coeffs:
                total = total + c
            out.append(total)
        return out


@dataclass(frozen=True)
class FramingData:
    a: Tuple[Fraction, ...]
    b: Tuple[Fraction, ...]
    c: Tuple[Fraction, ...]

    @classmethod
    def zero(cls, g: int, n: int) -> "FramingData":
        return cls((Fraction(0),) * g, (Fraction(0),) * g, (Fraction(0),) * n)

    @classmethod
    def parse(cls, text: str, g: int, n: int) -> "FramingData":
        """'a=1,0;b=1/2,0;c=-1' with one value per handle / puncture."""
        vals = {"a": [], "b": [], "c": []}
        for part in filter(None, (p.strip() for p in text.split(";"))):
            key, _, rhs = part.partition("=")
            key = key.strip()
            if key not in vals:
                raise ValueError(f"unknown framing key {key!r}")
            vals[key] = [parse_rational(v) for v in rhs.split(",") if v.strip()]
        for key, size in (("a", g), ("b", g), ("c", n)):
            if not vals[key]:
                vals[key] = [Fraction(0)] * size
            if len(vals[key]) != size:
                raise ValueError(f"framing {key} needs {size} values")
        return cls(tuple(vals["a"]), tuple(vals["b"]), tuple(vals["c"]))

    def p(self, ctx: KvContext) -> CyclicElement:
        """Σ_i |a_i y_i - b_i x_i|."""
        total = ctx.zero()
        for ai, bi, xi, yi in zip(self.a, self.b, ctx.x, ctx.y):
            total = total + ctx.letter(yi, ai) - ctx.letter(xi, bi)
        return trace_project(total)

    def to_json(self) -> dict:
        return {k: [scalar_str(v) for v in getattr(self, k)] for k in "abc"}


# --- cocycles ---------------------------------------------------------------------

def exact_degree(ctx: KvContext) -> int:
    """d_z lowers the weight by two, so divergences of derivations known up to
    weight D are exact up to weight D - 2; every cocycle value is cut there."""
    return max(ctx.D - 2, 0)


def sdiv_xyz(u: TangentialDerivation) -> CyclicElement:
    """Σ_w |d_w u(w)| over w = x_i, y_i, z_j."""
    ctx = u.ctx
    total = ctx.zero()
    for w in ctx.x + ctx.y + ctx.z:
        total = total + right_derivative(u.image(w), w)
    return trace_project(total).truncate(exact_degree(ctx))


def b_fr(fr: FramingData, u: TangentialDerivation) -> CyclicElement:
    total = u.ctx.zero()
    for cj, uj in zip(fr.c, u.conj):
        total = total + uj.scale(cj)
    return trace_project(total).truncate(exact_degree(u.ctx))


def sdiv_fr_gr(fr: FramingData, u: TangentialDerivation) -> CyclicElement:
    return sdiv_xyz(u) - b_fr(fr, u)


def sdiv_fr(fr: FramingData, u: TangentialDerivation) -> CyclicElement:
    ctx = u.ctx
    return sdiv_fr_gr(fr, u) + u.act((ctx.rbold - fr.p(ctx)).truncate(exact_degree(ctx)))


def integrate_cocycle(psi: Cocycle, G: TangentialAutomorphism) -> CyclicElement:
    """Ψ(e^u) = Σ_k u^k ψ(u)/(k+1)!."""
    u = G.log
    term = psi(u)
    out, k = term, 1
    while True:
        term = u.act(term)
        if not term:
            return out
        k += 1
        out = out + term.scale(Fraction(1, math.factorial(k)))


def j_xyz(G: TangentialAutomorphism) -> CyclicElement:
    return integrate_cocycle(sdiv_xyz, G)


def c_fr(fr: FramingData, G: TangentialAutomorphism) -> CyclicElement:
    return integrate_cocycle(lambda u: b_fr(fr, u), G)


def j_fr(fr: FramingData, G: TangentialAutomorphism) -> CyclicElement:
    return integrate_cocycle(lambda u: sdiv_fr(fr, u), G)


def j_fr_gr(fr: FramingData, G: TangentialAutomorphism) -> CyclicElement:
    return integrate_cocycle(lambda u: sdiv_fr_gr(fr, u), G)


# --- checkers --------------------------------------------------------------------------

@dataclass
class KvReport:
    kind: str
    equation_ok: bool
    residue: TensorElement
    cocycle: CyclicElement
    member: bool
    membership_residual: dict

    @property
    def ok(self) -> bool:
        return self.equation_ok and self.member

    def residue_by_weight(self) -> Dict[int, list]:
        out: Dict[int, list] = {}
        for d in range(self.residue.D + 1):
            part = self.residue.weight_part(d)
            if part:
                out[d] = part.to_json()
        return out

    def to_json(self) -> dict:
        a = self.residue.alphabet
        failures = []
        if not self.equation_ok:
            failures.append({"check": "equation", "residue_by_weight":
                             {str(k): v for k, v in self.residue_by_weight().items()}})
        if not self.member:
            failures.append({"check": "membership", "residual":
                             [[a.word_str(w), scalar_str(c)] for w, c in sorted(self.membership_residual.items())]})
        return {"kind": self.kind, "ok": self.ok, "equation_ok": self.equation_ok,
                "cocycle": self.cocycle.to_json(), "cocycle_max_weight": self.cocycle.D,
                "member": self.member, "failures": failures}


def _report(kind: str, expected: TensorElement, actual: TensorElement, cocycle: CyclicElement,
            ctx: KvContext, base: TensorElement) -> KvReport:
    residue = expected - actual
    member, _, residual = ctx.member(cocycle, base)
    return KvReport(kind, not residue, residue, cocycle, member, residual)


def check_KV(G: TangentialAutomorphism, fr: FramingData) -> KvReport:
    ctx = G.ctx
    return _report("KV", ctx.xi, G(ctx.xi), j_fr(fr, G), ctx, ctx.xi)


def check_KRV(G: TangentialAutomorphism, fr: FramingData) -> KvReport:
    ctx = G.ctx
    return _report("KRV", ctx.omega, G(ctx.omega), j_fr_gr(fr, G), ctx, ctx.omega)


def check_SolKV(G: TangentialAutomorphism, fr: FramingData) -> KvReport:
    ctx = G.ctx
    value = j_fr_gr(fr, G) - ctx.rbold + fr.p(ctx)
    return _report("SolKV", ctx.xi, G(ctx.omega), value, ctx, ctx.xi)


def compose_expansion(G: TangentialAutomorphism) -> Callable[[Sequence[Tuple[str, int]]], TensorElement]:
    """θ = G⁻¹ ∘ θ_exp on free-group words."""
    ginv = G.inverse()
    return lambda word: ginv(G.ctx.theta_exp(word))


def check_special(theta: Callable[[Sequence[Tuple[str, int]]], TensorElement], ctx: KvContext) -> bool:
    """log θ(∂_0) == ω."""
    return theta(ctx.boundary_word()).log() == ctx.omega


# --- JSON input ----------------------------------------------------------------------------

def automorphism_from_json(data: dict, parse: Callable[[str, KvContext], TensorElement]) -> TangentialAutomorphism:
    """{"g", "n", "D", "u": {"x1": expr, ...}, "conjugators": [expr, ...]}; the
    data is the logarithm ũ of the automorphism."""
    ctx = KvContext(int(data["g"]), int(data["n"]), int(data["D"]))
    images = {}
    for key, text in (data.get("u") or {}).items():
        m = re.fullmatch(r"([xy])\[?(\d+)\]?", key)
        if not m:
            raise UnknownSymbolError(f"derivation key {key!r} is not an x or y generator")
        images[ctx.alphabet.index(f"{m.group(1)}[{m.group(2)}]")] = parse(text, ctx)
    conj = [parse(t, ctx) for t in data.get("conjugators", [])]
    if not conj:
        conj = [ctx.zero()] * ctx.n
    return TangentialAutomorphism(TangentialDerivation(ctx, images, conj))
