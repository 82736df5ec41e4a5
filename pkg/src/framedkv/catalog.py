"""Framed Drinfeld-Kohno Lie algebras and the maps between them.

Generators of the genus g algebra on strands I are x[i,a], y[i,a] (weight 1)
and t[i,j] = t[j,i] (weight 2).  The disk algebra (genus None) has only the
t[i,j].  The algebra u^f on a distinguished strand ``star`` is the free Lie
algebra on t[j,star], x[star,a], y[star,a] plus the central t[star,star].

The splitting of the algebra on strands (others, star, zero) as
u^f(others, star) ⋊ t^f(others, zero) is realised by the maps F (inclusion plus
doubling of the strand zero) and G; iterating it gives the tower, a faithful
normal form for t^f on any number of strands.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .alphabet import Alphabet, Symbol
from .errors import InvariantError, UnknownSymbolError
from .lie import LieElement, substitute
from .presented import (ActionTable, GradedAlgebra, GradedBasis, MorphismReport, Presentation,
                        RelabeledAlgebra, SemidirectAlgebra, TableAction, lie_to_tree,
                        verify_morphism)
from .scalars import ONE, Scalar

RELATOR_WEIGHT = 4  # every defining relation has weight <= 4


@dataclass(frozen=True)
class StrandSet:
    labels: Tuple[str, ...]
    genus: Optional[int]  # None: the disk algebra t^f_I
    framed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(l) for l in self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise InvariantError("strand labels must be unique")
        if self.genus is not None and self.genus < 0:
            raise InvariantError("genus must be nonnegative")

    @property
    def handles(self) -> int:
        return self.genus or 0


def strands(n: int, *extra: str) -> List[str]:
    return [str(i) for i in range(1, n + 1)] + list(extra)


# --- alphabets -------------------------------------------------------------

def tname(i: str, j: str, labels: Sequence[str]) -> str:
    """Canonical name of t_ij: indices in label order."""
    if labels.index(i) > labels.index(j):
        i, j = j, i
    return f"t[{i},{j}]"


def tf_alphabet(s: StrandSet) -> Alphabet:
    return s_alphabet(s.labels, s.handles)


def s_alphabet(labels: Sequence[str], g: int) -> Alphabet:
    cache_key = (tuple(labels), g)
    got = _ALPHABETS.get(cache_key)
    if got is not None:
        return got
    syms = []
    for i in labels:
        for role in ("x", "y"):
            for a in range(1, g + 1):
                syms.append(Symbol(f"{role}[{i},{a}]", role, 1, (i, str(a))))
    for p, i in enumerate(labels):
        for j in labels[p:]:
            syms.append(Symbol(f"t[{i},{j}]", "t", 2, (i, j)))
    alph = _ALPHABETS.setdefault(cache_key, Alphabet(tuple(syms)))
    return alph


_ALPHABETS: Dict[tuple, Alphabet] = {}


def uf_alphabet(g: int, others: Sequence[str], star: str) -> Alphabet:
    key = ("u", tuple(others), star, g)
    got = _ALPHABETS.get(key)
    if got is not None:
        return got
    syms = []
    for role in ("x", "y"):
        for a in range(1, g + 1):
            syms.append(Symbol(f"{role}[{star},{a}]", role, 1, (star, str(a))))
    for j in others:
        syms.append(Symbol(f"t[{j},{star}]", "t", 2, (j, star)))
    syms.append(Symbol(f"t[{star},{star}]", "center", 2, (star, star)))
    return _ALPHABETS.setdefault(key, Alphabet(tuple(syms)))


class _Builder:
    """Small helper producing Lie elements over a fixed alphabet."""

    def __init__(self, alphabet: Alphabet, D: int = RELATOR_WEIGHT):
        self.alphabet, self.D = alphabet, D

    def gen(self, name: str, c: Scalar = ONE) -> LieElement:
        return LieElement.generator(self.alphabet, self.D, name, c)

    def zero(self) -> LieElement:
        return LieElement.zero(self.alphabet, self.D)

    def br(self, a: LieElement, b: LieElement) -> LieElement:
        return a.bracket(b)

    def total(self, items) -> LieElement:
        out = self.zero()
        for e in items:
            out = out + e
        return out


# --- presentations -----------------------------------------------------------

def make_tf(s: StrandSet, mutate: bool = False) -> Presentation:
    """Defining relations of t^f_{g,I} (or t^f_I for the disk).

    ``mutate`` replaces the coefficient (g-1) of the last relation by g; it
    exists only to show that the verifications detect such a change.
    """
    I, g = list(s.labels), s.handles
    alph = tf_alphabet(s)
    B = _Builder(alph)
    rels: List[LieElement] = []
    labels: List[str] = []

    def add(rel: LieElement, label: str) -> None:
        if rel:
            rels.append(rel)
            labels.append(label)

    def t(i, j):
        return B.gen(tname(i, j, I))

    pairs = [(I[p], I[q]) for p in range(len(I)) for q in range(p, len(I))]
    # [t_ij, t_kl] = 0 for disjoint index sets
    for p, (i, j) in enumerate(pairs):
        for k, l in pairs[p + 1:]:
            if not {i, j} & {k, l}:
                add(B.br(t(i, j), t(k, l)), f"[{tname(i, j, I)},{tname(k, l, I)}] = 0")
    # [t_ij, t_ik + t_jk] = 0 for k outside {i, j}
    for i, j in pairs:
        for k in I:
            if k in (i, j):
                continue
            add(B.br(t(i, j), t(i, k) + t(j, k)),
                f"[{tname(i, j, I)},{tname(i, k, I)} + {tname(j, k, I)}] = 0")
    if s.genus is not None:
        def x(i, a):
            return B.gen(f"x[{i},{a}]")

        def y(i, a):
            return B.gen(f"y[{i},{a}]")

        hs = range(1, g + 1)
        for i in I:
            for j in I:
                if i == j:
                    continue
                for a in hs:
                    for b in hs:
                        rhs = t(i, j) if a == b else B.zero()
                        add(B.br(x(i, a), y(j, b)) - rhs,
                            f"[x[{i},{a}],y[{j},{b}]] = " + (tname(i, j, I) if a == b else "0"))
        for p, i in enumerate(I):
            for j in I[p + 1:]:
                for a in hs:
                    for b in hs:
                        add(B.br(x(i, a), x(j, b)), f"[x[{i},{a}],x[{j},{b}]] = 0")
                        add(B.br(y(i, a), y(j, b)), f"[y[{i},{a}],y[{j},{b}]] = 0")
        for i, j in pairs:
            for a in hs:
                for k in I:
                    if k in (i, j):
                        continue
                    add(B.br(x(k, a), t(i, j)), f"[x[{k},{a}],{tname(i, j, I)}] = 0")
                    add(B.br(y(k, a), t(i, j)), f"[y[{k},{a}],{tname(i, j, I)}] = 0")
                add(B.br(x(i, a) + x(j, a), t(i, j)), f"[x[{i},{a}] + x[{j},{a}],{tname(i, j, I)}] = 0")
                add(B.br(y(i, a) + y(j, a), t(i, j)), f"[y[{i},{a}] + y[{j},{a}],{tname(i, j, I)}] = 0")
        coeff = g if mutate else g - 1
        for i in I:
            rel = B.total(B.br(x(i, a), y(i, a)) for a in hs)
            rel = rel + B.total(t(i, j) for j in I if j != i) - t(i, i).scale(Fraction(coeff))
            add(rel, f"last relation at {i}: sum[x[{i},a],y[{i},a]] + sum t[{i},j] = {coeff}*{tname(i, i, I)}")
    if not s.framed:
        for i in I:
            add(t(i, i), f"{tname(i, i, I)} = 0")
    return Presentation(alph, rels, (), labels)


def uf_presentation(g: int, others: Sequence[str], star: str) -> Presentation:
    alph = uf_alphabet(g, others, star)
    return Presentation(alph, [], (alph.index(f"t[{star},{star}]"),))


def omega_star(alphabet: Alphabet, g: int, others: Sequence[str], star: str, D: int,
               mutate: bool = False) -> LieElement:
    """ω_* = Σ_a [x_*^a, y_*^a] + Σ_j t_{j*} - (g-1) t_{**} over any alphabet containing these."""
    B = _Builder(alphabet, D)
    out = B.total(B.br(B.gen(f"x[{star},{a}]"), B.gen(f"y[{star},{a}]")) for a in range(1, g + 1))
    out = out + B.total(B.gen(f"t[{j},{star}]") for j in others)
    coeff = g if mutate else g - 1
    return out - B.gen(f"t[{star},{star}]").scale(Fraction(coeff))


def omega_vec(alphabet: Alphabet, g: int, label: str, others: Sequence[str], D: int,
              labels: Sequence[str]) -> LieElement:
    """Σ_a [x_i^a, y_i^a] + Σ_{j≠i} t_ij over a strand alphabet."""
    B = _Builder(alphabet, D)
    out = B.total(B.br(B.gen(f"x[{label},{a}]"), B.gen(f"y[{label},{a}]")) for a in range(1, g + 1))
    return out + B.total(B.gen(tname(label, j, labels)) for j in others)


def uf_action(g: int, others: Sequence[str], star: str, zero: str, mutate: bool = False) -> ActionTable:
    """ad_z(w) for z a generator of t^f(others, zero) and w one of u^f(others, star)."""
    outer = s_alphabet(list(others) + [zero], g)
    inner = uf_alphabet(g, others, star)
    labels = list(others) + [zero]
    D = 6
    B = _Builder(inner, D)
    om = omega_star(inner, g, others, star, D, mutate)
    hs = range(1, g + 1)

    def ts(k):
        return B.gen(f"t[{k},{star}]")

    def xs(a):
        return B.gen(f"x[{star},{a}]")

    def ys(a):
        return B.gen(f"y[{star},{a}]")

    entries: Dict[Tuple[int, int], LieElement] = {}

    def put(zname: str, w: LieElement, wname: str) -> None:
        if w:
            entries[(outer.index(zname), inner.index(wname))] = w

    def d(p, q):
        return 1 if p == q else 0

    for ip, i in enumerate(others):
        for j in others[ip:]:
            z = tname(i, j, labels)
            for k in others:
                put(z, B.br(ts(k), ts(j).scale(Fraction(d(i, k))) + ts(i).scale(Fraction(d(j, k)))),
                    f"t[{k},{star}]")
        z = tname(i, zero, labels)
        for k in others:
            put(z, B.br(ts(i) + om.scale(Fraction(d(i, k))), ts(k)), f"t[{k},{star}]")
        for b in hs:
            put(z, B.br(ts(i), xs(b)), f"x[{star},{b}]")
            put(z, B.br(ts(i), ys(b)), f"y[{star},{b}]")
    z = tname(zero, zero, labels)
    for k in others:
        put(z, B.br(ts(k), om).scale(Fraction(2)), f"t[{k},{star}]")
    for b in hs:
        put(z, B.br(xs(b), om).scale(Fraction(2)), f"x[{star},{b}]")
        put(z, B.br(ys(b), om).scale(Fraction(2)), f"y[{star},{b}]")
    for a in hs:
        for i in others:
            put(f"x[{i},{a}]", B.br(ts(i), xs(a)), f"t[{i},{star}]")
            put(f"x[{i},{a}]", ts(i), f"y[{star},{a}]")
            put(f"y[{i},{a}]", B.br(ts(i), ys(a)), f"t[{i},{star}]")
            put(f"y[{i},{a}]", -ts(i), f"x[{star},{a}]")
        for k in others:
            put(f"x[{zero},{a}]", B.br(xs(a), ts(k)), f"t[{k},{star}]")
            put(f"y[{zero},{a}]", B.br(ys(a), ts(k)), f"t[{k},{star}]")
        for b in hs:
            put(f"x[{zero},{a}]", B.br(xs(a), xs(b)), f"x[{star},{b}]")
            put(f"x[{zero},{a}]", B.br(xs(a), ys(b)) - (om if a == b else B.zero()), f"y[{star},{b}]")
            put(f"y[{zero},{a}]", B.br(ys(a), xs(b)) + (om if a == b else B.zero()), f"x[{star},{b}]")
            put(f"y[{zero},{a}]", B.br(ys(a), ys(b)), f"y[{star},{b}]")
    return ActionTable(outer, inner, entries)


def action_table_json(table: ActionTable) -> list:
    rows = []
    for (z, w), val in sorted(table.entries.items()):
        rows.append({"row": table.outer.symbols[z].name, "column": table.inner.symbols[w].name,
                     "value": repr(val)})
    return rows


# --- operadic insertion and automorphisms ---------------------------------------

def insertion_images(s: StrandSet, k: str, J: Sequence[str], D: int = RELATOR_WEIGHT
                     ) -> Tuple[StrandSet, Dict[int, LieElement]]:
    """Generator images of ∘_k: strand k is replaced (in place) by the strands J."""
    I = list(s.labels)
    if k not in I:
        raise UnknownSymbolError(f"strand {k!r} is not among {I}")
    J = [str(j) for j in J]
    if len(set(J)) != len(J) or set(J) & (set(I) - {k}):
        raise InvariantError("inserted labels collide with existing strands")
    p = I.index(k)
    target = StrandSet(tuple(I[:p] + J + I[p + 1:]), s.genus, s.framed)
    src, dst = tf_alphabet(s), tf_alphabet(target)
    T = list(target.labels)
    B = _Builder(dst, D)

    def spread(i):
        return J if i == k else [i]

    images: Dict[int, LieElement] = {}
    for idx, sym in enumerate(src.symbols):
        if sym.role == "t":
            i, j = sym.index
            images[idx] = B.total(B.gen(tname(l, m, T)) for l in spread(i) for m in spread(j))
        else:
            i, a = sym.index
            images[idx] = B.total(B.gen(f"{sym.role}[{l},{a}]") for l in spread(i))
    return target, images


def insert_k(s: StrandSet, k: str, J: Sequence[str], e: LieElement) -> Tuple[StrandSet, LieElement]:
    target, images = insertion_images(s, k, J, e.D)
    return target, substitute(e, images, tf_alphabet(target), e.D)


def _symplectic_form(g: int) -> List[List[Fraction]]:
    return [[Fraction(1) if c == r + g else Fraction(-1) if r == c + g else Fraction(0)
             for c in range(2 * g)] for r in range(2 * g)]


def check_symplectic(sigma: Sequence[Sequence], g: int) -> List[List[Fraction]]:
    m = [[Fraction(v) for v in row] for row in sigma]
    if len(m) != 2 * g or any(len(r) != 2 * g for r in m):
        raise InvariantError(f"expected a {2 * g}x{2 * g} matrix")
    J = _symplectic_form(g)
    n = 2 * g
    mt_j = [[sum(m[k][r] * J[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    prod = [[sum(mt_j[r][k] * m[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    if prod != J:
        raise InvariantError("matrix is not symplectic")
    return m


def symplectic_images(s: StrandSet, sigma: Sequence[Sequence], D: int = RELATOR_WEIGHT) -> Dict[int, LieElement]:
    """σ acts on Span{x^1..x^g, y^1..y^g} (coordinates in that order, columns
    are images) and on every strand copy; t_ij is fixed."""
    g = s.handles
    m = check_symplectic(sigma, g)
    alph = tf_alphabet(s)
    B = _Builder(alph, D)
    images: Dict[int, LieElement] = {}
    for idx, sym in enumerate(alph.symbols):
        if sym.role == "t":
            images[idx] = B.gen(sym.name)
            continue
        i, a = sym.index
        col = int(a) - 1 + (g if sym.role == "y" else 0)
        terms = []
        for r in range(2 * g):
            if m[r][col]:
                role = "x" if r < g else "y"
                terms.append(B.gen(f"{role}[{i},{r % g + 1}]", m[r][col]))
        images[idx] = B.total(terms)
    return images


def rescale_images(s: StrandSet, lam: Scalar, D: int = RELATOR_WEIGHT) -> Dict[int, LieElement]:
    if not lam:
        raise InvariantError("rescaling factor must be invertible")
    alph = tf_alphabet(s)
    B = _Builder(alph, D)
    return {idx: B.gen(sym.name, lam * lam if sym.role == "t" else lam)
            for idx, sym in enumerate(alph.symbols)}


def apply_symplectic(s: StrandSet, sigma, e: LieElement) -> LieElement:
    return substitute(e, symplectic_images(s, sigma, e.D), e.alphabet, e.D)


def rescale(s: StrandSet, lam: Scalar, e: LieElement) -> LieElement:
    return substitute(e, rescale_images(s, lam, e.D), e.alphabet, e.D)


# --- the splitting ---------------------------------------------------------------

def split_labels(labels: Sequence[str]) -> Tuple[List[str], str, str]:
    if len(labels) < 2:
        raise InvariantError("the splitting needs at least two strands")
    return list(labels[:-2]), labels[-2], labels[-1]


def semidirect_alphabet(g: int, others: Sequence[str], star: str, zero: str) -> Alphabet:
    inner = uf_alphabet(g, others, star)
    outer = s_alphabet(list(others) + [zero], g)
    return Alphabet(inner.symbols + outer.symbols)


def map_G(g: int, labels: Sequence[str], D: int, mutate: bool = False) -> Dict[int, LieElement]:
    """G: t^f(others, star, zero) -> u^f ⋊ t^f(others, zero), on generators.

    ``mutate`` uses the altered ω_* (coefficient g in place of g - 1)."""
    others, star, zero = split_labels(labels)
    src = s_alphabet(labels, g)
    dst = semidirect_alphabet(g, others, star, zero)
    B = _Builder(dst, D)
    om = omega_star(dst, g, others, star, D, mutate)
    L = list(labels)
    images: Dict[int, LieElement] = {}
    for idx, sym in enumerate(src.symbols):
        if sym.role == "t":
            i, j = sym.index
            if {i, j} == {star}:
                img = B.gen(f"t[{star},{star}]")
            elif {i, j} == {zero}:
                img = B.gen(f"t[{zero},{zero}]") - B.gen(f"t[{star},{star}]") + om.scale(Fraction(2))
            elif {i, j} == {star, zero}:
                img = -om
            elif star in (i, j):
                img = B.gen(sym.name)
            elif zero in (i, j):
                other = i if j == zero else j
                img = B.gen(sym.name) - B.gen(tname(other, star, L))
            else:
                img = B.gen(sym.name)
        else:
            i, a = sym.index
            if i == zero:
                img = B.gen(sym.name) - B.gen(f"{sym.role}[{star},{a}]")
            else:
                img = B.gen(sym.name)
        images[idx] = img
    return images


def map_F(g: int, labels: Sequence[str], D: int) -> Dict[int, LieElement]:
    """F = ι + ∘_zero id_{star zero}: u^f ⋊ t^f(others, zero) -> t^f(others, star, zero)."""
    others, star, zero = split_labels(labels)
    src = semidirect_alphabet(g, others, star, zero)
    dst = s_alphabet(labels, g)
    B = _Builder(dst, D)
    n_inner = len(uf_alphabet(g, others, star))
    _, ins = insertion_images(StrandSet(tuple(others) + (zero,), g), zero, [star, zero], D)
    images: Dict[int, LieElement] = {}
    for idx, sym in enumerate(src.symbols):
        if idx < n_inner:
            images[idx] = B.gen(sym.name)
        else:
            images[idx] = ins[idx - n_inner]
    return images


def semidirect_presentation(g: int, labels: Sequence[str]) -> Presentation:
    """u^f ⋊ t^f(others, zero) as a presentation: inner relations (central t_**),
    outer relators and the cross relations [z, w] = ad_z(w)."""
    others, star, zero = split_labels(labels)
    alph = semidirect_alphabet(g, others, star, zero)
    inner = uf_alphabet(g, others, star)
    outer_s = StrandSet(tuple(others) + (zero,), g)
    outer_p = make_tf(outer_s)
    n_inner = len(inner)
    shift = {i: LieElement.generator(alph, RELATOR_WEIGHT, i + n_inner) for i in range(len(outer_p.alphabet))}
    rels, labs = [], []
    for rel, lab in zip(outer_p.relators, outer_p.labels):
        rels.append(substitute(rel, shift, alph, RELATOR_WEIGHT))
        labs.append(lab)
    table = uf_action(g, others, star, zero)
    B = _Builder(alph, RELATOR_WEIGHT)
    for z, zsym in enumerate(outer_p.alphabet.symbols):
        for w, wsym in enumerate(inner.symbols):
            val = table.value(z, w)
            lhs = B.br(B.gen(zsym.name), B.gen(wsym.name))
            if val is not None:
                val = LieElement(alph, RELATOR_WEIGHT, dict(val.terms))
            rel = lhs - val if val is not None else lhs
            if rel:
                rels.append(rel)
                labs.append(f"[{zsym.name},{wsym.name}] = ad")
    return Presentation(alph, rels, (alph.index(f"t[{star},{star}]"),), labs)


def tower(g: int, labels: Sequence[str], D: int) -> GradedAlgebra:
    """t^f_{g,labels} through the iterated splitting; the alphabet is the direct one."""
    labels = [str(l) for l in labels]
    if len(labels) == 1:
        return GradedBasis(make_tf(StrandSet(tuple(labels), g)), D)
    others, star, zero = split_labels(labels)
    outer = tower(g, others + [zero], D)
    inner = GradedBasis(uf_presentation(g, others, star), D)
    sd = SemidirectAlgebra(outer, inner, uf_action(g, others, star, zero))
    return RelabeledAlgebra(s_alphabet(labels, g), sd, map_G(g, labels, D), map_F(g, labels, D))


def direct(g: int, labels: Sequence[str], D: int, framed: bool = True) -> GradedBasis:
    return GradedBasis(make_tf(StrandSet(tuple(str(l) for l in labels), g, framed)), D)


# --- verification reports ----------------------------------------------------------

@dataclass
class Report:
    ok: bool
    entries: List[dict]
    info: dict

    def failures(self) -> List[dict]:
        return [e for e in self.entries if not e["ok"]]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": len(self.entries), "failures": self.failures(), **self.info}


def verify_action_table(g: int, n: int, D: int, mutate: bool = False) -> Report:
    """Every relator of t^f_{g,1..n0} must act as zero on every generator of u^f."""
    others, star, zero = strands(n), "*", "0"
    inner = GradedBasis(uf_presentation(g, others, star), D)
    outer_p = make_tf(StrandSet(tuple(others) + (zero,), g), mutate=mutate)
    table = uf_action(g, others, star, zero, mutate=mutate)
    action = TableAction(inner, table, outer_p.alphabet.weights)
    entries = []
    for rel, lab in zip(outer_p.relators, outer_p.labels):
        tree = lie_to_tree(rel)
        wt = rel.weights_present()[0]
        for w, wsym in enumerate(inner.alphabet.symbols):
            if wt + wsym.weight > D:
                continue
            res = action.apply(tree, inner.gen_vector(w))
            entries.append({"relator": lab, "witness": wsym.name, "ok": not res,
                            "residue": inner.vector_json(res)})
    return Report(all(e["ok"] for e in entries), entries,
                  {"genus": g, "punctures": n, "max_degree": D, "mutated": mutate})


def _gen_identity_entries(dst: GradedAlgebra, images_vec: Mapping[int, dict], label: str) -> List[dict]:
    out = []
    D = dst.D
    for s, sym in enumerate(dst.alphabet.symbols):
        if sym.weight > D:
            continue
        diff = dict(images_vec[s])
        for k, v in dst.gen_vector(s).items():
            diff[k] = diff.get(k, 0) - v
        diff = {k: v for k, v in diff.items() if v}
        out.append({"relator": label, "witness": sym.name, "ok": not diff,
                    "residue": dst.vector_json(diff)})
    return out


def verify_split(g: int, n: int, D: int, mutate: bool = False) -> Report:
    labels = strands(n, "*", "0")
    others, star, zero = split_labels(labels)
    direct_alg = direct(g, labels, D)
    outer = tower(g, others + [zero], D)
    inner = GradedBasis(uf_presentation(g, others, star), D)
    sd = SemidirectAlgebra(outer, inner, uf_action(g, others, star, zero))
    F, G = map_F(g, labels, D), map_G(g, labels, D, mutate)
    entries: List[dict] = []

    def tag(rep: MorphismReport, name: str) -> None:
        for e in rep.entries:
            entries.append({**e, "check": name})

    tag(verify_morphism(semidirect_presentation(g, labels), direct_alg, F, D), "F morphism")
    tag(verify_morphism(make_tf(StrandSet(tuple(labels), g)), sd, G, D), "G morphism")
    # F∘G on the direct generators, G∘F on the semidirect ones
    F_vec = {s: direct_alg.evaluate(img) for s, img in F.items()}
    G_vec = {s: sd.evaluate(img) for s, img in G.items()}
    FG = {s: direct_alg.evaluate(img, F_vec) for s, img in G.items()}
    GF = {s: sd.evaluate(img, G_vec) for s, img in F.items()}
    for e in _gen_identity_entries(direct_alg, FG, "F∘G = id"):
        entries.append({**e, "check": "F∘G"})
    for e in _gen_identity_entries(sd, GF, "G∘F = id"):
        entries.append({**e, "check": "G∘F"})
    dims_direct = direct_alg.dims()
    tw = tower(g, labels, D)
    dims_tower = tw.dims()
    entries.append({"relator": "dimensions", "witness": None, "check": "dims",
                    "ok": dims_direct == dims_tower and dims_direct == sd.dims(),
                    "residue": [dims_direct, dims_tower]})
    return Report(all(e["ok"] for e in entries), entries,
                  {"genus": g, "punctures": n, "max_degree": D, "mutated": mutate,
                   "dims_direct": dims_direct, "dims_tower": dims_tower,
                   "dims_uf": inner.dims(), "dims_quotient": outer.dims()})
