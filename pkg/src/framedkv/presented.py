"""Finitely presented graded Lie algebras.

A quotient is built degree by degree (graded nilpotent quotient).  In degree d
the formal symbols are the generators of weight d and the pairs (g, q) with g a
basis generator of weight e and q a quotient basis element of degree d - e,
standing for [g, q].  Relators, antisymmetry and the Jacobi identity for a
generator against pairs of basis elements are imposed by exact row reduction;
the surviving symbols form the basis.  Brackets of composite basis elements are
obtained from ad_[g,q] = [ad_g, ad_q].
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .alphabet import Alphabet, Symbol, Word, standard_factorization
from .errors import AlphabetMismatchError, DegreeError, InvariantError, UnknownSymbolError
from .lie import LieElement, lyndon_tree
from .linalg import Echelon, LinearSpan
from .scalars import ONE, Scalar, scalar_str
from .tensor import _add_into

Vec = Dict[int, Scalar]

DEFAULT_DEGREE_LIMIT = 8
DEGREE_LIMIT_ENV = "FRAMEDKV_MAX_DEGREE"


def degree_limit() -> int:
    raw = os.environ.get(DEGREE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_DEGREE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise DegreeError(f"{DEGREE_LIMIT_ENV} must be an integer, got {raw!r}") from None


def check_degree(D: int) -> None:
    if D <= 0:
        raise DegreeError("truncation degree must be positive")
    lim = degree_limit()
    if D > lim:
        raise DegreeError(f"degree {D} exceeds the safety limit {lim} (set {DEGREE_LIMIT_ENV} to raise it)")


# --- vectors ------------------------------------------------------------

def vadd(a: Mapping[int, Scalar], b: Mapping[int, Scalar], c: Scalar = ONE) -> Vec:
    out = dict(a)
    for k, v in b.items():
        _add_into(out, k, v * c)
    return out


def vscale(a: Mapping[int, Scalar], c: Scalar) -> Vec:
    if not c:
        return {}
    return {k: v * c for k, v in a.items() if v * c}


def vsum(terms: Iterable[Tuple[Scalar, Mapping[int, Scalar]]]) -> Vec:
    out: Vec = {}
    for c, vec in terms:
        for k, v in vec.items():
            _add_into(out, k, v * c)
    return out


# Trees describing elements through generators:
#   ("g", sym) | ("b", A, B) | ("l", ((coef, T), ...)) | ("v", basis index)

def lie_to_tree(lie: LieElement):
    def conv(t):
        if isinstance(t, int):
            return ("g", t)
        return ("b", conv(t[0]), conv(t[1]))

    return ("l", tuple((c, conv(lyndon_tree(w))) for w, c in lie.items_sorted()))


# --- presentations --------------------------------------------------------

@dataclass
class Presentation:
    alphabet: Alphabet
    relators: List[LieElement]
    central: Tuple[int, ...] = ()
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        for r in self.relators:
            self.alphabet.check_same(r.alphabet)
        if not self.labels:
            self.labels = [repr(r) for r in self.relators]

    def relator_label(self, i: int) -> str:
        return self.labels[i]


class GradedAlgebra:
    """Common interface: per-degree bases, brackets, generator images."""

    alphabet: Alphabet
    D: int

    def __init__(self):
        self.degree: List[int] = []
        self.by_degree: Dict[int, List[int]] = {}
        self._sc: Dict[Tuple[int, int], Vec] = {}
        self._word_memo: Dict[Word, Vec] = {}

    # to implement
    def _bracket_basis(self, i: int, j: int) -> Vec:
        raise NotImplementedError

    def gen_vector(self, sym: int) -> Vec:
        raise NotImplementedError

    def basis_def(self, i: int):
        raise NotImplementedError

    # shared
    def dims(self) -> List[int]:
        return [len(self.by_degree.get(d, [])) for d in range(1, self.D + 1)]

    def size(self) -> int:
        return len(self.degree)

    def bracket_basis(self, i: int, j: int) -> Vec:
        if self.degree[i] + self.degree[j] > self.D:
            return {}
        got = self._sc.get((i, j))
        if got is None:
            rev = self._sc.get((j, i))
            if rev is not None:
                got = vscale(rev, -1)
            else:
                got = self._bracket_basis(i, j)
            self._sc[(i, j)] = got
        return got

    def bracket(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        deg, D = self.degree, self.D
        for i, a in u.items():
            di = deg[i]
            for j, b in v.items():
                if di + deg[j] > D:
                    continue
                ab = a * b
                for k, c in self.bracket_basis(i, j).items():
                    _add_into(out, k, ab * c)
        return out

    def evaluate(self, lie: LieElement, gen_vectors: Optional[Mapping[int, Vec]] = None) -> Vec:
        """Image of a free Lie element (over this algebra's alphabet, or over
        any alphabet when gen_vectors supplies the letter images)."""
        if gen_vectors is None:
            self.alphabet.check_same(lie.alphabet)
            memo = self._word_memo
            leaf = self.gen_vector
        else:
            memo = {}
            leaf = lambda s: gen_vectors.get(s, {})  # noqa: E731
        ws = lie.alphabet.weights

        def ev(word: Word) -> Vec:
            got = memo.get(word)
            if got is None:
                if len(word) == 1:
                    got = leaf(word[0])
                else:
                    u, v = standard_factorization(word)
                    got = self.bracket(ev(u), ev(v))
                memo[word] = got
            return got

        out: Vec = {}
        for w, c in lie.terms.items():
            if sum(ws[i] for i in w) > self.D:
                continue
            for k, v in ev(w).items():
                _add_into(out, k, v * c)
        return out

    def eval_tree(self, tree, gen_vectors: Optional[Mapping[int, Vec]] = None) -> Vec:
        kind = tree[0]
        if kind == "g":
            return dict(gen_vectors[tree[1]]) if gen_vectors is not None else dict(self.gen_vector(tree[1]))
        if kind == "v":
            return {tree[1]: ONE}
        if kind == "b":
            return self.bracket(self.eval_tree(tree[1], gen_vectors), self.eval_tree(tree[2], gen_vectors))
        return vsum((c, self.eval_tree(t, gen_vectors)) for c, t in tree[1])

    def reduce(self, lie: LieElement) -> Vec:
        return self.evaluate(lie)

    def basis_label(self, i: int) -> str:
        return self._tree_label(self.basis_def(i))

    def _tree_label(self, tree) -> str:
        kind = tree[0]
        if kind == "g":
            return self.alphabet.symbols[tree[1]].name
        if kind == "v":
            return self.basis_label(tree[1])
        if kind == "b":
            return f"(brk {self._tree_label(tree[1])} {self._tree_label(tree[2])})"
        parts = [f"(smul {scalar_str(c)} {self._tree_label(t)})" if c != 1 else self._tree_label(t)
                 for c, t in tree[1]]
        if not parts:
            return "0"
        return parts[0] if len(parts) == 1 else "(+ " + " ".join(parts) + ")"

    def vector_json(self, vec: Mapping[int, Scalar]) -> list:
        return [[self.basis_label(k), scalar_str(v)] for k, v in sorted(vec.items())]

    def check_structure(self, max_degree: Optional[int] = None) -> List[str]:
        """Exhaustive antisymmetry and Jacobi check on basis triples."""
        D = self.D if max_degree is None else max_degree
        idx = [i for i in range(self.size()) if self.degree[i] <= D]
        problems = []
        for i in idx:
            for j in idx:
                if self.degree[i] + self.degree[j] > D:
                    continue
                if vadd(self.bracket_basis(i, j), self.bracket_basis(j, i)):
                    problems.append(f"antisymmetry fails on ({i},{j})")
        for a in idx:
            for b in idx:
                for c in idx:
                    if not a < b < c or self.degree[a] + self.degree[b] + self.degree[c] > D:
                        continue
                    ea, eb, ec = {a: ONE}, {b: ONE}, {c: ONE}
                    s = vadd(vadd(self.bracket(ea, self.bracket(eb, ec)),
                                  self.bracket(eb, self.bracket(ec, ea))),
                             self.bracket(ec, self.bracket(ea, eb)))
                    if s:
                        problems.append(f"Jacobi fails on ({a},{b},{c})")
        return problems


class GradedBasis(GradedAlgebra):
    """Quotient of the free Lie algebra by a homogeneous presentation, at weight <= D."""

    def __init__(self, presentation: Presentation, D: int, guard: bool = True):
        super().__init__()
        if guard:
            check_degree(D)
        elif D <= 0:
            raise DegreeError("truncation degree must be positive")
        self.presentation = presentation
        self.alphabet = presentation.alphabet
        self.D = D
        self._central = set(presentation.central)
        ws = self.alphabet.weights
        self._rel_by_weight: Dict[int, List[LieElement]] = {}
        for r in presentation.relators:
            present = r.weights_present()
            if len(present) > 1:
                raise InvariantError(f"relator {r!r} is not weight-homogeneous")
            if present and present[0] <= D:
                self._rel_by_weight.setdefault(present[0], []).append(r)
        self._gen_vec: Dict[int, Vec] = {}
        self._basis_sym: List[tuple] = []
        self._gprime: List[Tuple[int, int]] = []  # (generator, its basis index), noncentral
        self._gprime_index: Dict[int, int] = {}
        self._cols: Dict[int, Dict[tuple, int]] = {}
        self._col_syms: Dict[int, List[tuple]] = {}
        self._ech: Dict[int, Echelon] = {}
        self._col_to_basis: Dict[int, Dict[int, int]] = {}
        self._fad: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for d in range(1, D + 1):
            self._build_degree(d, ws)

    # formal layer -------------------------------------------------------
    def _fad_gen(self, g: int, qvec: Mapping[int, Scalar], d: int) -> Vec:
        if g in self._central:
            return {}
        cols = self._cols[d]
        return {cols[("ad", g, q)]: c for q, c in qvec.items() if c}

    def _fad_basis(self, i: int, j: int) -> Vec:
        """Formal symbol combination for [b_i, b_j] in degree deg i + deg j."""
        key = (i, j)
        got = self._fad.get(key)
        if got is not None:
            return got
        d = self.degree[i] + self.degree[j]
        sym = self._basis_sym[i]
        if sym[0] == "gen":
            got = self._fad_gen(sym[1], {j: ONE}, d)
        else:
            _, g, q = sym
            gi = self._gprime_index[g]
            # [[g,q], b] = [g,[q,b]] - [q,[g,b]]
            got = vadd(self._fad_gen(g, self.bracket_basis(q, j), d),
                       self._fad_vec(q, self.bracket_basis(gi, j)), -1)
        self._fad[key] = got
        return got

    def _fad_vec(self, i: int, vec: Mapping[int, Scalar]) -> Vec:
        return vsum((c, self._fad_basis(i, j)) for j, c in vec.items())

    def _formal_bracket(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = a * b
                for k, c in self._fad_basis(i, j).items():
                    _add_into(out, k, ab * c)
        return out

    def _build_degree(self, d: int, ws: Sequence[int]) -> None:
        cols: Dict[tuple, int] = {}
        syms: List[tuple] = []
        for g, gi in self._gprime:
            e = ws[g]
            if e >= d or g in self._central:
                continue
            for q in self.by_degree.get(d - e, []):
                cols[("ad", g, q)] = len(syms)
                syms.append(("ad", g, q))
        for g in range(len(self.alphabet)):
            if ws[g] == d:
                cols[("gen", g)] = len(syms)
                syms.append(("gen", g))
        self._cols[d] = cols
        self._col_syms[d] = syms
        ech = Echelon()
        self._ech[d] = ech

        # relators
        for rel in self._rel_by_weight.get(d, []):
            ech.add(self._formal_relator(rel, d))
        # central generators bracket to zero by construction (no ("ad", c, q) symbols)
        # antisymmetry
        lower = [i for i in range(len(self.degree)) if self.degree[i] < d]
        for i in lower:
            for j in self.by_degree.get(d - self.degree[i], []):
                if j < i:
                    continue
                row = vadd(self._fad_basis(i, j), self._fad_basis(j, i))
                if row:
                    ech.add(row)
        # Jacobi for a generator against pairs of basis elements
        for g, gi in self._gprime:
            e = ws[g]
            if e >= d or g in self._central:
                continue
            rest = d - e
            for b in lower:
                db = self.degree[b]
                if db >= rest:
                    continue
                for c in self.by_degree.get(rest - db, []):
                    if c <= b:
                        continue
                    row = self._fad_gen(g, self.bracket_basis(b, c), d)
                    row = vadd(row, self._formal_bracket(self.bracket_basis(gi, b), {c: ONE}), -1)
                    row = vadd(row, self._formal_bracket({b: ONE}, self.bracket_basis(gi, c)), -1)
                    if row:
                        ech.add(row)
        ech.finalize()

        col_to_basis: Dict[int, int] = {}
        self.by_degree[d] = []
        for col, sym in enumerate(syms):
            if col in ech.rows:
                continue
            idx = len(self.degree)
            self.degree.append(d)
            self.by_degree[d].append(idx)
            self._basis_sym.append(sym)
            col_to_basis[col] = idx
        self._col_to_basis[d] = col_to_basis
        for g in range(len(self.alphabet)):
            if ws[g] != d:
                continue
            col = cols[("gen", g)]
            vec = self._nf(d, {col: ONE})
            self._gen_vec[g] = vec
            if col in col_to_basis:
                self._gprime.append((g, col_to_basis[col]))
                self._gprime_index[g] = col_to_basis[col]

    def _formal_relator(self, rel: LieElement, d: int) -> Vec:
        out: Vec = {}
        cols = self._cols[d]
        for w, c in rel.terms.items():
            if len(w) == 1:
                _add_into(out, cols[("gen", w[0])], c)
                continue
            u, v = standard_factorization(w)
            for k, val in self._formal_bracket(self.evaluate(LieElement(rel.alphabet, self.D, {u: ONE}, _trusted=True)),
                                               self.evaluate(LieElement(rel.alphabet, self.D, {v: ONE}, _trusted=True))).items():
                _add_into(out, k, val * c)
        return out

    def _nf(self, d: int, formal: Mapping[int, Scalar]) -> Vec:
        red = self._ech[d].normal_form(formal)
        ctb = self._col_to_basis[d]
        return {ctb[k]: v for k, v in red.items()}

    # interface -----------------------------------------------------------
    def _bracket_basis(self, i: int, j: int) -> Vec:
        d = self.degree[i] + self.degree[j]
        return self._nf(d, self._fad_basis(i, j))

    def gen_vector(self, sym: int) -> Vec:
        if self.alphabet.weights[sym] > self.D:
            return {}
        return self._gen_vec[sym]

    def basis_def(self, i: int):
        sym = self._basis_sym[i]
        if sym[0] == "gen":
            return ("g", sym[1])
        return ("b", ("g", sym[1]), ("v", sym[2]))

    def formal_size(self) -> Dict[int, int]:
        return {d: len(s) for d, s in self._col_syms.items()}


def build_graded_basis(p: Presentation, D: int) -> GradedBasis:
    return GradedBasis(p, D)


# --- action tables and semidirect products ---------------------------------

@dataclass
class ActionTable:
    """ad_z(w) for outer generators z and inner generators w (missing = 0)."""

    outer: Alphabet
    inner: Alphabet
    entries: Dict[Tuple[int, int], LieElement]

    def value(self, z: int, w: int) -> Optional[LieElement]:
        return self.entries.get((z, w))


class TableAction:
    """Derivations of an inner algebra defined on its generators by a table;
    an outer Lie word acts through commutators of these derivations."""

    def __init__(self, inner: GradedAlgebra, act: ActionTable, outer_weights: Sequence[int]):
        act.inner.check_same(inner.alphabet)
        self.inner, self.table, self.D = inner, act, inner.D
        self.outer_weights = outer_weights
        self._gen: Dict[Tuple[int, int], Vec] = {}
        self._tab: Dict[Tuple[int, int], Vec] = {}

    def table_vec(self, z: int, w: int) -> Vec:
        key = (z, w)
        got = self._tab.get(key)
        if got is None:
            val = self.table.value(z, w)
            got = self.inner.evaluate(val) if val is not None else {}
            self._tab[key] = got
        return got

    def _der(self, z: int, tree) -> Vec:
        """ad_z applied to an inner element described by a tree (Leibniz rule)."""
        kind = tree[0]
        if kind == "g":
            return self.table_vec(z, tree[1])
        if kind == "v":
            return self.on_basis(z, tree[1])
        if kind == "b":
            a, b = tree[1], tree[2]
            return vadd(self.inner.bracket(self._der(z, a), self.inner.eval_tree(b)),
                        self.inner.bracket(self.inner.eval_tree(a), self._der(z, b)))
        return vsum((c, self._der(z, t)) for c, t in tree[1])

    def on_basis(self, z: int, k: int) -> Vec:
        """Outer generator z acting on inner basis element k."""
        key = (z, k)
        got = self._gen.get(key)
        if got is None:
            if self.inner.degree[k] + self.outer_weights[z] > self.D:
                got = {}
            else:
                got = self._der(z, self.inner.basis_def(k))
            self._gen[key] = got
        return got

    def apply(self, tree, vec: Mapping[int, Scalar], on_basis: Optional[Callable] = None) -> Vec:
        """The derivation named by an outer tree applied to an inner vector.
        ``("v", h)`` leaves need ``on_basis(h, k)``."""
        if not vec:
            return {}
        kind = tree[0]
        if kind == "g":
            return vsum((c, self.on_basis(tree[1], k)) for k, c in vec.items())
        if kind == "v":
            return vsum((c, on_basis(tree[1], k)) for k, c in vec.items())
        if kind == "b":
            a, b = tree[1], tree[2]
            return vadd(self.apply(a, self.apply(b, vec, on_basis), on_basis),
                        self.apply(b, self.apply(a, vec, on_basis), on_basis), -1)
        return vsum((c, self.apply(t, vec, on_basis)) for c, t in tree[1])


class SemidirectAlgebra(GradedAlgebra):
    """inner ⋊ outer, with [(u1,h1),(u2,h2)] = ([u1,u2] + h1·u2 - h2·u1, [h1,h2])."""

    def __init__(self, outer: GradedAlgebra, inner: GradedAlgebra, act: ActionTable):
        super().__init__()
        if outer.D != inner.D:
            raise DegreeError("inner and outer truncations differ")
        act.outer.check_same(outer.alphabet)
        self.outer, self.inner, self.table = outer, inner, act
        self.action = TableAction(inner, act, outer.alphabet.weights)
        self.D = outer.D
        names_in = set(inner.alphabet.names)
        if names_in & set(outer.alphabet.names):
            raise AlphabetMismatchError("inner and outer generator names overlap")
        self.alphabet = Alphabet(inner.alphabet.symbols + outer.alphabet.symbols)
        self.n_inner = len(inner.alphabet)
        self.side: List[Tuple[str, int]] = []
        self.from_inner: Dict[int, int] = {}
        self.from_outer: Dict[int, int] = {}
        for d in range(1, self.D + 1):
            self.by_degree[d] = []
            for part, alg, m in (("in", inner, self.from_inner), ("out", outer, self.from_outer)):
                for loc in alg.by_degree.get(d, []):
                    idx = len(self.degree)
                    self.degree.append(d)
                    self.by_degree[d].append(idx)
                    self.side.append((part, loc))
                    m[loc] = idx
        self._act_basis: Dict[Tuple[int, int], Vec] = {}

    # lifting
    def lift_inner(self, vec: Mapping[int, Scalar]) -> Vec:
        return {self.from_inner[k]: v for k, v in vec.items()}

    def lift_outer(self, vec: Mapping[int, Scalar]) -> Vec:
        return {self.from_outer[k]: v for k, v in vec.items()}

    def split(self, vec: Mapping[int, Scalar]) -> Tuple[Vec, Vec]:
        u, h = {}, {}
        for k, v in vec.items():
            part, loc = self.side[k]
            (u if part == "in" else h)[loc] = v
        return u, h

    def act_basis(self, h: int, k: int) -> Vec:
        """Outer basis element h (local) acting on inner basis element k (local)."""
        key = (h, k)
        got = self._act_basis.get(key)
        if got is None:
            if self.outer.degree[h] + self.inner.degree[k] > self.D:
                got = {}
            else:
                got = self.action.apply(self.outer.basis_def(h), {k: ONE}, self.act_basis)
            self._act_basis[key] = got
        return got

    def act(self, h: Mapping[int, Scalar], u: Mapping[int, Scalar]) -> Vec:
        out: Vec = {}
        for i, a in h.items():
            for k, b in u.items():
                for j, c in self.act_basis(i, k).items():
                    _add_into(out, j, a * b * c)
        return out

    # interface
    def _bracket_basis(self, i: int, j: int) -> Vec:
        (pi, li), (pj, lj) = self.side[i], self.side[j]
        if pi == "in" and pj == "in":
            return self.lift_inner(self.inner.bracket_basis(li, lj))
        if pi == "out" and pj == "out":
            return self.lift_outer(self.outer.bracket_basis(li, lj))
        if pi == "out":
            return self.lift_inner(self.act_basis(li, lj))
        return vscale(self.lift_inner(self.act_basis(lj, li)), -1)

    def gen_vector(self, sym: int) -> Vec:
        if sym < self.n_inner:
            return self.lift_inner(self.inner.gen_vector(sym))
        return self.lift_outer(self.outer.gen_vector(sym - self.n_inner))

    def basis_def(self, i: int):
        part, loc = self.side[i]
        if part == "in":
            return _remap_tree(self.inner.basis_def(loc), 0, self.from_inner)
        return _remap_tree(self.outer.basis_def(loc), self.n_inner, self.from_outer)


def _remap_tree(tree, offset: int, vmap: Mapping[int, int]):
    kind = tree[0]
    if kind == "g":
        return ("g", tree[1] + offset)
    if kind == "v":
        return ("v", vmap[tree[1]])
    if kind == "b":
        return ("b", _remap_tree(tree[1], offset, vmap), _remap_tree(tree[2], offset, vmap))
    return ("l", tuple((c, _remap_tree(t, offset, vmap)) for c, t in tree[1]))


def semidirect(outer: GradedAlgebra, inner: GradedAlgebra, act: ActionTable) -> SemidirectAlgebra:
    return SemidirectAlgebra(outer, inner, act)


class RelabeledAlgebra(GradedAlgebra):
    """An algebra seen through an isomorphism: the generators of ``alphabet``
    map to ``images`` in ``base``; ``back`` gives base generators as elements
    over ``alphabet`` (used to describe basis elements)."""

    def __init__(self, alphabet: Alphabet, base: GradedAlgebra,
                 images: Mapping[int, LieElement], back: Mapping[int, LieElement]):
        super().__init__()
        self.alphabet, self.base, self.D = alphabet, base, base.D
        self.degree, self.by_degree = base.degree, base.by_degree
        self._images = dict(images)
        self._back = {k: lie_to_tree(v) for k, v in back.items()}
        self._gv: Dict[int, Vec] = {}

    def bracket_basis(self, i: int, j: int) -> Vec:
        return self.base.bracket_basis(i, j)

    def gen_vector(self, sym: int) -> Vec:
        got = self._gv.get(sym)
        if got is None:
            img = self._images.get(sym)
            got = self.base.evaluate(img) if img is not None else {}
            self._gv[sym] = got
        return got

    def basis_def(self, i: int):
        return self._translate(self.base.basis_def(i))

    def _translate(self, tree):
        kind = tree[0]
        if kind == "g":
            return self._back[tree[1]]
        if kind == "v":
            return tree
        if kind == "b":
            return ("b", self._translate(tree[1]), self._translate(tree[2]))
        return ("l", tuple((c, self._translate(t)) for c, t in tree[1]))


# --- morphisms and membership ---------------------------------------------

@dataclass
class MorphismReport:
    ok: bool
    entries: List[dict]

    def failures(self) -> List[dict]:
        return [e for e in self.entries if not e["ok"]]


def verify_morphism(src: Presentation, dst: GradedAlgebra, images: Mapping[int, LieElement],
                    D: Optional[int] = None) -> MorphismReport:
    D = dst.D if D is None else D
    ws = src.alphabet.weights
    missing = [src.alphabet.symbols[s].name for s in range(len(src.alphabet))
               if s not in images and ws[s] <= D]
    if missing:
        raise UnknownSymbolError(f"missing generator images: {', '.join(missing)}")
    gv = {}
    for s, img in images.items():
        w = img.weights_present()
        if w and w != [ws[s]]:
            raise InvariantError(f"image of {src.alphabet.symbols[s].name} has weight {w}, expected {ws[s]}")
        gv[s] = dst.evaluate(img)
    entries = []
    for i, rel in enumerate(src.relators):
        if rel.weights_present() and rel.weights_present()[0] > D:
            continue
        res = dst.evaluate(rel, gv)
        entries.append({"relator": src.relator_label(i), "witness": None, "ok": not res,
                        "residue": dst.vector_json(res)})
    for c in src.central:
        for s in range(len(src.alphabet)):
            if s == c or ws[s] + ws[c] > D:
                continue
            res = dst.bracket(gv[c], gv[s])
            entries.append({"relator": f"central {src.alphabet.symbols[c].name}",
                            "witness": src.alphabet.symbols[s].name, "ok": not res,
                            "residue": dst.vector_json(res)})
    return MorphismReport(all(e["ok"] for e in entries), entries)


def subspace_membership(seeds: Sequence[Mapping], target: Mapping) -> Tuple[bool, Optional[dict], dict]:
    """Is target an exact linear combination of the seed vectors?

    Returns (verdict, coefficients by seed position, residual)."""
    span = LinearSpan()
    for i, s in enumerate(seeds):
        span.add(i, s)
    coeffs, residual = span.express(target)
    return coeffs is not None, coeffs, residual


def free_presentation(alphabet: Alphabet) -> Presentation:
    return Presentation(alphabet, [])


def symbols_of(alphabet: Alphabet) -> List[Symbol]:
    return list(alphabet.symbols)


# --- JSON documents ----------------------------------------------------------

def presentation_from_json(data: Mapping, D: int) -> Presentation:
    """{"generators": [{name, weight, role}], "relators": [expr], "central": [name]}."""
    from .alphabet import split_name
    from .expr import parse_lie

    syms = []
    for g in data["generators"]:
        role, idx = split_name(g["name"])
        syms.append(Symbol(g["name"], g.get("role", role), int(g["weight"]), idx))
    alph = Alphabet(tuple(syms))
    pairs = [(parse_lie(text, alph, D), str(text)) for text in data.get("relators", [])]
    pairs = [(r, t) for r, t in pairs if r]
    central = tuple(alph.index(n) for n in data.get("central", []))
    return Presentation(alph, [r for r, _ in pairs], central, [t for _, t in pairs])


def presentation_to_json(p: Presentation) -> dict:
    from .expr import lie_to_text

    return {"generators": [{"name": s.name, "weight": s.weight, "role": s.role} for s in p.alphabet.symbols],
            "relators": [lie_to_text(r) for r in p.relators],
            "central": [p.alphabet.symbols[i].name for i in p.central]}
