"""Truncated free Lie algebra in the Lyndon basis (standard bracketing), and
Baker-Campbell-Hausdorff in any Lie algebra."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, TypeVar

from .alphabet import Alphabet, Word, is_lyndon, standard_factorization
from .errors import DegreeError, NotLieError
from .scalars import ONE, Scalar, scalar_str
from .tensor import TensorElement, _add_into

Tree = object  # nested pairs of letter indices


def lyndon_tree(word: Word):
    """Standard bracketing of a Lyndon word as nested pairs of letter indices."""
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (lyndon_tree(u), lyndon_tree(v))


def _expand_lyndon(alphabet: Alphabet, word: Word) -> Dict[Word, int]:
    """P_w as integer word coefficients (independent of truncation)."""
    cache = alphabet.cached("lyndon_expansions", dict)
    got = cache.get(word)
    if got is not None:
        return got
    if len(word) == 1:
        out = {word: 1}
    else:
        u, v = standard_factorization(word)
        pu, pv = _expand_lyndon(alphabet, u), _expand_lyndon(alphabet, v)
        out: Dict[Word, int] = {}
        for a, ca in pu.items():
            for b, cb in pv.items():
                out[a + b] = out.get(a + b, 0) + ca * cb
                out[b + a] = out.get(b + a, 0) - ca * cb
        out = {w: c for w, c in out.items() if c}
    cache[word] = out
    return out


class LieElement:
    """Immutable truncated element of the free Lie algebra; keys are Lyndon words."""

    __slots__ = ("alphabet", "D", "terms")

    def __init__(self, alphabet: Alphabet, D: int, terms: Optional[Mapping[Word, Scalar]] = None,
                 _trusted: bool = False):
        if D <= 0:
            raise DegreeError("truncation degree must be positive")
        self.alphabet = alphabet
        self.D = D
        if _trusted:
            self.terms = terms
        else:
            ws = alphabet.weights
            t = {}
            for w, c in (terms or {}).items():
                w = tuple(w)
                if not c or sum(ws[i] for i in w) > D:
                    continue
                if not is_lyndon(w):
                    raise NotLieError(f"{w} is not a Lyndon word")
                t[w] = c
            self.terms = t

    @classmethod
    def zero(cls, alphabet: Alphabet, D: int) -> "LieElement":
        return cls(alphabet, D, {}, _trusted=True)

    @classmethod
    def generator(cls, alphabet: Alphabet, D: int, name, c: Scalar = ONE) -> "LieElement":
        i = alphabet.index(name) if isinstance(name, str) else name
        return cls(alphabet, D, {(i,): c})

    def _new(self, terms) -> "LieElement":
        return LieElement(self.alphabet, self.D, terms, _trusted=True)

    def __add__(self, other: "LieElement") -> "LieElement":
        self.alphabet.check_same(other.alphabet)
        t = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(t, w, c)
        return self._new(t)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return self._new({w: -c for w, c in self.terms.items()})

    def scale(self, c: Scalar) -> "LieElement":
        return self._new({w: v * c for w, v in self.terms.items() if v * c})

    def __rmul__(self, c) -> "LieElement":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.alphabet.symbols == other.alphabet.symbols and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def weight_part(self, d: int) -> "LieElement":
        ws = self.alphabet.weights
        return self._new({w: c for w, c in self.terms.items() if sum(ws[i] for i in w) == d})

    def is_homogeneous(self) -> bool:
        ws = self.alphabet.weights
        return len({sum(ws[i] for i in w) for w in self.terms}) <= 1

    def weights_present(self) -> List[int]:
        ws = self.alphabet.weights
        return sorted({sum(ws[i] for i in w) for w in self.terms})

    def truncate(self, D: int) -> "LieElement":
        return LieElement(self.alphabet, D, self.terms)

    def to_tensor(self, D: Optional[int] = None) -> TensorElement:
        D = self.D if D is None else D
        out: Dict[Word, Scalar] = {}
        for w, c in self.terms.items():
            for v, k in _expand_lyndon(self.alphabet, w).items():
                _add_into(out, v, c * k)
        return TensorElement(self.alphabet, D, out)

    @classmethod
    def from_tensor(cls, t: TensorElement) -> "LieElement":
        """Lyndon coordinates of a Lie element given in word coordinates.

        The smallest word of each length in the support of a Lie polynomial is
        Lyndon and carries the Lyndon coefficient, since P_w = w + larger words.
        """
        if t.epsilon():
            raise NotLieError("Lie elements have no constant term")
        alphabet = t.alphabet
        by_len: Dict[int, Dict[Word, Scalar]] = {}
        for w, c in t.terms.items():
            by_len.setdefault(len(w), {})[w] = c
        out: Dict[Word, Scalar] = {}
        for n in sorted(by_len):
            rest = by_len[n]
            while rest:
                w = min(rest)
                c = rest[w]
                if not is_lyndon(w):
                    raise NotLieError(f"element is not a Lie polynomial (word {alphabet.word_str(w)})")
                out[w] = c
                for v, k in _expand_lyndon(alphabet, w).items():
                    _add_into(rest, v, -c * k)
        return cls(alphabet, t.D, out, _trusted=True)

    def bracket(self, other: "LieElement") -> "LieElement":
        self.alphabet.check_same(other.alphabet)
        a, b = self.to_tensor(), other.to_tensor()
        return LieElement.from_tensor(a * b - b * a)

    def items_sorted(self):
        ws = self.alphabet.weights
        return sorted(self.terms.items(), key=lambda wc: (sum(ws[i] for i in wc[0]), wc[0]))

    def tree_str(self, word: Word) -> str:
        return tree_str(self.alphabet, lyndon_tree(word))

    def to_json(self) -> list:
        return [[self.tree_str(w), scalar_str(c)] for w, c in self.items_sorted()]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{scalar_str(c)}*{self.tree_str(w)}" for w, c in self.items_sorted())


def tree_str(alphabet: Alphabet, tree) -> str:
    if isinstance(tree, int):
        return alphabet.symbols[tree].name
    return f"(brk {tree_str(alphabet, tree[0])} {tree_str(alphabet, tree[1])})"


def normal_form_lie(alphabet: Alphabet, D: int, tree) -> LieElement:
    """Lyndon coordinates of a bracket tree (nested pairs of letter indices or names)."""
    if D <= 0:
        raise DegreeError("truncation degree must be positive")

    def ev(node) -> TensorElement:
        if isinstance(node, (int, str)):
            return TensorElement.letter(alphabet, D, node)
        a, b = ev(node[0]), ev(node[1])
        return a * b - b * a

    return LieElement.from_tensor(ev(tree))


# --- substitution -------------------------------------------------------

def substitute(lie: LieElement, images: Mapping[int, LieElement], target: Alphabet, D: int) -> LieElement:
    """Apply the Lie morphism letter -> images[letter] (missing letters go to 0)."""
    tens = {i: img.to_tensor(D) for i, img in images.items()}
    zero = TensorElement.zero(target, D)
    memo: Dict[Word, TensorElement] = {}

    def ev(word: Word) -> TensorElement:
        got = memo.get(word)
        if got is None:
            if len(word) == 1:
                got = tens.get(word[0], zero)
            else:
                u, v = standard_factorization(word)
                a, b = ev(u), ev(v)
                got = a * b - b * a
            memo[word] = got
        return got

    out = zero
    for w, c in lie.terms.items():
        out = out + ev(w).scale(c)
    return LieElement.from_tensor(out)


# --- BCH ---------------------------------------------------------------

def _dynkin_two_letter(D: int) -> List[Tuple[Fraction, Word]]:
    """Lyndon coordinates of log(e^a e^b) on letters a=0, b=1 up to D letters,
    from Dynkin's explicit formula (no tensor logarithm involved)."""
    alph = Alphabet.plain("ab")
    word_coeffs: Dict[Word, Fraction] = {}
    for k in range(1, D + 1):
        sign = Fraction((-1) ** (k - 1), k)
        # blocks (p_i, q_i) with p_i + q_i >= 1 and total length <= D
        blocks = [(p, q) for p in range(D + 1) for q in range(D + 1) if 1 <= p + q <= D]

        def rec(i: int, used: int, word: Word, denom: int):
            if i == k:
                n = len(word)
                _add_into(word_coeffs, word, sign / (n * denom))
                return
            for p, q in blocks:
                if used + p + q > D:
                    continue
                rec(i + 1, used + p + q, word + (0,) * p + (1,) * q,
                    denom * math.factorial(p) * math.factorial(q))

        rec(0, 0, (), 1)
    total = TensorElement.zero(alph, D)
    for word, c in word_coeffs.items():
        # right-nested bracket [w1,[w2,...,wn]]
        t = TensorElement.letter(alph, D, word[-1])
        for letter in reversed(word[:-1]):
            l = TensorElement.letter(alph, D, letter)
            t = l * t - t * l
        total = total + t.scale(c)
    lie = LieElement.from_tensor(total)
    return [(c, w) for w, c in lie.items_sorted()]


_BCH_CACHE: Dict[int, List[Tuple[Fraction, Word]]] = {}


def bch_coefficients(D: int) -> List[Tuple[Fraction, Word]]:
    got = _BCH_CACHE.get(D)
    if got is None:
        got = _BCH_CACHE.setdefault(D, _dynkin_two_letter(D))
    return got


V = TypeVar("V")


def lie_series_bch(x: V, y: V, bracket: Callable[[V, V], V], add: Callable[[V, V], V],
                   scale: Callable[[V, Scalar], V], D: int) -> V:
    """bch(x, y) in any Lie algebra whose elements have weight >= 1 and are
    truncated at D: evaluates the universal Lyndon expansion."""
    memo: Dict[Word, V] = {(0,): x, (1,): y}

    def ev(word: Word) -> V:
        got = memo.get(word)
        if got is None:
            u, v = standard_factorization(word)
            got = bracket(ev(u), ev(v))
            memo[word] = got
        return got

    out = None
    for c, w in bch_coefficients(D):
        term = scale(ev(w), c)
        out = term if out is None else add(out, term)
    return out


def bch(args: Sequence[LieElement]) -> LieElement:
    if not args:
        raise ValueError("bch needs at least one argument")
    out = args[0]
    for nxt in args[1:]:
        out.alphabet.check_same(nxt.alphabet)
        out = lie_series_bch(out, nxt, lambda a, b: a.bracket(b), lambda a, b: a + b,
                             lambda a, c: a.scale(c), out.D)
    return out


def bch_tensor(args: Sequence[TensorElement]) -> TensorElement:
    """log(exp(a1) ... exp(ak)) in the tensor algebra."""
    prod = TensorElement.one(args[0].alphabet, args[0].D)
    for a in args:
        prod = prod * a.exp()
    return prod.log()


def witt_dimensions(weights: Sequence[int], D: int) -> List[int]:
    """Free Lie algebra dimensions by weight, from the Chen-Fox-Lyndon
    factorisation: prod_l (1 - q^wt(l))^(-1) = 1 / (1 - sum_i q^w_i)."""
    words = [1] + [0] * D
    for n in range(1, D + 1):
        words[n] = sum(words[n - w] for w in weights if w <= n)
    dims = [0] * (D + 1)
    for n in range(1, D + 1):
        # coefficient of q^n in prod_{d<n} (1 - q^d)^(-dims[d])
        poly = [1] + [0] * n
        for d in range(1, n):
            m = dims[d]
            if not m:
                continue
            factor = [0] * (n + 1)
            j = 0
            while d * j <= n:
                factor[d * j] = math.comb(m + j - 1, j)
                j += 1
            poly = [sum(poly[a] * factor[b - a] for a in range(b + 1)) for b in range(n + 1)]
        dims[n] = words[n] - poly[n]
    return dims[1:]
