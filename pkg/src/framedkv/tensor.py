"""Truncated tensor algebra T(H) over a weighted alphabet, with its Hopf
structure (letters primitive) and exp/log."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .alphabet import Alphabet, Word
from .errors import ConstantTermError, DegreeError
from .scalars import ONE, ZERO, Scalar, scalar_str

Terms = Dict[Word, Scalar]


def _add_into(acc: Dict, key, c) -> None:
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


class TensorElement:
    """Immutable element of T(H) truncated at weight D."""

    __slots__ = ("alphabet", "D", "terms")

    def __init__(self, alphabet: Alphabet, D: int, terms: Optional[Mapping[Word, Scalar]] = None,
                 _trusted: bool = False):
        if D < 0:
            raise DegreeError("truncation degree must be nonnegative")
        self.alphabet = alphabet
        self.D = D
        if _trusted:
            self.terms = terms  # type: ignore[assignment]
        else:
            ws = alphabet.weights
            self.terms = {w: c for w, c in (terms or {}).items()
                          if c and sum(ws[i] for i in w) <= D}

    # --- constructors --------------------------------------------------
    @classmethod
    def zero(cls, alphabet: Alphabet, D: int) -> "TensorElement":
        return cls(alphabet, D, {}, _trusted=True)

    @classmethod
    def one(cls, alphabet: Alphabet, D: int, c: Scalar = ONE) -> "TensorElement":
        return cls(alphabet, D, {(): c} if c else {}, _trusted=True)

    @classmethod
    def letter(cls, alphabet: Alphabet, D: int, name, c: Scalar = ONE) -> "TensorElement":
        i = alphabet.index(name) if isinstance(name, str) else name
        return cls(alphabet, D, {(i,): c})

    @classmethod
    def word(cls, alphabet: Alphabet, D: int, word: Word, c: Scalar = ONE) -> "TensorElement":
        return cls(alphabet, D, {tuple(word): c})

    def _new(self, terms: Terms) -> "TensorElement":
        return TensorElement(self.alphabet, self.D, terms, _trusted=True)

    def _check(self, other: "TensorElement") -> None:
        self.alphabet.check_same(other.alphabet)
        if other.D != self.D:
            raise DegreeError(f"truncation mismatch {self.D} vs {other.D}")

    # --- linear structure ---------------------------------------------
    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(t, w, c)
        return self._new(t)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __neg__(self) -> "TensorElement":
        return self._new({w: -c for w, c in self.terms.items()})

    def scale(self, c: Scalar) -> "TensorElement":
        if not c:
            return self.zero(self.alphabet, self.D)
        return self._new({w: v * c for w, v in self.terms.items() if v * c})

    def __rmul__(self, c) -> "TensorElement":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.alphabet.symbols == other.alphabet.symbols and self.D == other.D \
            and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> Scalar:
        return self.terms.get(tuple(word), ZERO)

    def epsilon(self) -> Scalar:
        return self.terms.get((), ZERO)

    def without_constant(self) -> "TensorElement":
        return self._new({w: c for w, c in self.terms.items() if w})

    def weight_part(self, d: int) -> "TensorElement":
        ws = self.alphabet.weights
        return self._new({w: c for w, c in self.terms.items() if sum(ws[i] for i in w) == d})

    def min_weight(self) -> Optional[int]:
        ws = self.alphabet.weights
        return min((sum(ws[i] for i in w) for w in self.terms), default=None)

    def truncate(self, D: int) -> "TensorElement":
        return TensorElement(self.alphabet, D, self.terms)

    def map_coefficients(self, f: Callable[[Scalar], Scalar]) -> "TensorElement":
        return TensorElement(self.alphabet, self.D, {w: f(c) for w, c in self.terms.items()})

    # --- product ----------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._check(other)
        ws = self.alphabet.weights
        D = self.D
        right = [(w, c, sum(ws[i] for i in w)) for w, c in other.terms.items()]
        right.sort(key=lambda t: t[2])
        out: Terms = {}
        for w1, c1 in self.terms.items():
            room = D - sum(ws[i] for i in w1)
            for w2, c2, wt2 in right:
                if wt2 > room:
                    break
                _add_into(out, w1 + w2, c1 * c2)
        return self._new(out)

    def bracket(self, other: "TensorElement") -> "TensorElement":
        return self * other - other * self

    def power(self, k: int) -> "TensorElement":
        out = self.one(self.alphabet, self.D)
        for _ in range(k):
            out = out * self
        return out

    # --- Hopf structure ----------------------------------------------
    def antipode(self) -> "TensorElement":
        return self._new({w[::-1]: (-c if len(w) % 2 else c) for w, c in self.terms.items()})

    def coproduct(self) -> "PairTensor":
        out: Dict[Tuple[Word, Word], Scalar] = {}
        for w, c in self.terms.items():
            n = len(w)
            for mask in range(1 << n):
                left = tuple(w[i] for i in range(n) if mask >> i & 1)
                right = tuple(w[i] for i in range(n) if not mask >> i & 1)
                _add_into(out, (left, right), c)
        return PairTensor(self.alphabet, self.D, out, _trusted=True)

    def exp(self) -> "TensorElement":
        if self.epsilon():
            raise ConstantTermError("exp needs a zero constant term")
        out = self.one(self.alphabet, self.D)
        term = out
        for k in range(1, self.D + 1):
            term = (term * self).scale(Fraction(1, k))
            if not term:
                break
            out = out + term
        return out

    def log(self) -> "TensorElement":
        if self.epsilon() != 1:
            raise ConstantTermError("log needs constant term 1")
        x = self.without_constant()
        out = self.zero(self.alphabet, self.D)
        power = self.one(self.alphabet, self.D)
        for k in range(1, self.D + 1):
            power = power * x
            if not power:
                break
            out = out + power.scale(Fraction((-1) ** (k + 1), k))
        return out

    def inverse(self) -> "TensorElement":
        """Inverse of an element with constant term 1 (geometric series)."""
        if self.epsilon() != 1:
            raise ConstantTermError("inverse needs constant term 1")
        x = -self.without_constant()
        out = self.one(self.alphabet, self.D)
        power = out
        for _ in range(self.D):
            power = power * x
            if not power:
                break
            out = out + power
        return out

    def is_grouplike(self) -> bool:
        return self.epsilon() == 1 and self.coproduct() == PairTensor.outer(self, self)

    def is_primitive(self) -> bool:
        one = self.one(self.alphabet, self.D)
        return self.coproduct() == PairTensor.outer(self, one) + PairTensor.outer(one, self)

    # --- display ----------------------------------------------------
    def items_sorted(self) -> Iterator[Tuple[Word, Scalar]]:
        ws = self.alphabet.weights
        return iter(sorted(self.terms.items(), key=lambda wc: (sum(ws[i] for i in wc[0]), wc[0])))

    def to_json(self) -> list:
        return [[self.alphabet.word_str(w), scalar_str(c)] for w, c in self.items_sorted()]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{scalar_str(c)}*({self.alphabet.word_str(w)})" for w, c in self.items_sorted())


class PairTensor:
    """Element of T(H)⊗T(H), truncated at joint weight D."""

    __slots__ = ("alphabet", "D", "terms")

    def __init__(self, alphabet: Alphabet, D: int, terms: Optional[Mapping] = None, _trusted: bool = False):
        self.alphabet = alphabet
        self.D = D
        if _trusted:
            self.terms = terms
        else:
            ws = alphabet.weights
            self.terms = {k: c for k, c in (terms or {}).items()
                          if c and sum(ws[i] for i in k[0]) + sum(ws[i] for i in k[1]) <= D}

    @classmethod
    def outer(cls, a: TensorElement, b: TensorElement) -> "PairTensor":
        a._check(b)
        ws = a.alphabet.weights
        out = {}
        for w1, c1 in a.terms.items():
            r = a.D - sum(ws[i] for i in w1)
            for w2, c2 in b.terms.items():
                if sum(ws[i] for i in w2) <= r:
                    _add_into(out, (w1, w2), c1 * c2)
        return cls(a.alphabet, a.D, out, _trusted=True)

    def __add__(self, other: "PairTensor") -> "PairTensor":
        t = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(t, k, c)
        return PairTensor(self.alphabet, self.D, t, _trusted=True)

    def __sub__(self, other: "PairTensor") -> "PairTensor":
        return self + other.scale(-1)

    def __neg__(self) -> "PairTensor":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "PairTensor":
        return PairTensor(self.alphabet, self.D, {k: v * c for k, v in self.terms.items() if v * c},
                          _trusted=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, PairTensor) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def map_left(self, f: Callable[[Word], Iterable[Tuple[Word, Scalar]]]) -> "PairTensor":
        out = {}
        for (l, r), c in self.terms.items():
            for l2, c2 in f(l):
                _add_into(out, (l2, r), c * c2)
        return PairTensor(self.alphabet, self.D, out)

    def truncate(self, D: int) -> "PairTensor":
        return PairTensor(self.alphabet, D, self.terms)

    def swap(self) -> "PairTensor":
        return PairTensor(self.alphabet, self.D, {(r, l): c for (l, r), c in self.terms.items()},
                          _trusted=True)

    def mul(self, other: "PairTensor") -> "PairTensor":
        """Componentwise product in T⊗T."""
        ws = self.alphabet.weights
        out = {}
        for (a1, a2), c1 in self.terms.items():
            wa = sum(ws[i] for i in a1) + sum(ws[i] for i in a2)
            for (b1, b2), c2 in other.terms.items():
                if wa + sum(ws[i] for i in b1) + sum(ws[i] for i in b2) <= self.D:
                    _add_into(out, (a1 + b1, a2 + b2), c1 * c2)
        return PairTensor(self.alphabet, self.D, out, _trusted=True)

    def multiply_out(self) -> TensorElement:
        out: Terms = {}
        for (l, r), c in self.terms.items():
            _add_into(out, l + r, c)
        return TensorElement(self.alphabet, self.D, out)

    def to_json(self) -> list:
        a = self.alphabet
        return [[a.word_str(l), a.word_str(r), scalar_str(c)] for (l, r), c in sorted(self.terms.items())]


def words_up_to(alphabet: Alphabet, D: int) -> Iterator[Word]:
    for d in range(D + 1):
        yield from alphabet.words_of_weight(d)


def shuffle_coproduct_word(word: Word) -> Iterator[Tuple[Word, Word]]:
    n = len(word)
    for mask in range(1 << n):
        yield (tuple(word[i] for i in range(n) if mask >> i & 1),
               tuple(word[i] for i in range(n) if not mask >> i & 1))


