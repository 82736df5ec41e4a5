"""The trace space |T(H)| = T(H)/[T(H), T(H)], with necklace coordinates."""
from __future__ import annotations

from typing import Callable, Dict, Mapping, Optional, Tuple

from .alphabet import Alphabet, Word, necklace
from .scalars import Scalar, scalar_str
from .tensor import PairTensor, TensorElement, _add_into


class CyclicElement:
    __slots__ = ("alphabet", "D", "terms")

    def __init__(self, alphabet: Alphabet, D: int, terms: Optional[Mapping[Word, Scalar]] = None):
        self.alphabet = alphabet
        self.D = D
        t: Dict[Word, Scalar] = {}
        for w, c in (terms or {}).items():
            _add_into(t, necklace(tuple(w)), c)
        self.terms = t

    @classmethod
    def zero(cls, alphabet: Alphabet, D: int) -> "CyclicElement":
        return cls(alphabet, D)

    def __add__(self, other: "CyclicElement") -> "CyclicElement":
        """Sum, valid up to the smaller of the two truncation degrees."""
        self.alphabet.check_same(other.alphabet)
        D = min(self.D, other.D)
        t = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(t, w, c)
        out = CyclicElement(self.alphabet, D)
        out.terms = t
        return out.truncate(D) if D < max(self.D, other.D) else out

    def truncate(self, D: int) -> "CyclicElement":
        out = CyclicElement(self.alphabet, D)
        a = self.alphabet
        out.terms = {w: c for w, c in self.terms.items() if a.weight(w) <= D}
        return out

    def __neg__(self) -> "CyclicElement":
        return self.scale(-1)

    def __sub__(self, other: "CyclicElement") -> "CyclicElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "CyclicElement":
        out = CyclicElement(self.alphabet, self.D)
        out.terms = {w: v * c for w, v in self.terms.items() if v * c}
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicElement) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def weight_part(self, d: int) -> "CyclicElement":
        return CyclicElement(self.alphabet, self.D,
                             {w: c for w, c in self.terms.items() if self.alphabet.weight(w) == d})

    def act(self, derivation: Callable[[TensorElement], TensorElement]) -> "CyclicElement":
        """Image under a derivation of T(H): |w| -> |u(w)|."""
        total = TensorElement.zero(self.alphabet, self.D)
        for w, c in self.terms.items():
            total = total + derivation(TensorElement.word(self.alphabet, self.D, w)).scale(c)
        return trace_project(total)

    def items_sorted(self):
        a = self.alphabet
        return sorted(self.terms.items(), key=lambda wc: (a.weight(wc[0]), wc[0]))

    def to_json(self) -> list:
        return [[self.alphabet.word_str(w), scalar_str(c)] for w, c in self.items_sorted()]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{scalar_str(c)}*|{self.alphabet.word_str(w)}|" for w, c in self.items_sorted())


def trace_project(a: TensorElement) -> CyclicElement:
    return CyclicElement(a.alphabet, a.D, a.terms)


class CyclicPair:
    """Element of |T(H)| ⊗ |T(H)|."""

    __slots__ = ("alphabet", "D", "terms")

    def __init__(self, alphabet: Alphabet, D: int, terms: Optional[Mapping[Tuple[Word, Word], Scalar]] = None):
        self.alphabet = alphabet
        self.D = D
        t: Dict[Tuple[Word, Word], Scalar] = {}
        for (l, r), c in (terms or {}).items():
            _add_into(t, (necklace(l), necklace(r)), c)
        self.terms = t

    @classmethod
    def project(cls, p: PairTensor) -> "CyclicPair":
        return cls(p.alphabet, p.D, p.terms)

    def __add__(self, other: "CyclicPair") -> "CyclicPair":
        t = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(t, k, c)
        out = CyclicPair(self.alphabet, self.D)
        out.terms = t
        return out

    def __sub__(self, other: "CyclicPair") -> "CyclicPair":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "CyclicPair":
        out = CyclicPair(self.alphabet, self.D)
        out.terms = {k: v * c for k, v in self.terms.items() if v * c}
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicPair) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_json(self) -> list:
        a = self.alphabet
        return [[a.word_str(l), a.word_str(r), scalar_str(c)] for (l, r), c in sorted(self.terms.items())]
