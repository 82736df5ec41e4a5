"""Weighted alphabets and the word combinatorics built on them (Lyndon words,
standard factorisation, necklaces)."""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import AlphabetMismatchError, UnknownSymbolError

Word = Tuple[int, ...]

ROLE_WEIGHTS = {"x": 1, "y": 1, "t": 2, "z": 2, "center": 2}


@dataclass(frozen=True)
class Symbol:
    name: str
    role: str
    weight: int
    index: Tuple[str, ...] = ()


def sym_name(role: str, *index) -> str:
    if role == "center":
        return "c[]"
    return f"{role}[{','.join(str(i) for i in index)}]"


_GEN_RE = re.compile(r"^([xytzc])\[([^\]]*)\]$")


def split_name(name: str) -> Tuple[str, Tuple[str, ...]]:
    m = _GEN_RE.match(name)
    if not m:
        raise UnknownSymbolError(f"malformed generator name {name!r}")
    role = m.group(1)
    idx = tuple(p.strip() for p in m.group(2).split(",")) if m.group(2).strip() else ()
    return ("center" if role == "c" else role), idx


@dataclass(frozen=True, eq=False)
class Alphabet:
    """Ordered generator symbols; the order is the Lyndon order."""

    symbols: Tuple[Symbol, ...]
    _lookup: Dict[str, int] = field(default_factory=dict, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        for i, s in enumerate(self.symbols):
            if s.name in self._lookup:
                raise ValueError(f"duplicate symbol name {s.name}")
            if s.weight <= 0:
                raise ValueError("weights must be positive")
            self._lookup[s.name] = i

    @staticmethod
    def from_names(names: Sequence[str], weights: Optional[Dict[str, int]] = None) -> "Alphabet":
        syms = []
        for n in names:
            role, idx = split_name(n)
            w = (weights or {}).get(n, ROLE_WEIGHTS[role])
            syms.append(Symbol(n, role, w, idx))
        return Alphabet(tuple(syms))

    @staticmethod
    def plain(letters: Sequence[str], weights: Optional[Sequence[int]] = None) -> "Alphabet":
        """Alphabet of bare letters (for tests and generic BCH work)."""
        ws = weights or [1] * len(letters)
        return Alphabet(tuple(Symbol(n, "x", w) for n, w in zip(letters, ws)))

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def weights(self) -> Tuple[int, ...]:
        w = self._cache.get("weights")
        if w is None:
            w = tuple(s.weight for s in self.symbols)
            self._cache["weights"] = w
        return w

    @property
    def names(self) -> List[str]:
        return [s.name for s in self.symbols]

    def index(self, name: str) -> int:
        i = self._lookup.get(name)
        if i is None:
            i = self._lookup.get(canonical_t(name))
        if i is None:
            if name == "c[]" or name == "t[*,*]":
                for j, s in enumerate(self.symbols):
                    if s.role == "center":
                        return j
            raise UnknownSymbolError(f"unknown generator {name}")
        return i

    def __contains__(self, name: str) -> bool:
        try:
            self.index(name)
            return True
        except UnknownSymbolError:
            return False

    def weight(self, word: Word) -> int:
        ws = self.weights
        return sum(ws[i] for i in word)

    def word_str(self, word: Word) -> str:
        return " ".join(self.symbols[i].name for i in word) if word else "1"

    def check_same(self, other: "Alphabet") -> None:
        if other is not self and other.symbols != self.symbols:
            raise AlphabetMismatchError("operands live over different alphabets")

    def cached(self, key, build):
        """Idempotent per-alphabet cache (safe if two threads race on a key)."""
        val = self._cache.get(key)
        if val is None:
            val = build()
            with self._lock:
                val = self._cache.setdefault(key, val)
        return val

    # --- words --------------------------------------------------------
    def lyndon_words(self, max_weight: int) -> Dict[int, List[Word]]:
        """Lyndon words grouped by weight, each group sorted lexicographically."""
        return self.cached(("lyndon", max_weight), lambda: _lyndon_by_weight(self.weights, max_weight))

    def words_of_weight(self, d: int) -> List[Word]:
        return self.cached(("words", d), lambda: _words_of_weight(self.weights, d))


def canonical_t(name: str) -> str:
    """``t[j,i]`` and ``t[i,j]`` name the same symbol; callers fall back on this."""
    m = _GEN_RE.match(name)
    if m and m.group(1) == "t":
        parts = [p.strip() for p in m.group(2).split(",")]
        if len(parts) == 2:
            return f"t[{parts[1]},{parts[0]}]"
    return name


def _words_of_weight(weights: Sequence[int], d: int) -> List[Word]:
    table: List[List[Word]] = [[()]]
    for w in range(1, d + 1):
        cur = []
        for i, wi in enumerate(weights):
            if wi <= w:
                cur.extend((i,) + rest for rest in table[w - wi])
        table.append(cur)
    return sorted(table[d])


def _lyndon_by_weight(weights: Sequence[int], max_weight: int) -> Dict[int, List[Word]]:
    out: Dict[int, List[Word]] = {d: [] for d in range(1, max_weight + 1)}
    k = len(weights)
    if k == 0 or max_weight <= 0:
        return out
    a: List[int] = []

    # FKM prenecklace recursion; every prefix of a Lyndon word is a
    # prenecklace, so pruning on weight loses nothing
    def grow(p: int, wt: int) -> None:
        t = len(a)
        if t and p == t:
            out[wt].append(tuple(a))
        lo = a[t - p] if t else 0
        for j in range(lo, k):
            nw = wt + weights[j]
            if nw > max_weight:
                continue
            a.append(j)
            grow(p if (t and j == lo) else t + 1, nw)
            a.pop()

    grow(1, 0)
    for d in out:
        out[d].sort()
    return out


def is_lyndon(word: Word) -> bool:
    n = len(word)
    if n == 0:
        return False
    return all(word < word[i:] + word[:i] and word < word[i:] for i in range(1, n))


def standard_factorization(word: Word) -> Tuple[Word, Word]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError("letters have no standard factorisation")


def necklace(word: Word) -> Word:
    """Lexicographically minimal rotation."""
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))
