"""Sparse exact row reduction over Scalar coefficients.

Rows are dicts column -> coefficient with integer columns; the pivot of a row
is its smallest column, so the column order is the pivoting order.
"""
from __future__ import annotations

import heapq
from typing import Dict, Hashable, Mapping, Optional, Sequence, Tuple

from .scalars import ONE, Scalar
from .tensor import _add_into

Vec = Dict[int, Scalar]


class Echelon:
    """Incremental semi-echelon form; ``finalize`` back-substitutes to RREF."""

    def __init__(self):
        self.rows: Dict[int, Vec] = {}
        self.final = False

    def _reduce(self, vec: Mapping[int, Scalar], combo: Optional[Dict] = None,
                combos: Optional[Dict[int, Dict]] = None) -> Vec:
        row = {k: v for k, v in vec.items() if v}
        heap = [k for k in row if k in self.rows]
        heapq.heapify(heap)
        while heap:
            col = heapq.heappop(heap)
            c = row.get(col)
            if not c:
                continue
            prow = self.rows[col]
            for k, v in prow.items():
                had = k in row
                _add_into(row, k, -c * v)
                if not had and k in self.rows and k != col:
                    heapq.heappush(heap, k)
            if combo is not None:
                for k, v in combos[col].items():
                    _add_into(combo, k, -c * v)
        return row

    def add(self, vec: Mapping[int, Scalar]) -> Optional[int]:
        """Insert a row; returns its new pivot column, or None if dependent."""
        if self.final:
            raise RuntimeError("echelon already finalized")
        row = self._reduce(vec)
        if not row:
            return None
        piv = min(row)
        inv = ONE / row[piv]
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
        self.rows[piv] = row
        return piv

    def finalize(self) -> None:
        """Fully reduce: pivot rows then involve non-pivot columns only."""
        for piv in sorted(self.rows, reverse=True):
            row = self.rows[piv]
            if any(k in self.rows and k != piv for k in row):
                new: Vec = {piv: ONE}
                for k, v in row.items():
                    if k == piv:
                        continue
                    if k in self.rows:
                        for k2, v2 in self.rows[k].items():
                            if k2 != k:
                                _add_into(new, k2, -v * v2)
                    else:
                        _add_into(new, k, v)
                self.rows[piv] = new
        self.final = True

    def normal_form(self, vec: Mapping[int, Scalar]) -> Vec:
        """Representative supported on non-pivot columns (requires finalize)."""
        out: Vec = {}
        for k, v in vec.items():
            if not v:
                continue
            prow = self.rows.get(k)
            if prow is None:
                _add_into(out, k, v)
            else:
                for k2, v2 in prow.items():
                    if k2 != k:
                        _add_into(out, k2, -v * v2)
        return out

    def rank(self) -> int:
        return len(self.rows)


class LinearSpan:
    """Span of tagged vectors over arbitrary hashable coordinates; expresses a
    target as an exact combination of the tags when possible."""

    def __init__(self):
        self._keys: Dict[Hashable, int] = {}
        self._ech = Echelon()
        self._combos: Dict[int, Dict] = {}

    def _col(self, key: Hashable) -> int:
        k = self._keys.get(key)
        if k is None:
            k = len(self._keys)
            self._keys[key] = k
        return k

    def _encode(self, vec: Mapping[Hashable, Scalar]) -> Vec:
        return {self._col(k): v for k, v in sorted(vec.items(), key=lambda kv: repr(kv[0])) if v}

    def add(self, tag: Hashable, vec: Mapping[Hashable, Scalar]) -> bool:
        combo = {tag: ONE}
        row = self._ech._reduce(self._encode(vec), combo, self._combos)
        if not row:
            return False
        piv = min(row)
        inv = ONE / row[piv]
        self._ech.rows[piv] = {k: v * inv for k, v in row.items()}
        self._combos[piv] = {k: v * inv for k, v in combo.items()}
        return True

    def express(self, target: Mapping[Hashable, Scalar]) -> Tuple[Optional[Dict], Dict]:
        """(coefficients, residual); coefficients is None when target is outside."""
        enc = self._encode(target)
        combo: Dict = {}
        rest = self._ech._reduce(enc, combo, self._combos)
        if rest:
            inv = {v: k for k, v in self._keys.items()}
            return None, {inv[k]: v for k, v in rest.items()}
        return {k: -v for k, v in combo.items()}, {}


def rank_of(rows: Sequence[Mapping[int, Scalar]]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank()

