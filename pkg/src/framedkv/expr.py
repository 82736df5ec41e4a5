"""S-expression syntax for elements.

    element := scalar | gen | (+ e e ...) | (smul scalar e) | (brk e e)
             | (mul e e ...) | (exp e) | (log e) | (bch e e ...)
    gen     := x[i,a] | y[i,a] | t[i,j] | z[j] | c[]
    scalar  := integer | int/int | ?name
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple, Union

from .alphabet import Alphabet
from .errors import ExprSyntaxError
from .lie import LieElement, bch, lyndon_tree
from .scalars import Poly, Scalar, scalar_str
from .tensor import TensorElement

HEADS = {"+": (1, None), "smul": (2, 2), "brk": (2, 2), "mul": (1, None),
         "exp": (1, 1), "log": (1, 1), "bch": (1, None)}
_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")
_VAR = re.compile(r"\?[A-Za-z_][\w\[\],.]*")
_GEN = re.compile(r"[xytz]\[[^\[\]()\s]*\]|c\[\]")


@dataclass(frozen=True)
class Num:
    value: Scalar
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Gen:
    name: str
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Op:
    head: str
    args: Tuple["Node", ...]
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


Node = Union[Num, Gen, Op]


def _tokens(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == ";":  # comment to end of line
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "()":
            yield ch, (line, col)
            i, col = i + 1, col + 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in "();":
            j += 1
        yield text[i:j], (line, col)
        col += j - i
        i = j


def _atom(tok: str, pos) -> Node:
    if _RATIONAL.fullmatch(tok):
        return Num(Fraction(tok), pos)
    if _VAR.fullmatch(tok):
        return Num(Poly.var(tok[1:]), pos)
    if _GEN.fullmatch(tok):
        return Gen(tok, pos)
    raise ExprSyntaxError(f"unrecognised token {tok!r}", *pos)


def parse_expr(text: str) -> Node:
    toks = list(_tokens(text))
    if not toks:
        raise ExprSyntaxError("empty expression", 1, 1)
    node, k = _parse(toks, 0)
    if k != len(toks):
        raise ExprSyntaxError(f"unexpected trailing token {toks[k][0]!r}", *toks[k][1])
    return node


def _parse(toks: List, k: int) -> Tuple[Node, int]:
    tok, pos = toks[k]
    if tok == ")":
        raise ExprSyntaxError("unexpected ')'", *pos)
    if tok != "(":
        return _atom(tok, pos), k + 1
    if k + 1 >= len(toks):
        raise ExprSyntaxError("unterminated '('", *pos)
    head, hpos = toks[k + 1]
    if head not in HEADS:
        raise ExprSyntaxError(f"unknown operator {head!r}", *hpos)
    args = []
    k += 2
    while True:
        if k >= len(toks):
            raise ExprSyntaxError("unterminated '('", *pos)
        if toks[k][0] == ")":
            break
        node, k = _parse(toks, k)
        args.append(node)
    lo, hi = HEADS[head]
    if len(args) < lo or (hi is not None and len(args) > hi):
        raise ExprSyntaxError(f"operator {head!r} got {len(args)} arguments", *pos)
    if head == "smul" and not isinstance(args[0], Num):
        raise ExprSyntaxError("smul needs a scalar as first argument", *args[0].pos)
    return Op(head, tuple(args), pos), k + 1


def to_text(node: Node) -> str:
    if isinstance(node, Num):
        v = node.value
        return "?" + str(v) if isinstance(v, Poly) else scalar_str(v)
    if isinstance(node, Gen):
        return node.name
    return "(" + " ".join([node.head] + [to_text(a) for a in node.args]) + ")"


def evaluate(node: Node, alphabet: Alphabet, D: int) -> TensorElement:
    if isinstance(node, Num):
        return TensorElement.one(alphabet, D, node.value)
    if isinstance(node, Gen):
        return TensorElement.letter(alphabet, D, alphabet.index(node.name))
    h, args = node.head, node.args
    if h == "smul":
        return evaluate(args[1], alphabet, D).scale(args[0].value)
    vals = [evaluate(a, alphabet, D) for a in args]
    if h == "+":
        out = vals[0]
        for v in vals[1:]:
            out = out + v
        return out
    if h == "mul":
        out = vals[0]
        for v in vals[1:]:
            out = out * v
        return out
    if h == "brk":
        return vals[0].bracket(vals[1])
    if h == "exp":
        return vals[0].exp()
    if h == "log":
        return vals[0].log()
    return bch([LieElement.from_tensor(v) for v in vals]).to_tensor()


def parse_element(text: str, alphabet: Alphabet, D: int) -> TensorElement:
    return evaluate(parse_expr(text), alphabet, D)


def parse_lie(text: str, alphabet: Alphabet, D: int) -> LieElement:
    return LieElement.from_tensor(parse_element(text, alphabet, D))


def lie_to_text(lie: LieElement) -> str:
    """Expression text of a Lie element in its Lyndon normal form."""
    names = lie.alphabet.symbols

    def tree(t) -> str:
        if isinstance(t, int):
            return names[t].name
        return f"(brk {tree(t[0])} {tree(t[1])})"

    parts = []
    for w, c in lie.items_sorted():
        body = tree(lyndon_tree(w))
        parts.append(body if c == 1 else f"(smul {to_text(Num(c))} {body})")
    if not parts:
        return "0"
    return parts[0] if len(parts) == 1 else "(+ " + " ".join(parts) + ")"
