"""Error types shared by every layer; ``kind`` is what the CLI reports."""
from __future__ import annotations


class KernelError(Exception):
    kind = "error"


class UnknownSymbolError(KernelError):
    kind = "unknown_symbol"


class AlphabetMismatchError(KernelError):
    kind = "alphabet_mismatch"


class DegreeError(KernelError):
    kind = "degree"


class ConstantTermError(KernelError):
    kind = "constant_term"


class InvariantError(KernelError):
    kind = "invariant"


class NotLieError(KernelError):
    kind = "not_lie"


class ExprSyntaxError(KernelError):
    kind = "syntax"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
