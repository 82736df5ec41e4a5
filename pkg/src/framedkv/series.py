"""One-variable rational power series and their substitution into T(H)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import ConstantTermError
from .scalars import scalar_str
from .tensor import TensorElement


@dataclass(frozen=True)
class ScalarSeries:
    name: str
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def to_json(self) -> dict:
        return {"name": self.name, "coefficients": [scalar_str(c) for c in self.coeffs]}


def bernoulli_numbers(n: int) -> List[Fraction]:
    """B_0..B_n with B_1 = -1/2 (the convention of t/(e^t - 1))."""
    B = [Fraction(0)] * (n + 1)
    B[0] = Fraction(1)
    for m in range(1, n + 1):
        B[m] = -sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1)
    return B


def s_series(D: int) -> ScalarSeries:
    """s(w) = e^w/(1-e^w) + 1/w with its pole removed.

    e^w/(1-e^w) = -1 - 1/(e^w - 1) and w/(e^w-1) = sum B_k w^k/k!, so
    s(w) = -1 - sum_{k>=1} B_k w^(k-1)/k!.
    """
    B = bernoulli_numbers(D + 1)
    coeffs = [-1 - B[1]] + [-B[k + 1] / math.factorial(k + 1) for k in range(1, D + 1)]
    return ScalarSeries("s", tuple(coeffs))


def exp_series(D: int) -> List[Fraction]:
    return [Fraction(1, math.factorial(k)) for k in range(D + 1)]


def r_series(D: int) -> ScalarSeries:
    """r(s) = log((e^s - 1)/s), by series division and the log series."""
    # (e^s - 1)/s = sum s^k/(k+1)!
    f = [Fraction(1, math.factorial(k + 1)) for k in range(D + 1)]
    u = [Fraction(0)] + f[1:]  # f - 1
    out = [Fraction(0)] * (D + 1)
    power = [Fraction(1)] + [Fraction(0)] * D
    for k in range(1, D + 1):
        power = [sum(power[i] * u[j - i] for i in range(j + 1)) for j in range(D + 1)]
        for j in range(D + 1):
            out[j] += Fraction((-1) ** (k + 1), k) * power[j]
    return ScalarSeries("r", tuple(out))


def named_series(name: str, D: int) -> ScalarSeries:
    if name == "s":
        return s_series(D)
    if name == "r":
        return r_series(D)
    if name == "exp":
        return ScalarSeries("exp", tuple(exp_series(D)))
    raise ValueError(f"unknown series {name!r}")


def series_substitute(f: ScalarSeries, ell: TensorElement) -> TensorElement:
    """sum_k c_k ell^k truncated at ell's degree."""
    if ell.epsilon():
        raise ConstantTermError("series substitution needs a zero constant term")
    out = TensorElement.one(ell.alphabet, ell.D, f[0])
    power = TensorElement.one(ell.alphabet, ell.D)
    for k in range(1, ell.D + 1):
        power = power * ell
        if not power:
            break
        if f[k]:
            out = out + power.scale(f[k])
    return out
