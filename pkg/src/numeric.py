"""
Backends numéricos: racionais exatos ou ponto flutuante

O modo exato usa fractions.Fraction em arrays numpy de dtype object, o que
permite ao simplex e às probabilidades compartilharem o mesmo código.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

import numpy as np

from .config import DEFAULT_ENGINE

Number = Union[Fraction, float]


def to_fraction(value) -> Fraction:
    """Converte texto, inteiro, float ou racional em Fraction exata"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (Rational, int)):
        return Fraction(value)
    if isinstance(value, float):
        # 0.7 deve virar 7/10, não a expansão binária
        return Fraction(repr(value))
    text = str(value).strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num.strip()), int(den.strip()))
    return Fraction(text)


@dataclass(frozen=True)
class NumericBackend:
    """Aritmética usada por uma execução"""
    name: str
    exact: bool
    tolerance: Number

    def number(self, value) -> Number:
        if self.exact:
            return to_fraction(value)
        return float(value)

    @property
    def zero(self) -> Number:
        return Fraction(0) if self.exact else 0.0

    @property
    def one(self) -> Number:
        return Fraction(1) if self.exact else 1.0

    @property
    def dtype(self):
        return object if self.exact else np.float64

    def array(self, values: Iterable) -> np.ndarray:
        return np.array([self.number(v) for v in values], dtype=self.dtype)

    def zeros(self, shape) -> np.ndarray:
        if self.exact:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=np.float64)

    def is_zero(self, value) -> bool:
        return abs(value) <= self.tolerance

    def is_positive(self, value) -> bool:
        return value > self.tolerance

    def close(self, left, right, tolerance=None) -> bool:
        tol = self.tolerance if tolerance is None else tolerance
        return abs(left - right) <= tol

    def total(self, values) -> Number:
        acc = self.zero
        for v in values:
            acc += v
        return acc

    def display(self, value) -> str:
        if value is None:
            return "-"
        if self.exact:
            return str(to_fraction(value))
        return f"{float(value):.10g}"


EXACT = NumericBackend("exact", True, Fraction(0))
FLOAT = NumericBackend("float", False, DEFAULT_ENGINE.float_tolerance)


def get_backend(exact: bool) -> NumericBackend:
    """Seleciona o backend da execução"""
    return EXACT if exact else FLOAT
