"""Exact arithmetic over numbers of the form a + b*sqrt(2) with rational a, b.

The certificate constants used throughout the package live in this ring, so
identities such as s * beta_Q + mu = 1 can be checked exactly instead of to
floating-point roundoff.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

_SQRT2_FLOAT = math.sqrt(2.0)


class Root2:
    """Immutable element a + b*sqrt(2) of the quadratic ring Q[sqrt(2)]."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Root2 is immutable")

    @staticmethod
    def _coerce(other: object) -> "Root2":
        if isinstance(other, Root2):
            return other
        if isinstance(other, (int, Fraction)):
            return Root2(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Root2":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Root2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Root2":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Root2(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: object) -> "Root2":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Root2(other.a - self.a, other.b - self.b)

    def __mul__(self, other: object) -> "Root2":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Root2(self.a * other.a + 2 * self.b * other.b,
                     self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Root2":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        norm = other.a * other.a - 2 * other.b * other.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q[sqrt(2)]")
        conjugate = Root2(other.a, -other.b)
        product = self * conjugate
        return Root2(product.a / norm, product.b / norm)

    def __rtruediv__(self, other: object) -> "Root2":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self) -> "Root2":
        return Root2(-self.a, -self.b)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Root2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * _SQRT2_FLOAT

    def __repr__(self) -> str:
        return f"Root2({self.a!r}, {self.b!r})"


SQRT2 = Root2(0, 1)
