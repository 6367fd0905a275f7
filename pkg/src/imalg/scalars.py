"""Exact scalars of the form a + b*sqrt(2) with rational a, b."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class QSqrt2:
    """An element a + b*sqrt(2) of the real quadratic field Q(sqrt(2)).

    Both components are `Fraction`s, so every operation is exact and
    equality is decidable.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "QSqrt2":
        if isinstance(value, QSqrt2):
            return value
        return QSqrt2(Fraction(value), Fraction(0))

    @staticmethod
    def sqrt2() -> "QSqrt2":
        return QSqrt2(Fraction(0), Fraction(1))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __add__(self, other) -> "QSqrt2":
        other = QSqrt2.of(other)
        return QSqrt2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QSqrt2":
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, other) -> "QSqrt2":
        return self + (-QSqrt2.of(other))

    def __rsub__(self, other) -> "QSqrt2":
        return QSqrt2.of(other) + (-self)

    def __mul__(self, other) -> "QSqrt2":
        other = QSqrt2.of(other)
        return QSqrt2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt2":
        # (a + b√2)(a - b√2) = a² - 2b², nonzero for nonzero elements
        # because √2 is irrational.
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        return QSqrt2(self.a / norm, -self.b / norm)

    def __truediv__(self, other) -> "QSqrt2":
        return self * QSqrt2.of(other).inverse()

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}√2"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}√2"

    def __repr__(self) -> str:
        return f"QSqrt2({self.a!r}, {self.b!r})"


ZERO = QSqrt2()
ONE = QSqrt2(Fraction(1))
SQRT2 = QSqrt2.sqrt2()
