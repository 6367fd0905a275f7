"""Exact arithmetic in the quadratic extension with sqrt(2)."""

from __future__ import annotations

import random
from fractions import Fraction

from imalg.scalars import ONE, SQRT2, ZERO, QSqrt2


def test_basic_values():
    assert not ZERO
    assert ONE
    assert SQRT2 * SQRT2 == QSqrt2.of(2)
    assert QSqrt2.of(3) + SQRT2 == QSqrt2(Fraction(3), Fraction(1))


def test_multiplication_rule():
    # (a+b√2)(c+d√2) = (ac+2bd) + (ad+bc)√2
    x = QSqrt2(Fraction(2), Fraction(3))
    y = QSqrt2(Fraction(-1), Fraction(5))
    prod = x * y
    assert prod.a == Fraction(2 * -1 + 2 * 3 * 5)
    assert prod.b == Fraction(2 * 5 + 3 * -1)


def test_inverse_and_division():
    x = QSqrt2(Fraction(3), Fraction(-2))
    assert x * x.inverse() == ONE
    assert (x / x) == ONE
    assert SQRT2.inverse() * SQRT2 == ONE


def test_inverse_of_zero_raises():
    import pytest

    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_field_laws_random():
    rng = random.Random(20240817)
    for _ in range(200):
        xs = [QSqrt2(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                     Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
              for _ in range(3)]
        x, y, z = xs
        assert (x + y) * z == x * z + y * z
        assert (x * y) * z == x * (y * z)
        assert x + y == y + x
        assert x * y == y * x
        if x:
            assert x * x.inverse() == ONE


def test_rendering():
    assert str(QSqrt2(Fraction(1), Fraction(2))) == "1+2√2"
    assert str(QSqrt2(Fraction(1), Fraction(-2))) == "1-2√2"
    assert str(QSqrt2(Fraction(0), Fraction(1))) == "1√2"
    assert str(ZERO) == "0"
