"""Exact numbers of the form ``a + b*sqrt(n)`` with rational ``a``, ``b``.

Amplitudes of the mass model are ``d / N**((t-1)/2)`` for an integer ``d``
and ``N = p**2 + q**2`` (``mu = p/q``), so every amplitude, probability and
identity in this package lives in the quadratic field Q(sqrt(N)).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["QuadraticNumber", "scaled", "as_fraction"]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings and floats to a Fraction.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot represent {value!r} exactly")
        return Fraction(repr(value))
    return Fraction(str(value))


class QuadraticNumber:
    """``rational + irrational * sqrt(radicand)``, compared exactly.

    A perfect-square radicand is folded into the rational part, which keeps
    the representation unique and makes ``==`` exact equality.
    """

    __slots__ = ("rational", "irrational", "radicand")

    def __init__(self, rational=0, irrational=0, radicand: int = 1):
        if radicand < 1:
            raise ValueError("radicand must be a positive integer")
        rational = as_fraction(rational)
        irrational = as_fraction(irrational)
        root = math.isqrt(radicand)
        if root * root == radicand:
            rational += irrational * root
            irrational = Fraction(0)
            radicand = 1
        if irrational == 0:
            radicand = 1
        self.rational = rational
        self.irrational = irrational
        self.radicand = radicand

    def _coerce(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if self.radicand != 1 and other.radicand != 1 and other.radicand != self.radicand:
                raise ValueError(
                    f"mixed radicands sqrt({self.radicand}) and sqrt({other.radicand})"
                )
            return other
        if isinstance(other, (int, Rational)):
            return QuadraticNumber(other)
        return NotImplemented

    def _common(self, other: QuadraticNumber) -> int:
        return self.radicand if self.radicand != 1 else other.radicand

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticNumber(
            self.rational + other.rational,
            self.irrational + other.irrational,
            self._common(other),
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.rational, -self.irrational, self.radicand)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self._common(other)
        a, b = self.rational, self.irrational
        c, d = other.rational, other.irrational
        return QuadraticNumber(a * c + b * d * n, a * d + b * c, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self._common(other)
        c, d = other.rational, other.irrational
        norm = c * c - d * d * n
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        return self * QuadraticNumber(c / norm, -d / norm, n)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = QuadraticNumber(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __abs__(self):
        return -self if float(self) < 0 else self

    def __eq__(self, other):
        if isinstance(other, float):
            return float(self) == other
        other = self._coerce(other) if isinstance(other, (QuadraticNumber, int, Rational)) else NotImplemented
        if other is NotImplemented:
            return NotImplemented
        if self.irrational == 0 and other.irrational == 0:
            return self.rational == other.rational
        return (
            self.radicand == other.radicand
            and self.rational == other.rational
            and self.irrational == other.irrational
        )

    def __hash__(self):
        if self.irrational == 0:
            return hash(self.rational)
        return hash((self.rational, self.irrational, self.radicand))

    def __bool__(self):
        return self.rational != 0 or self.irrational != 0

    def __float__(self):
        # Fraction -> float is correctly rounded even for huge numerators.
        return float(self.rational) + float(self.irrational) * math.sqrt(self.radicand)

    def __lt__(self, other):
        return float(self - other) < 0

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return float(self - other) > 0

    def __ge__(self, other):
        return self == other or self > other

    @property
    def is_rational(self) -> bool:
        return self.irrational == 0

    def to_fraction(self) -> Fraction:
        if self.irrational:
            raise ValueError(f"{self} is irrational")
        return self.rational

    def __repr__(self):
        return f"QuadraticNumber({self})"

    def __str__(self):
        if self.irrational == 0:
            return str(self.rational)
        surd = f"{self.irrational}*sqrt({self.radicand})"
        if self.rational == 0:
            return surd
        return f"{self.rational}+{surd}".replace("+-", "-")


def scaled(numerator, base: int, exponent: int) -> QuadraticNumber:
    """Return ``numerator / base**(exponent/2)`` exactly."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    numerator = as_fraction(numerator)
    if exponent % 2 == 0:
        return QuadraticNumber(numerator / base ** (exponent // 2))
    # N^{-e/2} = sqrt(N) / N^{(e+1)/2}
    return QuadraticNumber(0, numerator / base ** ((exponent + 1) // 2), base)
