"""Exact numbers of the form q*sqrt(r) and their complex pairs.

Weyl-normalized structure constants pick up square roots of rationals.
Every quantity the engine adds is either rational or shares a single
radicand, so addition across different radicands is treated as an
internal-consistency failure instead of being silently promoted.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction]


class RadicandMismatch(ArithmeticError):
    """Raised when two surds with different radicands are added."""


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, r)`` with ``n == k*k*r`` and ``r`` squarefree."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    k, r = 1, 1
    m = n
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        if m % p == 0:
            m //= p
            r *= p
        p += 1
    return k, r * m


class SignSqrt:
    """The exact real number ``q * sqrt(r)`` with ``r`` a squarefree positive integer.

    Zero is stored uniquely as ``(0, 1)``.
    """

    __slots__ = ("_q", "_r")

    def __init__(self, q: Scalar = 0, r: int = 1):
        q = Fraction(q)
        if isinstance(r, Fraction):
            if r.denominator != 1:
                raise ValueError("use SignSqrt.sqrt for rational radicands")
            r = r.numerator
        if r <= 0:
            raise ValueError(f"radicand must be positive, got {r}")
        if q == 0:
            self._q, self._r = Fraction(0), 1
            return
        k, rr = squarefree_split(int(r))
        self._q, self._r = q * k, rr

    @classmethod
    def sqrt(cls, x: Scalar, sign: int = 1) -> "SignSqrt":
        """``sign * sqrt(x)`` for a non-negative rational ``x``."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        if x == 0:
            return cls()
        a, b = x.numerator, x.denominator
        return cls(Fraction(1 if sign >= 0 else -1, b), a * b)

    @classmethod
    def coerce(cls, x: "SignSqrt | Scalar") -> "SignSqrt":
        if isinstance(x, SignSqrt):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return cls(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to SignSqrt")

    @property
    def q(self) -> Fraction:
        return self._q

    @property
    def r(self) -> int:
        return self._r

    def is_zero(self) -> bool:
        return self._q == 0

    def is_rational(self) -> bool:
        return self._r == 1 or self._q == 0

    def sign(self) -> int:
        return (self._q > 0) - (self._q < 0)

    def square(self) -> Fraction:
        return self._q * self._q * self._r

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is irrational")
        return self._q

    def __bool__(self) -> bool:
        return self._q != 0

    def __neg__(self) -> "SignSqrt":
        out = object.__new__(SignSqrt)
        out._q, out._r = -self._q, self._r
        return out

    def __pos__(self) -> "SignSqrt":
        return self

    def __add__(self, other: "SignSqrt | Scalar") -> "SignSqrt":
        try:
            other = SignSqrt.coerce(other)
        except TypeError:
            return NotImplemented
        if other._q == 0:
            return self
        if self._q == 0:
            return other
        if self._r != other._r:
            raise RadicandMismatch(f"cannot add {self!r} and {other!r}")
        out = object.__new__(SignSqrt)
        out._q = self._q + other._q
        out._r = self._r if out._q != 0 else 1
        return out

    __radd__ = __add__

    def __sub__(self, other: "SignSqrt | Scalar") -> "SignSqrt":
        try:
            other = SignSqrt.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "SignSqrt":
        return SignSqrt.coerce(other) - self

    def __mul__(self, other: "SignSqrt | Scalar") -> "SignSqrt":
        if isinstance(other, SignSqrt):
            if self._q == 0 or other._q == 0:
                return SignSqrt()
            g = gcd(self._r, other._r)
            out = object.__new__(SignSqrt)
            out._q = self._q * other._q * g
            out._r = (self._r // g) * (other._r // g)
            return out
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return SignSqrt()
            out = object.__new__(SignSqrt)
            out._q, out._r = self._q * other, self._r
            return out
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "SignSqrt":
        if self._q == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return SignSqrt(1 / (self._q * self._r), self._r)

    def __truediv__(self, other: "SignSqrt | Scalar") -> "SignSqrt":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, SignSqrt):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SignSqrt):
            return self._q == other._q and self._r == other._r
        if isinstance(other, (int, Fraction)):
            return self._r == 1 and self._q == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._r == 1:
            return hash(self._q)
        return hash((self._q, self._r))

    def __float__(self) -> float:
        return float(self._q) * self._r ** 0.5

    def __repr__(self) -> str:
        if self._r == 1:
            return f"SignSqrt({self._q})"
        return f"SignSqrt({self._q}, {self._r})"

    def __str__(self) -> str:
        if self._r == 1:
            return str(self._q)
        return f"{self._q}*sqrt({self._r})"

    def to_json(self) -> dict:
        a = abs(self._q)
        return {
            "sign": self.sign(),
            "numerator": a.numerator,
            "denominator": a.denominator,
            "radicand": self._r,
        }


ZERO = SignSqrt()
ONE = SignSqrt(1)


class ComplexSqrt:
    """``re + i*im`` with both parts :class:`SignSqrt`.

    Values handled by the engine are purely real or purely imaginary, so the
    products below never need to add parts with different radicands.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: "SignSqrt | Scalar" = 0, im: "SignSqrt | Scalar" = 0):
        self.re = SignSqrt.coerce(re)
        self.im = SignSqrt.coerce(im)

    @classmethod
    def coerce(cls, x: "ComplexSqrt | SignSqrt | Scalar") -> "ComplexSqrt":
        if isinstance(x, ComplexSqrt):
            return x
        return cls(x)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def is_imaginary(self) -> bool:
        return self.re.is_zero()

    def conjugate(self) -> "ComplexSqrt":
        return ComplexSqrt(self.re, -self.im)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __neg__(self) -> "ComplexSqrt":
        return ComplexSqrt(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, (ComplexSqrt, SignSqrt, int, Fraction)):
            return NotImplemented
        other = ComplexSqrt.coerce(other)
        return ComplexSqrt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (ComplexSqrt, SignSqrt, int, Fraction)):
            return NotImplemented
        return self + (-ComplexSqrt.coerce(other))

    def __rsub__(self, other):
        return ComplexSqrt.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (SignSqrt, int, Fraction)):
            return ComplexSqrt(self.re * other, self.im * other)
        if isinstance(other, ComplexSqrt):
            a, b, c, d = self.re, self.im, other.re, other.im
            return ComplexSqrt(a * c - b * d, a * d + b * c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (SignSqrt, int, Fraction)):
            other = ComplexSqrt(other)
        if not isinstance(other, ComplexSqrt):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"ComplexSqrt({self.re}, {self.im})"

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}


I = ComplexSqrt(0, 1)
