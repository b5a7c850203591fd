"""Exact rational and Gaussian-rational arithmetic.

Rationals are :class:`fractions.Fraction`.  :class:`GaussianRational` stores
``(a + b*i) / d`` with integers and a positive common denominator, which keeps
products to a handful of integer multiplications plus one gcd.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from numbers import Rational
from typing import Union

BigRational = Fraction

Scalar = Union[int, Fraction, "GaussianRational"]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class GaussianRational:
    """Exact element of Q(i)."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = as_fraction(re)
        im = as_fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        g = gcd(gcd(a, b), d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        if d < 0:
            a, b, d = -a, -b, -d
        return _make(a, b, d)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        f = as_fraction(x)
        return cls._raw(f.numerator, 0, f.denominator)

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __neg__(self) -> "GaussianRational":
        obj = GaussianRational.__new__(GaussianRational)
        obj._a, obj._b, obj._d = -self._a, -self._b, self._d
        return obj

    def __pos__(self) -> "GaussianRational":
        return self

    def __add__(self, other) -> "GaussianRational":
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        if self._d == other._d:
            return _make(self._a + other._a, self._b + other._b, self._d)
        return _make(
            self._a * other._d + other._a * self._d,
            self._b * other._d + other._b * self._d,
            self._d * other._d,
        )

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "GaussianRational":
        return (-self) + other

    def __mul__(self, other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            a, b, d = self._a, self._b, self._d
            c, e, f = other._a, other._b, other._d
            return _make(a * c - b * e, a * e + b * c, d * f)
        if isinstance(other, int):
            return _make(self._a * other, self._b * other, self._d)
        if isinstance(other, Fraction):
            return _make(
                self._a * other.numerator, self._b * other.numerator, self._d * other.denominator
            )
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> "GaussianRational":
        obj = GaussianRational.__new__(GaussianRational)
        obj._a, obj._b, obj._d = self._a, -self._b, self._d
        return obj

    def norm2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def inverse(self) -> "GaussianRational":
        if not self:
            raise ZeroDivisionError("GaussianRational division by zero")
        # (a+bi)/d inverted is d(a-bi)/(a^2+b^2)
        n2 = self._a * self._a + self._b * self._b
        return GaussianRational._raw(self._d * self._a, -self._d * self._b, n2)

    def __truediv__(self, other) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            other = as_fraction(other)
            return GaussianRational._raw(
                self._a * other.denominator, self._b * other.denominator, self._d * other.numerator
            )
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "GaussianRational":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"GaussianRational({fraction_to_str(self.re)!r}, {fraction_to_str(self.im)!r})"

    def __str__(self) -> str:
        re, im = self.re, self.im
        if im == 0:
            return fraction_to_str(re)
        if re == 0:
            return f"{fraction_to_str(im)}*i"
        sign = "+" if im > 0 else "-"
        return f"{fraction_to_str(re)} {sign} {fraction_to_str(abs(im))}*i"

    def to_json(self) -> dict:
        return {"re": fraction_to_str(self.re), "im": fraction_to_str(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> "GaussianRational":
        return cls(Fraction(obj["re"]), Fraction(obj["im"]))

    def to_complex(self) -> complex:
        """Lossy conversion, for display and numeric oracles only."""
        return complex(self._a / self._d, self._b / self._d)


_new = object.__new__


def _make(a: int, b: int, d: int) -> GaussianRational:
    # hot path: d > 0 already, reduce by one three-way gcd
    if d != 1:
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
    obj = _new(GaussianRational)
    obj._a = a
    obj._b = b
    obj._d = d
    return obj


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def fraction_to_str(x: Fraction) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse the ``"p/q"`` wire format (``q`` may be omitted); plain JSON integers are accepted."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a 'p/q' string, got {text!r}")
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError as exc:
        raise ValueError(f"malformed rational {text!r}") from exc
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


@lru_cache(maxsize=None)
def factorial(k: int) -> Fraction:
    if k < 0:
        raise ValueError("factorial of a negative integer")
    out = 1
    for j in range(2, k + 1):
        out *= j
    return Fraction(out)


def binomial(m: int, k: int) -> Fraction:
    if not 0 <= k <= m:
        raise ValueError(f"binomial({m}, {k}) out of range")
    return Fraction(comb(m, k))


def double_factorial(k: int) -> int:
    """k!! with the convention (-1)!! = 0!! = 1."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out
