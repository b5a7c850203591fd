"""Sparse multivariate polynomials over an arbitrary commutative coefficient ring.

Monomials are packed into one integer, ``BITS`` bits per variable, so that a
monomial product is a single integer addition.  Exponents must stay below
``2**BITS``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator

from .exact import GaussianRational
from .ratfun import PoleRational

BITS = 8
MASK = (1 << BITS) - 1

_SCALARS = (int, Fraction, GaussianRational, PoleRational)


def exponent(mono: int, var: int) -> int:
    return (mono >> (BITS * var)) & MASK


def unpack(mono: int, nvars: int) -> tuple:
    return tuple((mono >> (BITS * k)) & MASK for k in range(nvars))


def pack(exps) -> int:
    mono = 0
    for k, e in enumerate(exps):
        if e < 0 or e > MASK:
            raise ValueError(f"exponent {e} out of range")
        mono |= e << (BITS * k)
    return mono


def var_unit(var: int) -> int:
    return 1 << (BITS * var)


class Poly:
    """``terms`` maps packed monomials to non-zero coefficients."""

    __slots__ = ("terms", "zero")

    def __init__(self, terms: dict | None = None, zero=0):
        self.zero = zero
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def _wrap(cls, terms: dict, zero) -> "Poly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.zero = zero
        return obj

    @classmethod
    def constant(cls, c, zero=0) -> "Poly":
        return cls._wrap({0: c} if c else {}, zero)

    @classmethod
    def variable(cls, var: int, one, zero=0) -> "Poly":
        return cls._wrap({var_unit(var): one}, zero)

    @classmethod
    def monomial(cls, exps, coeff, zero=0) -> "Poly":
        return cls._wrap({pack(exps): coeff} if coeff else {}, zero)

    def zero_coefficient(self):
        return self.zero

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, _SCALARS):
            if not other:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    def __hash__(self):
        raise TypeError("Poly is unhashable")

    def __repr__(self) -> str:
        return f"Poly({len(self.terms)} terms)"

    def constant_term(self):
        return self.terms.get(0, self.zero)

    def is_constant(self) -> bool:
        return not self.terms or list(self.terms) == [0]

    def __neg__(self) -> "Poly":
        return Poly._wrap({k: -v for k, v in self.terms.items()}, self.zero)

    def __add__(self, other) -> "Poly":
        if isinstance(other, _SCALARS):
            other = Poly.constant(other, self.zero)
        elif not isinstance(other, Poly):
            return NotImplemented
        if len(self.terms) < len(other.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for k, v in small.items():
            if k in out:
                s = out[k] + v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        return Poly._wrap(out, self.zero)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            out: dict = {}
            get = out.get
            for ka, va in self.terms.items():
                for kb, vb in other.terms.items():
                    k = ka + kb
                    prev = get(k)
                    out[k] = va * vb if prev is None else prev + va * vb
            return Poly._wrap({k: v for k, v in out.items() if v}, self.zero)
        if isinstance(other, _SCALARS):
            if not other:
                return Poly._wrap({}, self.zero)
            return Poly._wrap({k: v * other for k, v in self.terms.items()}, self.zero)
        return NotImplemented

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, _SCALARS):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        out = None
        base = self
        while k:
            if k & 1:
                out = base if out is None else out * base
            base = base * base
            k >>= 1
        if out is None:
            raise ValueError("Poly ** 0 needs an explicit ring unit")
        return out

    def partial(self, var: int) -> "Poly":
        unit = var_unit(var)
        shift = BITS * var
        out = {}
        for k, v in self.terms.items():
            e = (k >> shift) & MASK
            if e:
                out[k - unit] = v * e
        return Poly._wrap(out, self.zero)

    def map_coefficients(self, fn: Callable, zero=None) -> "Poly":
        zero = self.zero if zero is None else zero
        out = {}
        for k, v in self.terms.items():
            c = fn(v)
            if c:
                out[k] = c
        return Poly._wrap(out, zero)

    def exponent_items(self, nvars: int) -> Iterator[tuple]:
        for k, v in self.terms.items():
            if k >> (BITS * nvars):
                raise ValueError("polynomial involves variables beyond the requested range")
            yield unpack(k, nvars), v

    def max_degree(self, var: int) -> int:
        return max((exponent(k, var) for k in self.terms), default=0)

    def total_degree(self, nvars: int) -> int:
        return max((sum(unpack(k, nvars)) for k in self.terms), default=0)
