"""Clifford algebra Cl(n) with c(e_i)c(e_j) + c(e_j)c(e_i) = -2 delta_ij.

Basis monomials e_S are stored as bitmasks (bit h-1 stands for e_h, indices
ascending).  Coefficients may live in any commutative ring that supports
``+``, ``*``, negation and truthiness.  No spinor matrices are ever built: the
trace is 2^{n/2} times the scalar part.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exact import GaussianRational
from .poly import Poly
from .ratfun import PoleRational


class DimensionMismatch(ValueError):
    pass


@lru_cache(maxsize=1 << 16)
def blade_product(a: int, b: int) -> tuple[int, int]:
    """(sign, blade) with e_a e_b = sign * e_blade."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    # each shared generator squares to -1
    swaps += bin(a & b).count("1")
    return (-1 if swaps & 1 else 1), a ^ b


def blade_square_sign(blade: int) -> int:
    k = bin(blade).count("1")
    return -1 if (k * (k + 1) // 2) & 1 else 1


def blade_indices(blade: int) -> tuple[int, ...]:
    out = []
    h = 1
    while blade:
        if blade & 1:
            out.append(h)
        blade >>= 1
        h += 1
    return tuple(out)


def blade_of(indices: Iterable[int]) -> tuple[int, int]:
    """Sign and blade of the ordered product e_{i1} e_{i2} ... (1-based)."""
    sign, blade = 1, 0
    for h in indices:
        s, blade = blade_product(blade, 1 << (h - 1))
        sign *= s
    return sign, blade


class Multivector:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def _wrap(cls, n: int, terms: dict) -> "Multivector":
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, n: int, c) -> "Multivector":
        return cls._wrap(n, {0: c} if c else {})

    @classmethod
    def generator(cls, n: int, h: int, one=1) -> "Multivector":
        if not 1 <= h <= n:
            raise IndexError(f"generator e_{h} outside Cl({n})")
        return cls._wrap(n, {1 << (h - 1): one})

    @classmethod
    def monomial(cls, n: int, indices: Iterable[int], coeff=1) -> "Multivector":
        sign, blade = blade_of(indices)
        return cls._wrap(n, {blade: coeff * sign} if coeff else {})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Multivector):
            return self.n == other.n and self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == {0: other}

    __hash__ = None

    def __repr__(self) -> str:
        parts = []
        for blade in sorted(self.terms):
            idx = "".join(f"e{h}" for h in blade_indices(blade)) or "1"
            parts.append(f"{self.terms[blade]!r}*{idx}")
        return f"Multivector[n={self.n}](" + " + ".join(parts) + ")"

    def grades(self) -> set[int]:
        return {bin(b).count("1") for b in self.terms}

    def scalar_part(self, zero=0):
        return self.terms.get(0, zero)

    def _check(self, other: "Multivector") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"Cl({self.n}) vs Cl({other.n})")

    def __neg__(self) -> "Multivector":
        return Multivector._wrap(self.n, {k: -v for k, v in self.terms.items()})

    def __add__(self, other) -> "Multivector":
        if not isinstance(other, Multivector):
            if not other:
                return self
            other = Multivector.scalar(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        return Multivector._wrap(self.n, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Multivector":
        return self + (-other)

    def __rsub__(self, other) -> "Multivector":
        return (-self) + other

    def __mul__(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            out: dict = {}
            for ka, va in self.terms.items():
                for kb, vb in other.terms.items():
                    sign, k = blade_product(ka, kb)
                    prod = va * vb
                    if sign < 0:
                        prod = -prod
                    prev = out.get(k)
                    out[k] = prod if prev is None else prev + prod
            return Multivector._wrap(self.n, {k: v for k, v in out.items() if v})
        if not _is_coefficient(other):
            return NotImplemented
        if not other:
            return Multivector._wrap(self.n, {})
        return Multivector._wrap(self.n, {k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other) -> "Multivector":
        if not _is_coefficient(other):
            return NotImplemented
        if not other:
            return Multivector._wrap(self.n, {})
        return Multivector._wrap(self.n, {k: other * v for k, v in self.terms.items()})

    def map_coefficients(self, fn) -> "Multivector":
        out = {}
        for k, v in self.terms.items():
            c = fn(v)
            if c:
                out[k] = c
        return Multivector._wrap(self.n, out)

    def grade_part(self, k: int) -> "Multivector":
        return Multivector._wrap(self.n, {b: v for b, v in self.terms.items() if bin(b).count("1") == k})


def _is_coefficient(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational, PoleRational, Poly))


def clifford_of_covector(n: int, v, one=1) -> Multivector:
    """sum_h v_h e_h for a length-n coefficient vector (index 0 is e_1)."""
    if len(v) != n:
        raise DimensionMismatch(f"covector of length {len(v)} in Cl({n})")
    return Multivector(n, {1 << h: c for h, c in enumerate(v) if c})


def spinor_dimension(n: int) -> int:
    if n % 2:
        raise ValueError("the spinor trace is defined here for even n only")
    return 2 ** (n // 2)


def trace(a: Multivector, n: int | None = None, zero=0):
    """tr = 2^{n/2} times the scalar part."""
    n = a.n if n is None else n
    return a.scalar_part(zero) * spinor_dimension(n)


def trace_product(a: Multivector, b: Multivector, zero=0):
    """tr(a b) without forming the full product."""
    a._check(b)
    total = zero
    small, large = (a, b) if len(a.terms) <= len(b.terms) else (b, a)
    for blade, x in small.terms.items():
        y = large.terms.get(blade)
        if y is None:
            continue
        term = x * y if small is a else y * x
        if blade_square_sign(blade) < 0:
            term = -term
        total = total + term
    return total * spinor_dimension(a.n)
