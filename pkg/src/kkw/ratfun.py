"""Rational functions of xi_n whose only poles sit at +i and -i.

A :class:`PoleRational` is ``N(x) / ((x - i)^p (x + i)^q)`` with ``N`` a dense
coefficient list (lowest degree first) over :class:`GaussianRational`.  Common
factors are cancelled eagerly, so ``p`` and ``q`` are always the true pole
orders.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .exact import I, ONE, ZERO, GaussianRational, factorial


class NotDecayingError(ValueError):
    """Raised when a projection or integral needs decay the input lacks."""


# -- dense polynomial helpers (coefficient lists, lowest degree first) -------

def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _padd(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, v in enumerate(b):
        out[k] = out[k] + v
    return _trim(out)


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for j, x in enumerate(a):
        if not x:
            continue
        for k, y in enumerate(b):
            if y:
                out[j + k] = out[j + k] + x * y
    return _trim(out)


def _pscale(a: Sequence, s) -> list:
    if not s:
        return []
    return _trim([x * s for x in a])


def _peval(a: Sequence, x: GaussianRational) -> GaussianRational:
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pderiv(a: Sequence) -> list:
    return _trim([a[k] * k for k in range(1, len(a))])


def _pdiv_linear(a: Sequence, root: GaussianRational) -> list:
    """Quotient of ``a`` by ``(x - root)``; the caller guarantees exactness."""
    if not a:
        return []
    n = len(a) - 1
    out = [ZERO] * n
    carry = ZERO
    for k in range(n, 0, -1):
        carry = a[k] + carry * root
        out[k - 1] = carry
    return out


@lru_cache(maxsize=None)
def _linear_power(sign: int, k: int) -> tuple:
    """Coefficients of ``(x + sign*i)^k``."""
    c = sign * I
    return tuple(comb(k, j) * c ** (k - j) for j in range(k + 1))


_MINUS_I = -I


class PoleRational:
    __slots__ = ("num", "p", "q")

    def __init__(self, num: Iterable = (), p: int = 0, q: int = 0, *, _canonical: bool = False):
        num = _trim([GaussianRational.coerce(c) for c in num])
        if p < 0 or q < 0:
            raise ValueError("pole orders must be non-negative")
        self.num = num
        self.p = p
        self.q = q
        if not _canonical:
            self._cancel()

    @classmethod
    def _make(cls, num: list, p: int, q: int) -> "PoleRational":
        obj = cls.__new__(cls)
        obj.num, obj.p, obj.q = num, p, q
        obj._cancel()
        return obj

    def _cancel(self) -> None:
        num = self.num
        if not num:
            self.p = self.q = 0
            return
        while self.p and not _peval(num, I):
            num = _pdiv_linear(num, I)
            self.p -= 1
        while self.q and not _peval(num, _MINUS_I):
            num = _pdiv_linear(num, _MINUS_I)
            self.q -= 1
        self.num = num

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c) -> "PoleRational":
        return cls([c])

    @classmethod
    def xi(cls) -> "PoleRational":
        return cls([ZERO, ONE])

    @classmethod
    def inv_one_plus_xi2(cls, k: int = 1) -> "PoleRational":
        """``1 / (1 + xi^2)^k``."""
        return cls._make([ONE], k, k)

    @classmethod
    def monomial(cls, coeff, b: int, k: int) -> "PoleRational":
        """``coeff * xi^b / (1 + xi^2)^k``."""
        return cls._make([ZERO] * b + [GaussianRational.coerce(coeff)], k, k)

    # -- basic queries ------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    @property
    def degree(self) -> int:
        return len(self.num) - 1

    def decays(self) -> bool:
        return not self.num or self.degree < self.p + self.q

    def is_integrable(self) -> bool:
        return not self.num or self.degree <= self.p + self.q - 2

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = PoleRational.constant(other)
        if not isinstance(other, PoleRational):
            return NotImplemented
        return self.p == other.p and self.q == other.q and self.num == other.num

    def __hash__(self) -> int:
        return hash((tuple(self.num), self.p, self.q))

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})x^{k}" for k, c in enumerate(self.num) if c) or "0"
        return f"PoleRational[{terms} / ((x-i)^{self.p} (x+i)^{self.q})]"

    def __call__(self, x: GaussianRational) -> GaussianRational:
        x = GaussianRational.coerce(x)
        den = (x - I) ** self.p * (x + I) ** self.q
        return _peval(self.num, x) / den

    # -- arithmetic -----------------------------------------------------------
    def _lifted(self, p: int, q: int) -> list:
        num = self.num
        if p > self.p:
            num = _pmul(num, _linear_power(-1, p - self.p))
        if q > self.q:
            num = _pmul(num, _linear_power(1, q - self.q))
        return num

    def __add__(self, other) -> "PoleRational":
        if not isinstance(other, PoleRational):
            try:
                other = PoleRational.constant(other)
            except TypeError:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.p == other.p and self.q == other.q:
            return PoleRational._make(_padd(self.num, other.num), self.p, self.q)
        p = max(self.p, other.p)
        q = max(self.q, other.q)
        return PoleRational._make(_padd(self._lifted(p, q), other._lifted(p, q)), p, q)

    __radd__ = __add__

    def __neg__(self) -> "PoleRational":
        obj = PoleRational.__new__(PoleRational)
        obj.num, obj.p, obj.q = [-c for c in self.num], self.p, self.q
        return obj

    def __sub__(self, other) -> "PoleRational":
        if not isinstance(other, PoleRational):
            other = PoleRational.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "PoleRational":
        return (-self) + other

    def __mul__(self, other) -> "PoleRational":
        if isinstance(other, PoleRational):
            if not self.num or not other.num:
                return ZERO_RF
            return PoleRational._make(_pmul(self.num, other.num), self.p + other.p, self.q + other.q)
        try:
            s = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not s:
            return ZERO_RF
        obj = PoleRational.__new__(PoleRational)
        obj.num, obj.p, obj.q = [c * s for c in self.num], self.p, self.q
        return obj

    __rmul__ = __mul__

    # -- calculus -----------------------------------------------------------------
    def differentiate(self) -> "PoleRational":
        """d/dxi_n; pole orders grow by at most one."""
        if not self.num:
            return ZERO_RF
        p, q, num = self.p, self.q, self.num
        # (N' (x-i)(x+i) - p N (x+i) - q N (x-i)) / ((x-i)^(p+1) (x+i)^(q+1))
        one_plus_x2 = [ONE, ZERO, ONE]
        top = _pmul(_pderiv(num), one_plus_x2)
        if p:
            top = _padd(top, _pscale(_pmul(num, [I, ONE]), -p))
        if q:
            top = _padd(top, _pscale(_pmul(num, [-I, ONE]), -q))
        return PoleRational._make(top, p + 1, q + 1)

    def taylor_at_i(self, order: int) -> list:
        """First ``order`` Taylor coefficients at xi_n = i; requires p == 0."""
        if self.p:
            raise ValueError("function has a pole at +i")
        # N(i + u) times (2i + u)^(-q), both truncated at u^order
        shifted = []
        for k in range(min(order, len(self.num))):
            c = ZERO
            for j in range(k, len(self.num)):
                if self.num[j]:
                    c = c + self.num[j] * comb(j, k) * _I_POW[(j - k) % 4]
            shifted.append(c)
        q = self.q
        inv = (2 * I) ** (-q) if q else ONE
        series = []
        for r in range(order):
            series.append(inv * ((-1) ** r * comb(q + r - 1, r)) if q else (ONE if r == 0 else ZERO))
            inv = inv / (2 * I)
        out = []
        for m in range(order):
            c = ZERO
            for k in range(min(m + 1, len(shifted))):
                if shifted[k] and series[m - k]:
                    c = c + shifted[k] * series[m - k]
            out.append(c)
        return out

    def pi_plus(self) -> "PoleRational":
        """Principal part at the upper-half-plane pole +i."""
        if not self.decays():
            raise NotDecayingError(f"pi_plus needs a decaying symbol, got {self!r}")
        if not self.p:
            return ZERO_RF
        if not self.q:
            return self
        key = (tuple(self.num), self.p, self.q)
        hit = _PI_PLUS_CACHE.get(key)
        if hit is not None:
            return hit
        g = PoleRational._make(list(self.num), 0, self.q)
        coeffs = g.taylor_at_i(self.p)
        # sum_k g_k (x - i)^k, expanded
        top: list = []
        for k, gk in enumerate(coeffs):
            if gk:
                top = _padd(top, _pscale(list(_linear_power(-1, k)), gk))
        out = PoleRational._make(top, self.p, 0)
        if len(_PI_PLUS_CACHE) > 200_000:
            _PI_PLUS_CACHE.clear()
        _PI_PLUS_CACHE[key] = out
        return out

    def pi_minus_remainder(self) -> "PoleRational":
        return self - self.pi_plus()

    def residue_at_i(self) -> GaussianRational:
        if not self.p:
            return ZERO
        g = PoleRational._make(list(self.num), 0, self.q)
        return derivative_at(g, self.p - 1) / factorial(self.p - 1)

    def integrate_real_line(self) -> GaussianRational:
        """Coefficient ``r`` with the real-line integral equal to ``r * pi``."""
        if not self.is_integrable():
            raise NotDecayingError(f"integrand is not absolutely integrable: {self!r}")
        return 2 * I * self.residue_at_i()

    # -- wire format ------------------------------------------------------------
    def to_json(self) -> dict:
        return {"num": [c.to_json() for c in self.num], "p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, obj: dict) -> "PoleRational":
        return cls([GaussianRational.from_json(c) for c in obj["num"]], int(obj["p"]), int(obj["q"]))


_I_POW = (ONE, I, -ONE, -I)
# pi_plus results are immutable in practice, so repeated projections are shared
_PI_PLUS_CACHE: dict = {}

ZERO_RF = PoleRational([], 0, 0, _canonical=True)
ONE_RF = PoleRational([ONE], 0, 0, _canonical=True)


def derivative_at(g: PoleRational, m: int) -> GaussianRational:
    """m-th derivative at xi_n = i of ``g = N / (xi_n + i)^q`` (Leibniz rule)."""
    if g.p:
        raise ValueError("derivative_at needs a function without a pole at +i")
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    q = g.q
    two_i = 2 * I
    total = ZERO
    deriv = list(g.num)
    for k in range(m + 1):
        if not deriv:
            break
        r = m - k
        nk = _peval(deriv, I)
        if nk:
            # d^r/dx^r (x+i)^(-q) at x=i: (-1)^r q(q+1)...(q+r-1) (2i)^(-q-r)
            rising = 1
            for t in range(r):
                rising *= q + t
            if rising:
                factor = (-1) ** r * rising * comb(m, k)
                total = total + nk * factor * two_i ** (-q - r)
        deriv = _pderiv(deriv)
    return total
