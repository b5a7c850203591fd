"""Monomial moments over the unit sphere S^{n-2} in the xi' = (xi_1..xi_{n-1}) space.

Every value is the coefficient of Vol(S^{n-2}); the volume itself stays a
symbolic unit.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import double_factorial


@lru_cache(maxsize=None)
def _moment(exponents: tuple, n: int) -> Fraction:
    if any(e % 2 for e in exponents):
        return Fraction(0)
    top = 1
    for e in exponents:
        top *= double_factorial(e - 1)
    half = sum(exponents) // 2
    bottom = 1
    for k in range(half):
        bottom *= n - 1 + 2 * k
    return Fraction(top, bottom)


def moment(exponents: Sequence[int], n: int) -> Fraction:
    """Average of xi'^alpha over S^{n-2}, as a multiple of Vol(S^{n-2})."""
    if n < 4 or n % 2:
        raise ValueError(f"sphere moments need an even n >= 4, got {n}")
    exponents = tuple(exponents)
    if len(exponents) != n - 1:
        raise ValueError(f"expected {n - 1} exponents, got {len(exponents)}")
    if any(e < 0 for e in exponents):
        raise ValueError("exponents must be non-negative")
    return _moment(exponents, n)


def integrate_polynomial(poly, n: int):
    """Integrate a polynomial in xi' over S^{n-2}; coefficients may live in any ring.

    ``poly`` is a :class:`kkw.poly.Poly` whose variables are xi_1..xi_{n-1}
    (extra variables must carry exponent zero).  Odd monomials are handed to
    :func:`moment` like every other term and come back as zero.
    """
    total = None
    for exps, coeff in poly.exponent_items(n - 1):
        weight = moment(exps, n)
        if not weight:
            continue
        term = coeff * weight
        total = term if total is None else total + term
    if total is None:
        return poly.zero_coefficient()
    return total
