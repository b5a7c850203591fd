from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from kkw.poly import Poly
from kkw.sphere import integrate_polynomial, moment


def gamma_oracle(exps, n):
    """Sphere average of xi'^alpha from Gamma functions, via sympy."""
    if any(e % 2 for e in exps):
        return Fraction(0)
    d = sp.Rational(n - 1, 2)
    val = sp.gamma(d) / sp.gamma(d + sp.Rational(sum(exps), 2))
    for e in exps:
        val *= sp.gamma(sp.Rational(e + 1, 2)) / sp.gamma(sp.Rational(1, 2))
    val = sp.nsimplify(sp.simplify(val))
    return Fraction(int(val.p), int(val.q))


@st.composite
def exponent_vectors(draw):
    n = draw(st.sampled_from([4, 6, 8, 10, 12, 14]))
    total = draw(st.integers(0, 8))
    exps = [0] * (n - 1)
    for _ in range(total):
        exps[draw(st.integers(0, n - 2))] += 1
    return n, exps


@given(exponent_vectors())
def test_moments_match_gamma_oracle(case):
    n, exps = case
    assert moment(exps, n) == gamma_oracle(exps, n)


def test_moments_exhaustive_small():
    n = 6
    for exps in product(range(5), repeat=n - 1):
        if sum(exps) <= 8:
            assert moment(exps, n) == gamma_oracle(exps, n)


def test_known_values():
    assert moment([0] * 5, 6) == 1
    assert moment([2, 0, 0, 0, 0], 6) == Fraction(1, 5)
    assert moment([2, 2, 0, 0, 0], 6) == Fraction(1, 35)
    assert moment([4, 0, 0, 0, 0], 6) == Fraction(3, 35)


def test_moment_argument_checks():
    with pytest.raises(ValueError):
        moment([0, 0], 5)
    with pytest.raises(ValueError):
        moment([0, 0], 6)
    with pytest.raises(ValueError):
        moment([-1, 0, 0, 0, 0], 6)


def test_polynomial_integration_kills_odd_terms():
    n = 6
    x0 = Poly.variable(0, Fraction(1), Fraction(0))
    x1 = Poly.variable(1, Fraction(1), Fraction(0))
    p = x0 * x0 + x0 * x1 + x0 * x0 * x0 + 3
    assert integrate_polynomial(p, n) == Fraction(1, 5) + 3


def test_sum_of_squares_is_one():
    for n in (6, 8, 10):
        p = Poly({}, Fraction(0))
        for i in range(n - 1):
            x = Poly.variable(i, Fraction(1), Fraction(0))
            p = p + x * x
        assert integrate_polynomial(p, n) == 1
        assert integrate_polynomial(p * p, n) == 1
