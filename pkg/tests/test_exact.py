from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from kkw.exact import I, ONE, ZERO, GaussianRational, binomial, double_factorial, factorial, fraction_to_str, parse_fraction

from conftest import gaussians, nonzero_gaussians


def test_rational_sum():
    assert GaussianRational(Fraction(1, 2)) + GaussianRational(Fraction(1, 3)) == GaussianRational(Fraction(5, 6))


def test_i_squared():
    assert I * I == -ONE


def test_inverse_example():
    inv = GaussianRational(3, 4).inverse()
    assert inv == GaussianRational(Fraction(3, 25), Fraction(-4, 25))
    assert inv * GaussianRational(3, 4) == ONE


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_float_complex_is_rejected():
    with pytest.raises(TypeError):
        GaussianRational.coerce(1j)


@pytest.mark.parametrize("k,v", [(0, 1), (5, 120), (8 - 3, 120), (10, 3628800)])
def test_factorial(k, v):
    assert factorial(k) == v
    assert isinstance(factorial(k), Fraction)


def test_factorial_negative():
    with pytest.raises(ValueError):
        factorial(-1)


@pytest.mark.parametrize("m,k,v", [(4, 2, 6), (7, 0, 1), (10, 5, 252)])
def test_binomial(m, k, v):
    assert binomial(m, k) == v


def test_binomial_pascal():
    for m in range(1, 14):
        for k in range(1, m):
            assert binomial(m, k) == binomial(m - 1, k - 1) + binomial(m - 1, k)


def test_binomial_out_of_range():
    with pytest.raises(ValueError):
        binomial(3, 4)


def test_double_factorial():
    assert [double_factorial(k) for k in range(-1, 8)] == [1, 1, 1, 2, 3, 8, 15, 48, 105]


def test_wire_format():
    assert fraction_to_str(Fraction(3)) == "3"
    assert fraction_to_str(Fraction(-3, 4)) == "-3/4"
    assert parse_fraction("-3/4") == Fraction(-3, 4)
    assert parse_fraction(7) == 7
    z = GaussianRational(Fraction(1, 2), -3)
    assert z.to_json() == {"re": "1/2", "im": "-3"}
    assert GaussianRational.from_json(z.to_json()) == z
    for bad in ("1/0", "x", "1/2/3", None, 1.5):
        with pytest.raises(ValueError):
            parse_fraction(bad)


@given(gaussians, gaussians, gaussians)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO and a + ZERO == a and a * ONE == a


@given(nonzero_gaussians, gaussians)
def test_inverse_and_division(a, b):
    assert a * a.inverse() == ONE
    assert (b / a) * a == b


@given(gaussians, gaussians)
def test_conjugation(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).im == 0
    assert (a * a.conj()).re == a.norm2()


@given(nonzero_gaussians)
def test_integer_powers(a):
    assert a ** 0 == ONE
    assert a ** 3 == a * a * a
    assert a ** -2 == (a * a).inverse()


@given(gaussians)
def test_canonical_equality_and_hash(a):
    b = GaussianRational(a.re, a.im)
    assert a == b and hash(a) == hash(b)
