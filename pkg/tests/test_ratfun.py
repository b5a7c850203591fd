from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kkw.exact import I, ONE, ZERO, GaussianRational
from kkw.oracles import real_line_integral
from kkw.ratfun import ZERO_RF, NotDecayingError, PoleRational, derivative_at

from conftest import gaussians, pole_rationals

X = PoleRational.xi()
W = PoleRational.inv_one_plus_xi2()


def rf(num, p=0, q=0):
    return PoleRational(num, p, q)


def test_sum_of_simple_poles():
    assert rf([1], 1, 0) + rf([1], 0, 1) == rf([0, 2], 1, 1)


def test_times_zero_is_canonical_zero():
    z = W * 0
    assert z == ZERO_RF and z.p == 0 and z.q == 0


def test_cancellation():
    f = rf([I, 1], 1, 1)  # (xi + i)/((xi - i)(xi + i))
    assert (f.num, f.p, f.q) == (rf([1], 1, 0).num, 1, 0)


def test_derivative_of_w():
    assert W.differentiate() == rf([0, -2], 2, 2)


def test_derivative_display_shape():
    # d/dxi [xi/(1+xi^2)^{n/2-1}] = (1-(n-3)xi^2)/(1+xi^2)^{n/2} at n = 6
    f = X * PoleRational.inv_one_plus_xi2(2)
    assert f.differentiate() == rf([1, 0, -3], 3, 3)


def test_derivative_of_constant():
    assert rf([5]).differentiate() == ZERO_RF


def test_pi_plus_examples():
    assert W.pi_plus() == rf([-I / 2], 1, 0)
    assert rf([1], 2, 0).pi_plus() == rf([1], 2, 0)
    assert rf([1], 0, 1).pi_plus() == ZERO_RF


def test_pi_plus_rejects_non_decaying():
    with pytest.raises(NotDecayingError):
        X.pi_plus()
    with pytest.raises(NotDecayingError):
        rf([1]).pi_plus()


def test_integrals():
    assert W.integrate_real_line() == ONE
    assert (W * W).integrate_real_line() == GaussianRational(Fraction(1, 2))
    assert (X * W * W).integrate_real_line() == ZERO
    with pytest.raises(NotDecayingError):
        (X * W).integrate_real_line()


def test_residues():
    assert W.residue_at_i() == -I / 2
    assert (W * W).residue_at_i() == -I / 4
    assert rf([1], 0, 3).residue_at_i() == ZERO


def test_derivative_at_examples():
    assert derivative_at(rf([1], 0, 1), 1) == GaussianRational(Fraction(1, 4))
    assert derivative_at(rf([7]), 3) == ZERO
    assert derivative_at(rf([7]), 0) == GaussianRational(7)
    with pytest.raises(ValueError):
        derivative_at(W, 1)


@given(pole_rationals(), pole_rationals(), gaussians)
def test_linearity_of_arithmetic(f, g, c):
    assert (f + g) - g == f
    assert (f + g) * c == f * c + g * c


@given(pole_rationals(), pole_rationals())
def test_product_rule(f, g):
    assert (f * g).differentiate() == f.differentiate() * g + f * g.differentiate()


@given(pole_rationals(decaying=True), pole_rationals(decaying=True), gaussians)
def test_pi_plus_linear_and_idempotent(f, g, c):
    pf = f.pi_plus()
    assert pf.q == 0
    assert pf.pi_plus() == pf
    assert (f * c + g).pi_plus() == pf * c + g.pi_plus()
    rest = f.pi_minus_remainder()
    assert pf + rest == f and rest.p == 0


@given(pole_rationals(integrable=True))
def test_integral_is_two_i_residue(f):
    assert f.integrate_real_line() == 2 * I * f.residue_at_i()


@given(pole_rationals(integrable=True, max_pole=3))
def test_integral_against_quadrature(f):
    exact = f.integrate_real_line()
    if not f:
        return
    num = [complex(c.to_complex()) for c in f.num]

    def h(x):
        x = mpmath.mpf(x)
        return mpmath.polyval([mpmath.mpc(c) for c in num[::-1]], x) / ((x - 1j) ** f.p * (x + 1j) ** f.q)

    re = real_line_integral(lambda x: mpmath.re(h(x)))
    im = real_line_integral(lambda x: mpmath.im(h(x)))
    assert abs(re - float(exact.re)) < 1e-8 and abs(im - float(exact.im)) < 1e-8


@given(st.lists(gaussians, min_size=1, max_size=4), st.integers(0, 4), st.integers(0, 6))
def test_derivative_at_matches_repeated_differentiation(num, q, m):
    g = PoleRational(num, 0, q)
    d = g
    for _ in range(m):
        d = d.differentiate()
    assert derivative_at(g, m) == d(I)


@given(pole_rationals())
def test_json_roundtrip(f):
    assert PoleRational.from_json(f.to_json()) == f
