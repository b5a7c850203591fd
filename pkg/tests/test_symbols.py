from __future__ import annotations

from fractions import Fraction

import pytest

from kkw.exact import I, GaussianRational
from kkw.jets import identity_jet, random_jjet
from kkw.pipeline import CaseRunner
from kkw.poly import Poly, pack, unpack
from kkw.ratfun import PoleRational
from kkw.symbols import SymbolBuilder, SymbolRing, sphere_reduce
from kkw.verify import display_checks


def test_pack_roundtrip():
    assert unpack(pack([1, 0, 3, 2]), 4) == (1, 0, 3, 2)


def test_poly_arithmetic_and_partial():
    x = Poly.variable(0, Fraction(1), Fraction(0))
    y = Poly.variable(1, Fraction(1), Fraction(0))
    p = (x + y) ** 3
    assert p.partial(0) == (x + y) ** 2 * 3
    assert (x * y - y * x) == Poly({}, Fraction(0))
    assert p.total_degree(2) == 3 and p.max_degree(1) == 3


def test_w_derivative_chain_rule():
    # d/dxi_1 of w = 1/|xi|^2 is -2 xi_1 w^2
    R = SymbolRing(6)
    assert R.d_xi(R.w(1), 0) == R.mono(GaussianRational(-2), xi=[1, 0, 0, 0, 0, 0], w=2)


def test_restriction_of_w():
    R = SymbolRing(6)
    r = R.restrict(R.w(1))
    assert r.constant_term() == PoleRational.inv_one_plus_xi2()


def test_sphere_reduce_uses_unit_sphere():
    n = 6
    one = PoleRational.constant(1)
    zero = PoleRational([], 0, 0)
    total = Poly({}, zero)
    for i in range(n - 1):
        total = total + Poly.variable(i, one, zero) ** 2
    assert sphere_reduce(total, n) == Poly.constant(one, zero)


def test_sigma_minus_one_value():
    jet = identity_jet(6)
    B = SymbolBuilder(jet)
    s = B.sigma_m1().value
    # J = id: i c(xi) w; the e_1 coefficient is i xi_1 w
    coeff = s.terms[1]
    assert coeff == B.ring.mono(I, xi=[1, 0, 0, 0, 0, 0], w=1)


@pytest.mark.parametrize("profile", ["diagonal", "conjugated"])
@pytest.mark.parametrize("n", [6, 8])
def test_symbols_reproduce_displays(n, profile):
    for seed in (0, 1):
        rows = display_checks(CaseRunner(random_jjet(n, seed, profile)))
        assert [r["verdict"] for r in rows] == ["match"] * len(rows), rows


def test_sigma_m2_parts_sum():
    B = SymbolBuilder(random_jjet(6, 3, "conjugated"))
    a, b, c = B.sigma_m2_parts()
    assert a + b + c == B.sigma_m2()
