from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kkw.clifford import (
    DimensionMismatch,
    Multivector,
    blade_product,
    clifford_of_covector,
    trace,
    trace_product,
)

EVEN_N = st.sampled_from([2, 4, 6, 8, 10, 12])


@st.composite
def multivectors(draw, n=None, max_terms=5):
    if n is None:
        n = draw(EVEN_N)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        blade = draw(st.integers(0, (1 << n) - 1))
        terms[blade] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
    return Multivector(n, terms)


@st.composite
def triples(draw):
    n = draw(EVEN_N)
    return n, draw(multivectors(n)), draw(multivectors(n)), draw(multivectors(n))


def e(n, h):
    return Multivector.generator(n, h)


@given(triples())
def test_associativity_and_distributivity(t):
    n, a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
def test_generators_anticommute(n):
    one = Multivector.scalar(n, 1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            s = e(n, i) * e(n, j) + e(n, j) * e(n, i)
            assert s == (one * -2 if i == j else Multivector(n))


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
def test_trace_of_identity(n):
    assert trace(Multivector.scalar(n, 1)) == 2 ** (n // 2)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
def test_non_scalar_monomials_are_traceless(n):
    for blade in range(1, 1 << n, max(1, (1 << n) // 97)):
        assert trace(Multivector(n, {blade: 1})) == 0


@given(triples())
def test_trace_product_and_cyclicity(t):
    n, a, b, _ = t
    assert trace_product(a, b) == trace(a * b)
    assert trace(a * b) == trace(b * a)


def test_covector_square():
    n = 6
    v = [Fraction(k) for k in (1, 2, 0, -1, 3, 1)]
    c = clifford_of_covector(n, v)
    assert c * c == Multivector.scalar(n, -sum(x * x for x in v))


def test_blade_product_sign():
    # e1 e2 = e12, e2 e1 = -e12, e1 e1 = -1
    assert blade_product(0b01, 0b10) == (1, 0b11)
    assert blade_product(0b10, 0b01) == (-1, 0b11)
    assert blade_product(0b01, 0b01) == (-1, 0)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        e(4, 1) * e(6, 1)
    with pytest.raises(DimensionMismatch):
        clifford_of_covector(4, [1, 2, 3])
