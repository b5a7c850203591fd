"""Evaluators for the displayed closed forms.

Every named constant has the shape  [ N(xi_n) / (c (xi_n + i)^k) ]^{(m)} at xi_n = i,
and every boundary form is returned as the coefficient of pi * Vol(S^{n-2}),
using  2 pi i / m! * constant  for each bracketed integral and tr[id] = 2^{n/2}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .exact import I, GaussianRational, factorial
from .jets import JJet, JetScalars, jet_scalars
from .pipeline import PipelineError, PiVolScalar, to_pivol
from .ratfun import PoleRational, derivative_at


@dataclass(frozen=True)
class NamedConstant:
    name: str
    numerator: Callable  # n -> coefficient list, lowest degree first
    denominator: Callable  # n -> rational c
    pole: Callable  # n -> k, the power of (xi_n + i)
    order: Callable  # n -> m, the derivative order
    anchor: str


def _c(n, a, b=0):
    """a + b*i as an exact Gaussian rational."""
    return GaussianRational(Fraction(a), Fraction(b))


H = lambda n: n // 2  # noqa: E731

# Numerators are listed lowest degree first; _c(n, re, im).
_TABLE = [
    # block after Phi_1
    NamedConstant("A0", lambda n: [_c(n, 0, 1), 0, _c(n, 0, -(n - 3))], lambda n: 2, H, H, "Phi_1"),
    NamedConstant("A1", lambda n: [_c(n, -2), _c(n, 0, -1), _c(n, 2 * (n - 3)), _c(n, 0, n - 3)],
                  lambda n: 2, H, lambda n: H(n) + 1, "Phi_1"),
    NamedConstant("A2", lambda n: [0, _c(n, 0, n - 2)], lambda n: 2, H, lambda n: H(n) + 1, "Phi_1"),
    # block after Phi_2
    NamedConstant("A3", lambda n: [_c(n, 0, -(n - 2)), 0, _c(n, 0, n * n - 3 * n + 2)],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 1, "Phi_2"),
    NamedConstant("A4", lambda n: [0, _c(n, 3 * (n - 2)), 0, _c(n, -(n * n - 5 * n + 6))],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 1, "Phi_2"),
    NamedConstant("A5", lambda n: [_c(n, 2 * (n - 2)), _c(n, 0, n - 2), _c(n, -2 * (n * n - 3 * n + 2)),
                                   _c(n, 0, -(n * n - 3 * n + 2))],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 2, "Phi_2"),
    NamedConstant("A6", lambda n: [0, _c(n, 0, 3 * (n - 2)), 0, _c(n, 0, -(n * n - 5 * n + 6))],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 2, "Phi_2"),
    # block after Phi_3
    NamedConstant("A7", lambda n: [0, _c(n, 0, n - 2)], lambda n: 8, H, lambda n: H(n) + 1, "Phi_3"),
    NamedConstant("A8", lambda n: [0, _c(n, 0, -n * (n - 2))], lambda n: 8, lambda n: H(n) + 1,
                  lambda n: H(n) + 2, "Phi_3"),
    NamedConstant("A9", lambda n: [_c(n, 1), 0, _c(n, -(n - 3))], lambda n: 8, H, lambda n: H(n) + 1, "Phi_3"),
    NamedConstant("A10", lambda n: [_c(n, -(n - 2)), 0, _c(n, n * n - 3 * n + 2)], lambda n: 8,
                  lambda n: H(n) + 1, lambda n: H(n) + 2, "Phi_3"),
    # combined block for Phi_1 + Phi_2 + Phi_3
    NamedConstant("A11", lambda n: [_c(n, 0, -(n - 2)), _c(n, -(n - 2)), _c(n, 0, n * (n - 2))],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 1, "Phi_1+Phi_2+Phi_3"),
    NamedConstant("A12", lambda n: [_c(n, 0, 1), _c(n, 3 * n - 5), _c(n, 0, -(n - 3)), _c(n, -(n * n - 4 * n + 3))],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 1, "Phi_1+Phi_2+Phi_3"),
    NamedConstant("A13", lambda n: [_c(n, 2 * (n - 2)), _c(n, 0, -(n * n - 3 * n + 2)),
                                    _c(n, -2 * (n * n - 3 * n + 2)), _c(n, 0, -(n * n - 3 * n + 2))],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 2, "Phi_1+Phi_2+Phi_3"),
    NamedConstant("A14", lambda n: [_c(n, 0, n - 2), _c(n, 2 * (n - 2)), _c(n, 0, -(n * n - 5 * n + 6))],
                  lambda n: 8, H, lambda n: H(n) + 2, "Phi_1+Phi_2+Phi_3"),
    # block after Phi_4
    NamedConstant("B0", lambda n: [_c(n, -(n - 2)), _c(n, 0, -(n - 2))], lambda n: 8, H,
                  lambda n: H(n) + 1, "Phi_4"),
    NamedConstant("B1", lambda n: [_c(n, -1)], lambda n: 8, lambda n: H(n) - 1, H, "Phi_4"),
    NamedConstant("B2", lambda n: [0, 0, _c(n, -(2 * n * n - 5 * n + 2)), 0, _c(n, -(n * n - 3 * n + 2))],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 2, "Phi_4"),
    NamedConstant("B3", lambda n: [0, 0, _c(n, n - 2)], lambda n: 4, H, lambda n: H(n) + 1, "Phi_4"),
    NamedConstant("B4", lambda n: [0, _c(n, 0, 2 * n * n - 5 * n + 2), 0, _c(n, 0, n * n - 3 * n + 2)],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 2, "Phi_4"),
    NamedConstant("B5", lambda n: [0, _c(n, 0, -(n - 2))], lambda n: 4, H, lambda n: H(n) + 1, "Phi_4"),
    # block after Phi_5
    NamedConstant("C0", lambda n: [0, _c(n, 0, -1), 0, _c(n, 0, n - 3)], lambda n: 4, H,
                  lambda n: H(n) + 1, "Phi_5"),
    NamedConstant("C1", lambda n: [0, _c(n, 0, n - 2)], lambda n: 4, H, lambda n: H(n) + 1, "Phi_5"),
    NamedConstant("C2", lambda n: [_c(n, -2), _c(n, 0, -(2 * n - 3)), _c(n, 2 * (n - 3)), _c(n, 0, n - 3)],
                  lambda n: 16, H, lambda n: H(n) + 1, "Phi_5"),
    NamedConstant("C3", lambda n: [_c(n, 2), _c(n, 0, n - 1), _c(n, -2 * (n - 3)), _c(n, 0, -(n - 3))],
                  lambda n: 4, H, lambda n: H(n) + 1, "Phi_5"),
    NamedConstant("C4", lambda n: [0, _c(n, 3), _c(n, 0, 1), _c(n, -3 * (n - 3)), _c(n, 0, -(n - 3))],
                  lambda n: 16, H, lambda n: H(n) + 2, "Phi_5"),
    NamedConstant("C5", lambda n: [_c(n, 0, 8), _c(n, -3 * (2 * n - 1)), _c(n, 0, -5 * (2 * n - 5)),
                                   _c(n, 9 * (n - 3)), _c(n, 0, 3 * (n - 3))],
                  lambda n: 16, H, lambda n: H(n) + 2, "Phi_5"),
    NamedConstant("C6", lambda n: [_c(n, 2), _c(n, 0, -(7 - 4 * n)), _c(n, -2 * (n - 3)), _c(n, 0, -(n - 3))],
                  lambda n: 16, H, lambda n: H(n) + 1, "Phi_5"),
    # block of the combined form
    NamedConstant("D0", lambda n: [_c(n, n - 6), _c(n, 0, n * n - 2 * n + 1), _c(n, -(3 * n * n - 10 * n + 14)),
                                   _c(n, 0, -(n * n - 3 * n + 2)), _c(n, -(n * n - 5 * n + 8)), _c(n, 0, n - 3)],
                  lambda n: 8, lambda n: H(n) + 1, lambda n: H(n) + 2, "Phi"),
    NamedConstant("D1", lambda n: [_c(n, 0, 1), 0, _c(n, 0, -(n - 3))], lambda n: 2, H, H, "Phi"),
    NamedConstant("D2", lambda n: [_c(n, -2 * n + 2), _c(n, 0, n * n - 7 * n + 8), _c(n, 2 * (n - 3)),
                                   _c(n, 0, n * (n - 3))],
                  lambda n: 4 * (n - 1), H, lambda n: H(n) + 1, "Phi"),
    NamedConstant("D3", lambda n: [_c(n, 0, 4 - n), _c(n, 1), _c(n, 0, n * n - 5 * n + 9), _c(n, -(n - 3)),
                                   _c(n, 0, -(n - 3))],
                  lambda n: 8 * (n - 1), lambda n: H(n) + 1, lambda n: H(n) + 1, "Phi"),
    NamedConstant("D4", lambda n: [_c(n, -1)], lambda n: 8, lambda n: H(n) - 1, H, "Phi"),
    NamedConstant("D5", lambda n: [_c(n, 0, n), _c(n, n * n - 1), _c(n, 0, 2 * n * n - 6 * n + 5),
                                   _c(n, -(n ** 3 - 5 * n * n + 5 * n - 1)), _c(n, 0, n * n - 4 * n + 3)],
                  lambda n: 8 * (n - 1), lambda n: H(n) + 1, lambda n: H(n) + 1, "Phi"),
    NamedConstant("D6", lambda n: [_c(n, -1), _c(n, 0, -(n * n - 4 * n + 4)), _c(n, n * n - 4 * n + 3)],
                  lambda n: 8 * (n - 1), H, lambda n: H(n) + 1, "Phi"),
    NamedConstant("D7", lambda n: [_c(n, -(n - 2)), _c(n, 0, -(n - 2))], lambda n: 4 * (n - 1), H,
                  lambda n: H(n) + 1, "Phi"),
    NamedConstant("D8", lambda n: [0, _c(n, 0, -5 * (n - 2)), _c(n, n * n - 3 * n + 2)],
                  lambda n: 4 * (n - 1), H, lambda n: H(n) + 1, "Phi"),
]

CONSTANTS = {c.name: c for c in _TABLE}
CONSTANT_NAMES = tuple(c.name for c in _TABLE)

COMBINATIONS = (("A11", "A3", "A7"), ("A12", "A4", "A9"), ("A13", "A5", "A8"), ("A14", "A6", "A10"))


def _check_n(n: int) -> None:
    if n < 6 or n % 2:
        raise ValueError(f"n must be even and >= 6, got {n}")


def constant_function(name: str, n: int) -> tuple[PoleRational, int]:
    """The bracketed function N / (c (xi+i)^k) and its derivative order m."""
    try:
        c = CONSTANTS[name]
    except KeyError:
        raise KeyError(f"unknown constant {name!r}") from None
    _check_n(n)
    scale = Fraction(1, c.denominator(n))
    num = [GaussianRational.coerce(x) * scale for x in c.numerator(n)]
    return PoleRational(num, 0, c.pole(n)), c.order(n)


@lru_cache(maxsize=None)
def eval_constant(name: str, n: int) -> GaussianRational:
    g, m = constant_function(name, n)
    return derivative_at(g, m)


def combination_residual(name: str, n: int) -> tuple[PoleRational, GaussianRational]:
    """(function difference, value difference) for one combination identity."""
    total, a, b = next(t for t in COMBINATIONS if t[0] == name)
    f, _ = constant_function(total, n)
    fa, _ = constant_function(a, n)
    fb, _ = constant_function(b, n)
    return f - fa - fb, eval_constant(total, n) - eval_constant(a, n) - eval_constant(b, n)


# -- boundary forms --------------------------------------------------------------

def _F(name: str, n: int, fact: int) -> GaussianRational:
    """tr[id] * (2 i / fact!) * constant: the pi * Vol coefficient of one bracket."""
    return eval_constant(name, n) * (2 * I) * (Fraction(2 ** (n // 2)) / factorial(fact))


def _sum(terms) -> GaussianRational:
    out = GaussianRational(0)
    for t in terms:
        out = out + t
    return out


def phi1_form(n: int, s: JetScalars) -> GaussianRational:
    m, v = n // 2, Fraction(1, n - 1)
    return _sum([
        _F("A0", n, m) * s.S_a,
        _F("A1", n, m + 1) * (s.S_a * v),
        _F("A2", n, m + 1) * (s.S_b * v),
    ])


def phi2_form(n: int, s: JetScalars) -> GaussianRational:
    m, v, h = n // 2, Fraction(1, n - 1), s.hprime
    return _sum([
        _F("A3", n, m + 1) * (h * s.P_tt * v),
        _F("A4", n, m + 1) * (h * s.P_tn),
        _F("A5", n, m + 2) * (h * s.P_ta * v),
        _F("A6", n, m + 2) * (h * s.P_na),
    ])


def phi3_form(n: int, s: JetScalars) -> GaussianRational:
    m, v, h = n // 2, Fraction(1, n - 1), s.hprime
    return _sum([
        _F("A7", n, m + 1) * (h * s.P_tt * v),
        _F("A8", n, m + 2) * (h * s.P_ta * v),
        _F("A9", n, m + 1) * (h * s.P_tn),
        _F("A10", n, m + 2) * (h * s.P_na),
    ])


def phi123_combined_form(n: int, s: JetScalars) -> GaussianRational:
    m, v, h = n // 2, Fraction(1, n - 1), s.hprime
    return _sum([
        _F("A0", n, m) * s.S_a,
        _F("A1", n, m + 1) * (s.S_a * v),
        _F("A2", n, m + 1) * (s.S_b * v),
        _F("A11", n, m + 1) * (h * s.P_tt * v),
        _F("A12", n, m + 1) * (h * s.P_tn),
        _F("A13", n, m + 2) * (h * s.P_ta * v),
        _F("A14", n, m + 2) * (h * s.P_na),
    ])


def phi4_form(n: int, s: JetScalars) -> GaussianRational:
    m, v, h = n // 2, Fraction(1, n - 1), s.hprime
    return _sum([
        _F("B0", n, m + 1) * (h * s.P_tn * v),
        _F("B1", n, m) * (h * s.P_tn),
        _F("B0", n, m + 1) * (-h * s.T * v),
        _F("B1", n, m) * (-h * s.T),
        _F("B2", n, m + 2) * (h * s.P_na),
        _F("B3", n, m + 1) * (h * s.P_tn),
        _F("B4", n, m + 2) * (h * s.P_ta * v),
        _F("B5", n, m + 1) * (h * s.P_tt * v),
        _F("B5", n, m + 1) * (s.P_ta * s.G_full * v),
        _F("B0", n, m + 1) * (-2 * s.G_ni * v),
        _F("B0", n, m + 1) * (2 * s.G_in * v),
        _F("B3", n, m + 1) * (s.P_na * s.G_full),
        _F("B0", n, m + 1) * (4 * s.S_a * v),
    ])


def phi5_form(n: int, s: JetScalars) -> GaussianRational:
    m, v, h = n // 2, Fraction(1, n - 1), s.hprime
    return _sum([
        _F("C0", n, m + 1) * (s.P_na * s.S_full),
        _F("C1", n, m + 1) * (s.P_ta * s.S_full * v),
        _F("C0", n, m + 1) * (h * s.P_na * s.T * Fraction(-1, 4)),
        _F("C2", n, m + 1) * (h * s.P_ta * s.T * v),
        _F("C3", n, m + 1) * (s.S_full * v),
        _F("C4", n, m + 2) * (h * s.P_na * s.P_na),
        _F("C5", n, m + 2) * (h * s.P_na * s.P_ta * v),
        _F("C0", n, m + 1) * (h * s.P_nt * s.P_na * Fraction(3, 4)),
        _F("C6", n, m + 1) * (h * s.P_nt * s.P_ta * v),
        _F("C3", n, m + 1) * (h * s.P_tt * s.P_na * v / 2),
    ])


_CASE_FORMS = {"aI": phi1_form, "aII": phi2_form, "aIII": phi3_form, "b": phi4_form, "c": phi5_form}


def phi_case_form(case_id: str, n: int, jet: JJet) -> PiVolScalar:
    _check_n(n)
    if case_id not in _CASE_FORMS:
        raise PipelineError(f"unknown case {case_id!r}")
    return to_pivol(_CASE_FORMS[case_id](n, jet_scalars(jet)), f"case form {case_id}")


def d_form(n: int, s: JetScalars) -> GaussianRational:
    m, h = n // 2, s.hprime
    return _sum([
        _F("D0", n, m + 2) * h,
        _F("D1", n, m) * s.S_a,
        _F("D2", n, m + 1) * s.S_a,
        _F("D3", n, m + 1) * (h * s.P_tt),
        _F("D4", n, m) * (h * s.P_tn),
        _F("D5", n, m + 1) * (h * s.P_tn),
        _F("D4", n, m) * (-h * s.T),
        _F("D6", n, m + 1) * (h * s.T),
        _F("D7", n, m + 1) * (-s.G),
        _F("D8", n, m + 1) * s.G,
    ])


def phi_d_form(n: int, jet: JJet) -> PiVolScalar:
    _check_n(n)
    return to_pivol(d_form(n, jet_scalars(jet)), "D-form")


def final_form_coefficients(n: int) -> dict:
    """Rational coefficients (units pi * Vol) of h', h' P_tt, h' P_tn and G."""
    _check_n(n)
    m = n // 2
    tr = Fraction(2 ** m)
    f = factorial
    return {
        "hprime": -tr * n * (n ** 4 - 5 * n ** 3 - 16 * n ** 2 + 68 * n - 48) * Fraction(1, 2 ** (4 + n))
        * f(n - 3) / (f(m + 2) * f(m)),
        "hprime_P_tt": tr * n * (n * n - 8 * n + 12) * Fraction(1, 2 ** (3 + n)) * f(n - 3) / (f(m + 1) * f(m)),
        "hprime_P_tn": tr * Fraction(-2 * n * n + 7 * n - 2, n + 2) * Fraction(1, 2 ** n)
        * f(n - 3) / (f(m) * f(m - 2)),
        "G": -tr * (n * n - 8 * n + 12) * Fraction(1, 2 ** (1 + n)) * f(n - 2) / (f(m + 1) * f(m - 1)),
    }


def final_form(n: int, s: JetScalars) -> Fraction:
    c = final_form_coefficients(n)
    h = s.hprime
    return c["hprime"] * h + c["hprime_P_tt"] * h * s.P_tt + c["hprime_P_tn"] * h * s.P_tn + c["G"] * s.G


def phi_final_form(n: int, jet: JJet) -> PiVolScalar:
    return PiVolScalar(final_form(n, jet_scalars(jet)))


def theorem_bracket_parts(n: int, jet: JJet | JetScalars) -> dict:
    """The three K-weighted pieces and the nabla-J piece, each over pi * Vol."""
    _check_n(n)
    s = jet if isinstance(jet, JetScalars) else jet_scalars(jet)
    m = n // 2
    f = factorial
    K = -Fraction(n - 1, 2) * s.hprime
    pre = Fraction(2) ** ((4 - n) // 2)
    c0 = Fraction((n - 2) ** 2, n * n + n - 2) * f(n - 3) / (f(m) * f(m - 2))
    c1 = Fraction(n * (n * n - 8 * n + 12), 8 * (n - 1)) * f(n - 3) / (f(m + 1) * f(m))
    c2 = Fraction(n * n - 3 * n - 2, n * n + n - 2) * f(n - 3) / (f(m) * f(m - 2))
    cg = Fraction(1, 2 ** ((2 + n) // 2)) * (n * n - 8 * n + 12) * f(n - 2) / (f(m + 1) * f(m - 1))
    return {
        "K": K,
        "prefactor": pre,
        "constant": c0,
        "J_in2": s.J_in2 * c1,
        "J_nn2": -(s.J_nn ** 2) * c2,
        "nabla": -cg * s.G_full,
    }


def theorem_form(n: int, s: JetScalars) -> Fraction:
    p = theorem_bracket_parts(n, s)
    return p["prefactor"] * p["K"] * (p["constant"] + p["J_in2"] + p["J_nn2"]) + p["nabla"]


def theorem_boundary_integrand(n: int, jet: JJet) -> PiVolScalar:
    return PiVolScalar(theorem_form(n, jet_scalars(jet)))


# -- interior density ------------------------------------------------------------------

INTERIOR_SLOTS = ("RJJ", "G1", "G2", "G3", "G4", "G5", "s")


@dataclass(frozen=True)
class InteriorInvariants:
    RJJ: Fraction = Fraction(0)
    G1: Fraction = Fraction(0)
    G2: Fraction = Fraction(0)
    G3: Fraction = Fraction(0)
    G4: Fraction = Fraction(0)
    G5: Fraction = Fraction(0)
    s: Fraction = Fraction(0)

    @classmethod
    def from_json(cls, obj: dict) -> "InteriorInvariants":
        from .exact import parse_fraction

        unknown = set(obj) - set(INTERIOR_SLOTS)
        if unknown:
            raise ValueError(f"unknown invariant slots: {sorted(unknown)}")
        return cls(**{k: parse_fraction(str(obj[k])) for k in INTERIOR_SLOTS if k in obj})


def interior_integrand(inv: InteriorInvariants, n: int) -> Fraction:
    """Coefficient of pi^{n/2} in the interior density."""
    _check_n(n)
    m = n // 2
    bracket = (
        Fraction(1, 4) * inv.RJJ - Fraction(1, 2) * inv.G1 - Fraction(1, 2) * inv.G2
        - Fraction(1, 4) * inv.G3 - Fraction(1, 4) * inv.G4 + Fraction(1, 4) * inv.G5
        - Fraction(5, 12) * inv.s
    )
    return Fraction(n - 2) / factorial(m - 1) * 2 ** m * bracket
