"""The chain of displayed forms from the five case results down to the theorem bracket.

Each stage is a rational multiple of pi * Vol(S^{n-2}).  Consecutive stages are
compared exactly; the first unequal pair is the localized finding.  To say *which*
term moved, every scalar stage is also expanded in the basis

    h', h' P_tn, h' T, S_a, G

after imposing the pointwise jet identities (P_na = 1, P_ta = n-1, S_b = -S_a, ...),
and the basis coefficients of the two sides are compared.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import closed_forms as cf
from .exact import GaussianRational, fraction_to_str
from .jets import JJet, JetScalars, jet_scalars

BASIS = ("hprime", "hprime*P_tn", "hprime*T", "S_a", "G")


def _real(z) -> Fraction:
    if isinstance(z, GaussianRational):
        if not z.is_real():
            raise ValueError(f"non-real form value {z}")
        return z.re
    return Fraction(z)


def _case_forms(n: int, s: JetScalars) -> Fraction:
    return sum((_real(f(n, s)) for f in (cf.phi1_form, cf.phi2_form, cf.phi3_form, cf.phi4_form, cf.phi5_form)),
               Fraction(0))


def _regrouped(n: int, s: JetScalars) -> Fraction:
    return _real(cf.phi123_combined_form(n, s)) + _real(cf.phi4_form(n, s)) + _real(cf.phi5_form(n, s))


@dataclass(frozen=True)
class Stage:
    key: str
    label: str
    fn: Callable[[int, JetScalars], Fraction] | None  # None for the pipeline stage


STAGES = (
    Stage("pipeline", "sum of the five computed cases", None),
    Stage("case_forms", "sum of the five per-case closed forms", _case_forms),
    Stage("regrouped", "Phi_1..3 regrouped with A11..A14, plus Phi_4 and Phi_5", _regrouped),
    Stage("d_form", "nine-constant D-form", lambda n, s: _real(cf.d_form(n, s))),
    Stage("final_form", "four-term final form", cf.final_form),
    Stage("theorem", "boundary bracket of the main theorem", cf.theorem_form),
)


def synthetic_scalars(n: int, hprime=0, S_a=0, P_tn=0, T=0, G=0) -> JetScalars:
    """Scalars obeying the pointwise identities; P_tn must be 0 or 1 so that J_nn stays rational."""
    if P_tn not in (0, 1):
        raise ValueError("P_tn must be 0 or 1 here")
    F = Fraction
    return JetScalars(
        S_a=F(S_a), S_b=-F(S_a), S_full=F(S_a),
        P_tt=F(n - 1 - P_tn), P_tn=F(P_tn), P_ta=F(n - 1), P_na=F(1), P_nt=F(P_tn),
        T=F(T), G=F(G), G_full=F(G), G_ni=F(0), G_in=-F(G),
        J_nn=F(1 - P_tn), J_in2=F(1), hprime=F(hprime),
    )


def basis_coefficients(fn: Callable[[int, JetScalars], Fraction], n: int) -> dict:
    at = lambda **kw: fn(n, synthetic_scalars(n, **kw))  # noqa: E731
    base = at()
    if base:
        raise ValueError("form has a jet-independent part")
    h = at(hprime=1)
    return {
        "hprime": h,
        "hprime*P_tn": at(hprime=1, P_tn=1) - h,
        "hprime*T": at(hprime=1, T=1) - h,
        "S_a": at(S_a=1),
        "G": at(G=1),
    }


@dataclass
class Link:
    left: str
    right: str
    left_value: Fraction
    right_value: Fraction
    differing_terms: dict = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.left_value == self.right_value

    def to_json(self) -> dict:
        out = {
            "link": f"{self.left} -> {self.right}",
            "verdict": "match" if self.match else "mismatch",
        }
        if not self.match:
            out["left_value"] = fraction_to_str(self.left_value)
            out["right_value"] = fraction_to_str(self.right_value)
            if self.differing_terms:
                out["differing_terms"] = {
                    k: [fraction_to_str(a), fraction_to_str(b)] for k, a, b in
                    ((k, *v) for k, v in self.differing_terms.items())
                }
        return out


@dataclass
class ChainReport:
    n: int
    values: dict
    links: list

    @property
    def first_failure(self) -> Link | None:
        return next((lk for lk in self.links if not lk.match), None)

    def to_json(self) -> dict:
        ff = self.first_failure
        return {
            "values": {k: fraction_to_str(v) for k, v in self.values.items()},
            "links": [lk.to_json() for lk in self.links],
            "first_failure": None if ff is None else ff.to_json(),
        }


def _differing(n: int, left: Stage, right: Stage) -> dict:
    if left.fn is None or right.fn is None:
        return {}
    a = basis_coefficients(left.fn, n)
    b = basis_coefficients(right.fn, n)
    return {k: (a[k], b[k]) for k in BASIS if a[k] != b[k]}


def evaluate_chain(n: int, jet: JJet, pipeline_total: Fraction | None = None) -> ChainReport:
    s = jet_scalars(jet)
    stages = [st for st in STAGES if st.fn is not None or pipeline_total is not None]
    values = {}
    for st in stages:
        values[st.key] = pipeline_total if st.fn is None else st.fn(n, s)
    links = []
    for a, b in zip(stages, stages[1:]):
        lk = Link(a.key, b.key, values[a.key], values[b.key])
        if not lk.match:
            lk.differing_terms = _differing(n, a, b)
        links.append(lk)
    return ChainReport(n, values, links)


def chain_table(n: int) -> dict:
    """Basis coefficients of every closed-form stage; jet independent."""
    return {st.key: basis_coefficients(st.fn, n) for st in STAGES if st.fn is not None}
