"""The five boundary cases: trace, sphere moments, pi^+ and the xi_n residue integral.

Every result is a rational ``q`` with the boundary density equal to
``q * pi * Vol(S^{n-2})`` per unit dx'.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .clifford import Multivector, trace_product
from .exact import I, GaussianRational, fraction_to_str
from .jets import JJet
from .poly import Poly
from .ratfun import ZERO_RF, NotDecayingError, PoleRational
from .sphere import integrate_polynomial
from .symbols import SymbolBuilder

CASES = ("aI", "aII", "aIII", "b", "c")

# (r, l, k, j, |alpha|) per case, as in the boundary sum
CASE_INDICES = {
    "aI": (-1, "-n+3", 0, 0, 1),
    "aII": (-1, "-n+3", 0, 1, 0),
    "aIII": (-1, "-n+3", 1, 0, 0),
    "b": (-1, "-n+2", 0, 0, 0),
    "c": (-2, "-n+3", 0, 0, 0),
}


class PipelineError(RuntimeError):
    pass


def case_prefactor(case_id: str) -> GaussianRational:
    """(-i)^{|alpha|+j+k+1} / (alpha! (j+k+1)!)."""
    _, _, k, j, a = CASE_INDICES[case_id]
    num = (-I) ** (a + j + k + 1)
    den = 1
    for t in range(2, j + k + 2):
        den *= t
    return num / den


@dataclass
class PiVolScalar:
    q: Fraction

    def __add__(self, other: "PiVolScalar") -> "PiVolScalar":
        return PiVolScalar(self.q + other.q)

    def to_json(self) -> str:
        return fraction_to_str(self.q)

    def __str__(self) -> str:
        return f"{fraction_to_str(self.q)} * pi * Vol(S^(n-2))"


def to_pivol(z: GaussianRational, what: str) -> PiVolScalar:
    if not z.is_real():
        raise PipelineError(f"{what}: non-real result {z}")
    return PiVolScalar(z.re)


@dataclass
class CaseReport:
    case: str
    n: int
    prefactor: GaussianRational
    trace_terms: int
    sphere_integrated: PoleRational
    result: PiVolScalar
    odd_terms_killed: int = 0

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "q": self.result.to_json(),
            "intermediates": {
                "prefactor": self.prefactor.to_json(),
                "trace_monomials": self.trace_terms,
                "odd_monomials_integrated_to_zero": self.odd_terms_killed,
                "after_sphere": self.sphere_integrated.to_json(),
            },
        }


def _pi_plus(m: Multivector) -> Multivector:
    def proj(p: Poly) -> Poly:
        try:
            return p.map_coefficients(lambda r: r.pi_plus())
        except NotDecayingError as exc:
            raise PipelineError(f"pi^+ on a non-decaying symbol coefficient: {exc}") from exc

    return m.map_coefficients(proj)


def _d_xin(m: Multivector) -> Multivector:
    """d/dxi_n on a restricted multivector."""
    return m.map_coefficients(lambda p: p.map_coefficients(lambda r: r.differentiate()))


def _odd_count(p: Poly, n: int) -> int:
    return sum(1 for exps, _ in p.exponent_items(n - 1) if any(e % 2 for e in exps))


class CaseRunner:
    def __init__(self, jet: JJet):
        jet.validate()
        if jet.n < 6:
            raise PipelineError("the boundary computation needs n >= 6")
        self.jet = jet
        self.n = jet.n
        self.B = SymbolBuilder(jet)

    def _R(self, m: Multivector) -> Multivector:
        return self.B.restrict(m)

    def operands(self, case_id: str) -> list[tuple[Multivector, Multivector]]:
        """Restricted (left, right) pairs whose traces are summed for the case."""
        B, n = self.B, self.n
        last = n - 1
        if case_id == "aI":
            s1 = B.sigma_m1()
            s3 = B.sigma_mn3()
            ds3 = B.d_xi(s3, last)
            pairs = []
            for i in range(last):
                left = _pi_plus(self._R(B.d_xi(s1.value, i)))
                right = self._R(ds3.deriv(i))
                pairs.append((left, right))
            return pairs
        if case_id == "aII":
            left = _pi_plus(self._R(B.sigma_m1().deriv(last)))
            right = self._R(B.d_xi(B.d_xi(B.sigma_mn3().value, last), last))
            return [(left, right)]
        if case_id == "aIII":
            left = _d_xin(_pi_plus(self._R(B.sigma_m1().value)))
            right = self._R(B.d_xi(B.sigma_mn3(), last).deriv(last))
            return [(left, right)]
        if case_id == "b":
            left = _pi_plus(self._R(B.sigma_m1().value))
            right = self._R(B.d_xi(B.sigma_mn2(), last))
            return [(left, right)]
        if case_id == "c":
            left = _pi_plus(self._R(B.sigma_m2()))
            right = self._R(B.d_xi(B.sigma_mn3().value, last))
            return [(left, right)]
        raise PipelineError(f"unknown case {case_id!r}")

    def run(self, case_id: str) -> CaseReport:
        n = self.n
        total = Poly({}, ZERO_RF)
        for left, right in self.operands(case_id):
            total = total + trace_product(left, right, zero=Poly({}, ZERO_RF))
        odd = _odd_count(total, n)
        sph = integrate_polynomial(total, n)
        if not isinstance(sph, PoleRational):
            sph = PoleRational.constant(sph)
        try:
            r = sph.integrate_real_line()
        except NotDecayingError as exc:
            raise PipelineError(f"case {case_id}: {exc}") from exc
        pre = case_prefactor(case_id)
        value = to_pivol(pre * r, f"case {case_id}")
        return CaseReport(case_id, n, pre, len(total), sph, value, odd)


def phi_case(case_id: str, n: int, jet: JJet) -> CaseReport:
    if jet.n != n:
        raise PipelineError(f"jet has n={jet.n}, requested n={n}")
    return CaseRunner(jet).run(case_id)


@dataclass
class TotalReport:
    n: int
    cases: dict = field(default_factory=dict)

    @property
    def total(self) -> PiVolScalar:
        out = PiVolScalar(Fraction(0))
        for c in CASES:
            out = out + self.cases[c].result
        return out

    def to_json(self) -> dict:
        return {"total": self.total.to_json(), "cases": [self.cases[c].to_json() for c in CASES]}


def phi_total(n: int, jet: JJet) -> TotalReport:
    if jet.n != n:
        raise PipelineError(f"jet has n={jet.n}, requested n={n}")
    runner = CaseRunner(jet)
    rep = TotalReport(n)
    for c in CASES:
        rep.cases[c] = runner.run(c)
    return rep
