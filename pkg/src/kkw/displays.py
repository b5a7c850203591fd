"""Transcriptions of the intermediate symbol displays, restricted to |xi'| = 1.

Each function returns a Multivector over xi'-polynomials with PoleRational
coefficients, in the same ring the pipeline produces after restriction, so the
two can be compared exactly modulo |xi'|^2 = 1.
"""
from __future__ import annotations

from fractions import Fraction

from .clifford import Multivector
from .exact import I, ONE, ZERO, GaussianRational
from .jets import JJet, nabla_J_all
from .poly import Poly, pack
from .ratfun import ONE_RF, ZERO_RF, PoleRational


def rf(num, p: int = 0, q: int = 0) -> PoleRational:
    return PoleRational([GaussianRational.coerce(c) for c in num], p, q)


def one_plus_xi2(k: int) -> PoleRational:
    """(1 + xi_n^2)^{-k}."""
    return PoleRational([ONE], k, k)


class Restricted:
    """Building blocks in the restricted ring for one jet."""

    def __init__(self, jet: JJet):
        self.jet = jet
        self.n = jet.n
        self.t = jet.n - 1  # tangential count, also the normal index
        self.hp = GaussianRational.coerce(jet.hprime)
        self._nabla = None

    def const(self, c) -> Poly:
        if isinstance(c, PoleRational):
            return Poly({0: c} if c else {}, ZERO_RF)
        return Poly({0: PoleRational([GaussianRational.coerce(c)])} if c else {}, ZERO_RF)

    def xi(self, i: int) -> Poly:
        exps = [0] * self.t
        exps[i] = 1
        return Poly({pack(exps): ONE_RF}, ZERO_RF)

    def vec(self, coeffs) -> Multivector:
        terms = {}
        for h, c in enumerate(coeffs):
            if not isinstance(c, Poly):
                c = self.const(c)
            if c:
                terms[1 << h] = c
        return Multivector(self.n, terms)

    def e(self, h: int) -> Multivector:
        return Multivector.generator(self.n, h + 1, self.const(1))

    def scal(self, f: PoleRational) -> Poly:
        return self.const(f)

    def row(self, M, p: int, hmask=None) -> Multivector:
        """sum_h M[p][h] e_h."""
        return self.vec([M[p][h] if (hmask is None or hmask(h)) else 0 for h in range(self.n)])

    def xi_rows(self, M, hmask=None, pmask=None) -> Multivector:
        """sum_{p<n} xi_p sum_h M[p][h] e_h."""
        coeffs = []
        for h in range(self.n):
            c = Poly({}, ZERO_RF)
            if hmask is None or hmask(h):
                for p in range(self.t):
                    if (pmask is None or pmask(p)) and M[p][h]:
                        c = c + self.xi(p) * PoleRational([GaussianRational.coerce(M[p][h])])
            coeffs.append(c)
        return self.vec(coeffs)

    @property
    def V_t(self) -> Multivector:
        return self.xi_rows(self.jet.A)

    @property
    def V_n(self) -> Multivector:
        return self.row(self.jet.A, self.t)

    @property
    def nabla(self):
        if self._nabla is None:
            self._nabla = nabla_J_all(self.jet)
        return self._nabla

    def c_nabla_xistar(self, alpha: int) -> Multivector:
        """c[(nabla_{e_alpha} J)(xi*)] restricted: tangential xi_b plus xi_n (as a PoleRational)."""
        N = self.nabla[alpha]
        coeffs = []
        for g in range(self.n):
            c = Poly({}, ZERO_RF)
            for b in range(self.t):
                if N[g][b]:
                    c = c + self.xi(b) * PoleRational([GaussianRational.coerce(N[g][b])])
            if N[g][self.t]:
                c = c + self.const(rf([0, N[g][self.t]]))
            coeffs.append(c)
        return self.vec(coeffs)


def display_pi_plus_dxi_sigma_m1(jet: JJet, i: int) -> Multivector:
    """pi^+ d_{xi_i} sigma_{-1}(D_J^{-1}), i tangential (three-term display)."""
    R = Restricted(jet)
    A = jet.A
    t = R.t
    out = R.row(A, i) * R.scal(rf([Fraction(1, 2)], 1, 0))
    out = out + R.V_t * (R.xi(i) * rf([2 * I, -1], 2, 0) * Fraction(1, 2))
    out = out - R.V_n * (R.xi(i) * rf([Fraction(1, 2)], 2, 0))
    return out


def display_pi_plus_dxn_sigma_m1(jet: JJet) -> Multivector:
    """pi^+ d_{x_n} sigma_{-1}(D_J^{-1}) (case a-II, six terms)."""
    R = Restricted(jet)
    A, DA, t = jet.A, jet.DA, R.t
    half = Fraction(1, 2)
    tang = lambda h: h < t
    s1 = R.scal(rf([half], 1, 0))
    si = R.scal(rf([I * half], 1, 0))
    out = R.xi_rows(DA[t]) * s1
    out = out + R.row(DA[t], t) * si
    out = out + R.xi_rows(A, hmask=tang) * (s1 * (R.hp * half))
    out = out + R.row(A, t, hmask=tang) * (si * (R.hp * half))
    out = out + R.V_t * R.scal(rf([2 * I, -1], 2, 0) * (R.hp / 4))
    out = out - R.V_n * R.scal(rf([R.hp / 4], 2, 0))
    return out


def display_pi_plus_dxin_sigma_m1(jet: JJet) -> Multivector:
    """pi^+ d_{xi_n} sigma_{-1}(D_J^{-1}) (case a-III, two terms)."""
    R = Restricted(jet)
    out = R.V_t * R.scal(rf([Fraction(-1, 2)], 2, 0))
    out = out - R.V_n * R.scal(rf([I / 2], 2, 0))
    return out


def display_sigma_mn2(jet: JJet) -> Multivector:
    """sigma_{-n+2}(D_J^{-n+3}) at x0 with |xi'| = 1 (case b display, thirteen lines)."""
    R = Restricted(jet)
    n, t, A, DA, hp = R.n, R.t, jet.A, jet.DA, R.hp
    m = n // 2
    tang = lambda h: h < t
    en = R.e(t)
    out = Multivector(n)

    # -1/4 (1+xi_n^2)^{1-n/2} h' sum_{mu, nu<n} a^mu_nu c(dx_mu) c(dx_n) c(dx_nu)
    acc = Multivector(n)
    for nu in range(t):
        col = R.vec([A[mu][nu] for mu in range(n)])
        acc = acc + col * en * R.e(nu)
    out = out + acc * R.scal(one_plus_xi2(m - 1) * (-hp / 4))

    # -(n-2)/4 (..)^{-n/2} h' sum xi_k xi_lambda a^lambda_omega c(dx_k) c(dx_n) c(dx_omega)
    xi_t = R.vec([R.xi(k) for k in range(t)] + [0])
    out = out + xi_t * en * R.V_t * R.scal(one_plus_xi2(m) * (-(n - 2) * hp / 4))
    # -(n-2) xi_n/4 (..)^{-n/2} h' sum xi_k a^n_omega c(dx_k) c(dx_n) c(dx_omega)
    out = out + xi_t * en * R.V_n * R.scal(rf([0, 1], m, m) * (-(n - 2) * hp / 4))

    c1 = n * n - 3 * n + 2
    c2 = 2 * n * n - 5 * n + 2
    out = out + R.V_t * R.scal(rf([0, c2, 0, c1], m + 1, m + 1) * (hp / 4))
    out = out + R.V_n * R.scal(rf([0, 0, c2, 0, c1], m + 1, m + 1) * (hp / 4))

    # nabla J terms: sum_alpha c[J e_alpha] c[(nabla_alpha J) xi*] (xi'-part, then xi_n part)
    left = Multivector(n)
    for a in range(n):
        left = left + R.row(A, a) * R.c_nabla_xistar(a)
    out = out + left * R.V_t * R.scal(one_plus_xi2(m) * Fraction(n - 2, 2))
    out = out + left * R.V_n * R.scal(rf([0, 1], m, m) * Fraction(n - 2, 2))

    # derivative-of-a terms
    dj_tang = Multivector(n)
    for j in range(t):
        dj_tang = dj_tang + R.xi_rows(DA[j]) * R.xi(j)
    out = out + dj_tang * R.scal(one_plus_xi2(m) * (-(n - 2)))
    out = out + R.xi_rows(DA[t]) * R.scal(rf([0, 1], m, m) * (-(n - 2)))
    dn_tang = Multivector(n)
    for j in range(t):
        dn_tang = dn_tang + R.row(DA[j], t) * R.xi(j)
    out = out + dn_tang * R.scal(rf([0, 1], m, m) * (-(n - 2)))
    out = out + R.row(DA[t], t) * R.scal(rf([0, 0, 1], m, m) * (-(n - 2)))

    # d_{x_n} c(dx_h) = h'/2 c(dx_h), h < n
    out = out + R.xi_rows(A, hmask=tang) * R.scal(rf([0, 1], m, m) * (-(n - 2) * hp / 2))
    out = out + R.row(A, t, hmask=tang) * R.scal(rf([0, 0, 1], m, m) * (-(n - 2) * hp / 2))
    return out


def _sum_cJdx_times(R: Restricted, per_j) -> Multivector:
    out = Multivector(R.n)
    for j in range(R.n):
        v = per_j(j)
        if v:
            out = out + R.row(R.jet.A, j) * v
    return out


def display_pi_plus_A1(jet: JJet) -> Multivector:
    R = Restricted(jet)
    n, t, A, hp = R.n, R.t, jet.A, R.hp
    S = Multivector(n)
    for nu in range(t):
        S = S + R.vec([A[mu][nu] for mu in range(n)]) * R.e(t) * R.e(nu)
    Vt, Vn = R.V_t, R.V_n
    k = hp / 16
    out = Vn * S * Vn * R.scal(rf([0, I], 2, 0) * k)
    out = out + Vt * S * Vn * R.scal(rf([I], 2, 0) * k)
    out = out + Vn * S * Vt * R.scal(rf([I], 2, 0) * k)
    out = out + Vt * S * Vt * R.scal(rf([2, I], 2, 0) * k)
    return out


def display_pi_plus_A2(jet: JJet) -> Multivector:
    R = Restricted(jet)
    n, t, A, DA, hp = R.n, R.t, jet.A, jet.DA, R.hp
    tang = lambda h: h < t
    Vt, Vn = R.V_t, R.V_n
    Dn = _sum_cJdx_times(R, lambda j: R.row(DA[j], t))
    Dt = _sum_cJdx_times(R, lambda j: R.xi_rows(DA[j]))
    q = Fraction(-1, 4)
    out = Vn * Dn * R.scal(rf([0, I], 2, 0) * q)
    out = out + Vt * Dn * R.scal(rf([I], 2, 0) * q)
    out = out + Vn * Dt * R.scal(rf([I], 2, 0) * q)
    out = out + Vt * Dt * R.scal(rf([2, I], 2, 0) * q)
    an_t = R.row(A, t, hmask=tang)
    ap_t = R.xi_rows(A, hmask=tang)
    q2 = -hp / 8
    out = out + Vn * Vn * an_t * R.scal(rf([0, I], 2, 0) * q2)
    out = out + Vt * Vn * an_t * R.scal(rf([I], 2, 0) * q2)
    out = out + Vn * Vn * ap_t * R.scal(rf([I], 2, 0) * q2)
    out = out + Vt * Vn * ap_t * R.scal(rf([2, I], 2, 0) * q2)
    return out


def display_minus_hp_pi_plus_A3(jet: JJet) -> Multivector:
    R = Restricted(jet)
    hp = R.hp
    Vt, Vn = R.V_t, R.V_n
    k = hp / 16
    out = Vn * Vn * Vn * R.scal(rf([0, 3, I], 3, 0) * k)
    out = out + Vt * Vn * Vn * R.scal(rf([3, I], 3, 0) * k)
    out = out + Vn * Vn * Vt * R.scal(rf([3, I], 3, 0) * k)
    out = out + Vt * Vn * Vt * R.scal(rf([-8 * I, 9, 3 * I], 3, 0) * k)
    return out
