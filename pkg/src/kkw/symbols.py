"""Clifford-valued symbols at the boundary point x0.

A symbol is a :class:`~kkw.clifford.Multivector` whose coefficients are
:class:`~kkw.poly.Poly` objects over Q(i) in the variables

    xi_1 .. xi_n  (indices 0 .. n-1),
    w = 1/|xi|^2  (index n),
    u = |xi'|^2   (index n+1).

First x-derivatives at x0 are carried alongside the value in an :class:`XJet`,
so derivatives are always taken before the restriction |xi'| = 1.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .clifford import Multivector
from .exact import I, ONE, ZERO, GaussianRational
from .jets import ConnectionJet, JJet, connection_jet, metric_inverse_derivative, nabla_J_all
from .poly import BITS, Poly, pack, unpack, var_unit
from .ratfun import ZERO_RF, PoleRational


class SymbolRing:
    """Variables and derivations for a fixed dimension n."""

    def __init__(self, n: int):
        if n < 4 or n % 2:
            raise ValueError(f"n must be even and >= 4, got {n}")
        self.n = n
        self.W = n
        self.U = n + 1
        self.nvars = n + 2

    # -- constructors -------------------------------------------------------
    def const(self, c) -> Poly:
        return Poly.constant(GaussianRational.coerce(c), ZERO)

    def mono(self, coeff, **powers) -> Poly:
        """``mono(c, xi=[...], w=k, u=k)``."""
        exps = [0] * self.nvars
        for i, e in enumerate(powers.get("xi", ())):
            exps[i] = e
        exps[self.W] = powers.get("w", 0)
        exps[self.U] = powers.get("u", 0)
        return Poly.monomial(exps, GaussianRational.coerce(coeff), ZERO)

    def xi(self, i: int) -> Poly:
        return Poly.variable(i, ONE, ZERO)

    def w(self, k: int = 1) -> Poly:
        return self.mono(1, w=k)

    def u(self) -> Poly:
        return self.mono(1, u=1)

    # -- derivations ----------------------------------------------------------
    def d_xi(self, p: Poly, i: int) -> Poly:
        """d/dxi_i, with dw/dxi_i = -2 xi_i w^2 and du/dxi_i = 2 xi_i (i < n)."""
        out = p.partial(i)
        pw = p.partial(self.W)
        if pw:
            out = out + pw * self.mono(-2, xi=[0] * i + [1], w=2)
        if i < self.n - 1:
            pu = p.partial(self.U)
            if pu:
                out = out + pu * self.mono(2, xi=[0] * i + [1])
        return out

    def restrict(self, p: Poly) -> Poly:
        """Set u = 1 and w = 1/(1 + xi_n^2); the result lives in xi' only."""
        n = self.n
        keep = (1 << (BITS * (n - 1))) - 1
        sn = BITS * (n - 1)
        sw = BITS * self.W
        mask = (1 << BITS) - 1
        groups: dict = {}
        for mono, c in p.terms.items():
            b = (mono >> sn) & mask
            k = (mono >> sw) & mask
            slot = groups.setdefault(mono & keep, {}).setdefault(k, {})
            slot[b] = slot.get(b, ZERO) + c
        out = {}
        for key, by_k in groups.items():
            total = ZERO_RF
            for k, dense in by_k.items():
                num = [ZERO] * (max(dense) + 1)
                for b, c in dense.items():
                    num[b] = c
                total = total + PoleRational(num, k, k)
            if total:
                out[key] = total
        return Poly(out, ZERO_RF)

    # -- multivector helpers ------------------------------------------------------
    def mv_d_xi(self, m: Multivector, i: int) -> Multivector:
        return m.map_coefficients(lambda p: self.d_xi(p, i))

    def mv_restrict(self, m: Multivector) -> Multivector:
        return m.map_coefficients(self.restrict)

    def vector(self, coeffs) -> Multivector:
        """sum_h coeffs[h] e_{h+1} with Poly or scalar coefficients."""
        terms = {}
        for h, c in enumerate(coeffs):
            if not isinstance(c, Poly):
                c = self.const(c)
            if c:
                terms[1 << h] = c
        return Multivector(self.n, terms)

    def scalar_mv(self, p) -> Multivector:
        if not isinstance(p, Poly):
            p = self.const(p)
        return Multivector.scalar(self.n, p)


def _zero_like(x):
    if isinstance(x, Multivector):
        return Multivector(x.n)
    return Poly({}, x.zero)


class XJet:
    """Value and first x-derivatives at x0 (``d[j]`` = d/dx_j, 0-based)."""

    __slots__ = ("value", "d")

    def __init__(self, value, d: dict | None = None):
        self.value = value
        self.d = {j: v for j, v in (d or {}).items() if v}

    @classmethod
    def const(cls, value) -> "XJet":
        return cls(value, {})

    def deriv(self, j: int):
        v = self.d.get(j)
        return v if v is not None else _zero_like(self.value)

    def __add__(self, other: "XJet") -> "XJet":
        d = dict(self.d)
        for j, v in other.d.items():
            d[j] = d[j] + v if j in d else v
        return XJet(self.value + other.value, d)

    def __neg__(self) -> "XJet":
        return XJet(-self.value, {j: -v for j, v in self.d.items()})

    def __sub__(self, other: "XJet") -> "XJet":
        return self + (-other)

    def __mul__(self, other) -> "XJet":
        if not isinstance(other, XJet):
            return XJet(self.value * other, {j: v * other for j, v in self.d.items()})
        d = {}
        for j, v in self.d.items():
            d[j] = v * other.value
        for j, v in other.d.items():
            t = self.value * v
            d[j] = d[j] + t if j in d else t
        return XJet(self.value * other.value, d)

    def __rmul__(self, other) -> "XJet":
        return XJet(other * self.value, {j: other * v for j, v in self.d.items()})

    def map(self, fn: Callable) -> "XJet":
        return XJet(fn(self.value), {j: fn(v) for j, v in self.d.items()})


class SymbolBuilder:
    """Symbols of D_J and its powers at x0 for one jet."""

    def __init__(self, jet: JJet, conn: ConnectionJet | None = None):
        self.jet = jet
        self.n = n = jet.n
        self.ring = SymbolRing(n)
        self.conn = conn or connection_jet(jet.hprime, n)
        self.hp = GaussianRational.coerce(jet.hprime)
        self._nabla = None
        self._cache: dict = {}

    # -- atoms -------------------------------------------------------------------
    def e(self, h: int) -> Multivector:
        return Multivector.generator(self.n, h + 1, self.ring.const(1))

    def cJdx(self, p: int) -> Multivector:
        """c[J(dx_p)] = c[J(e_p)] at x0 (constant coefficients)."""
        return self.ring.vector(self.jet.A[p])

    def c_vector(self, v) -> Multivector:
        return self.ring.vector(v)

    @property
    def nabla(self) -> list:
        if self._nabla is None:
            self._nabla = nabla_J_all(self.jet)
        return self._nabla

    def c_nablaJ_xistar(self, alpha: int) -> Multivector:
        """c[(nabla_{e_alpha} J)(xi*)] = sum_{b,g} xi_b N_alpha[g][b] e_g."""
        R, N = self.ring, self.nabla[alpha]
        coeffs = []
        for g in range(self.n):
            p = Poly({}, ZERO)
            for b in range(self.n):
                if N[g][b]:
                    p = p + R.xi(b) * GaussianRational.coerce(N[g][b])
            coeffs.append(p)
        return R.vector(coeffs)

    def cJxi(self) -> XJet:
        """c[J(xi)] with its x-derivatives (the c(dx_h) rule enters at j = n)."""
        if "cJxi" in self._cache:
            return self._cache["cJxi"]
        n, R, A, DA = self.n, self.ring, self.jet.A, self.jet.DA
        last = n - 1

        def covector(matrix, hmask=None) -> Multivector:
            coeffs = []
            for h in range(n):
                p = Poly({}, ZERO)
                if hmask is None or hmask(h):
                    for q in range(n):
                        if matrix[q][h]:
                            p = p + R.xi(q) * GaussianRational.coerce(matrix[q][h])
                coeffs.append(p)
            return R.vector(coeffs)

        value = covector(A)
        d = {}
        for j in range(n):
            dj = covector(DA[j])
            if j == last and self.jet.hprime:
                dj = dj + covector(A, lambda h: h < last) * (self.hp / 2)
            d[j] = dj
        out = XJet(value, d)
        self._cache["cJxi"] = out
        return out

    def w_pow(self, k: int) -> XJet:
        """w^k with d_{x_n} w^k = -k h'(0) u w^{k+1}."""
        R = self.ring
        if k == 0:
            return XJet.const(R.const(1))
        d = {}
        if self.jet.hprime:
            d[self.n - 1] = R.mono(-k * self.hp, w=k + 1, u=1)
        return XJet(R.w(k), d)

    # -- connection pieces --------------------------------------------------------------
    def spin_connection(self, i: int) -> Multivector:
        """sigma_i = -1/4 sum_{s,t} omega_{s,t}(e_i) c(e_s) c(e_t)."""
        out = Multivector(self.n)
        om = self.conn.omega[i]
        for s in range(self.n):
            for t in range(self.n):
                if om[s][t]:
                    out = out + self.e(s) * self.e(t) * (-GaussianRational.coerce(om[s][t]) / 4)
        return out

    def sigma0(self) -> Multivector:
        """-1/4 sum omega_{j,k}(e_i) c[J(e_i)] c(e_j) c(e_k)."""
        if "sigma0" in self._cache:
            return self._cache["sigma0"]
        out = Multivector(self.n)
        for i in range(self.n):
            om = self.conn.omega[i]
            for s in range(self.n):
                for t in range(self.n):
                    if om[s][t]:
                        term = self.cJdx(i) * self.e(s) * self.e(t)
                        out = out + term * (-GaussianRational.coerce(om[s][t]) / 4)
        self._cache["sigma0"] = out
        return out

    # -- symbols -------------------------------------------------------------------
    def sigma1(self) -> XJet:
        return self.cJxi() * I

    def sigma_m1(self) -> XJet:
        """i c[J(xi)] / |xi|^2."""
        return self.cJxi() * self.w_pow(1) * I

    def sigma_m2_parts(self) -> tuple[Multivector, Multivector, Multivector]:
        """The three pieces of sigma_{-2}(D_J^{-1}): the sigma_0 sandwich, the x-derivative term
        and the h'-term coming from d_{x_n}|xi|^2."""
        if "sigma_m2_parts" in self._cache:
            return self._cache["sigma_m2_parts"]
        R, n = self.ring, self.n
        cj = self.cJxi()
        X = cj.value
        first = X * self.sigma0() * X * R.w(2)
        inner = Multivector(n)
        for j in range(n):
            dj = cj.deriv(j)
            if dj:
                inner = inner + self.cJdx(j) * dj
        second = X * R.w(2) * inner
        third = Multivector(n)
        if self.jet.hprime:
            # d_{x_n}|xi|^2 = h'(0) u
            third = X * R.mono(-self.hp, w=3, u=1) * self.cJdx(n - 1) * X
        self._cache["sigma_m2_parts"] = (first, second, third)
        return first, second, third

    def sigma_m2(self) -> Multivector:
        """Second symbol of D_J^{-1} at x0."""
        if "sigma_m2" in self._cache:
            return self._cache["sigma_m2"]
        a, b, c = self.sigma_m2_parts()
        out = a + b + c
        self._cache["sigma_m2"] = out
        return out

    def sigma_mn3(self) -> XJet:
        """i c[J(xi)] |xi|^{-n+2}."""
        return self.cJxi() * self.w_pow(self.n // 2 - 1) * I

    def sigma_m3_inv_square(self) -> Multivector:
        """sigma_{-3}(D_J^{-2})."""
        R, n = self.ring, self.n
        mI = -I
        out = Multivector(n)
        # -2 sigma^k xi_k + Gamma^k xi_k
        lin = Multivector(n)
        for k in range(n):
            sk = self.spin_connection(k)
            if sk:
                lin = lin + sk * (R.xi(k) * GaussianRational(-2))
            gk = self.conn.gamma_contracted[k]
            if gk:
                lin = lin + R.scalar_mv(R.xi(k) * GaussianRational.coerce(gk))
        out = out + lin * R.mono(mI, w=2)
        nab = Multivector(n)
        for a in range(n):
            nab = nab + self.cJdx(a) * self.c_nablaJ_xistar(a)
        out = out + nab * R.mono(mI, w=2)
        dg = metric_inverse_derivative(n, self.jet.hprime)
        quad = Poly({}, ZERO)
        for j in range(n):
            for a in range(n):
                for b in range(n):
                    if dg[j][a][b]:
                        quad = quad + R.xi(j) * R.xi(a) * R.xi(b) * GaussianRational.coerce(2 * dg[j][a][b])
        if quad:
            out = out + R.scalar_mv(quad * R.mono(mI, w=3))
        return out

    def sigma_mn2(self) -> Multivector:
        """sigma_{-n+2}(D_J^{-n+3}) assembled left to right from the composition formula."""
        if "sigma_mn2" in self._cache:
            return self._cache["sigma_mn2"]
        R, n = self.ring, self.n
        m = n // 2 - 1
        cj = self.cJxi()
        s1 = cj.value * I
        out = self.sigma0() * R.w(m)
        # -i sum_j d_xi_j(w^m) d_x_j(sigma_1), and d_x_j sigma_1 = i d_x_j c[J(xi)]
        for j in range(n):
            dj = cj.deriv(j)
            if dj:
                out = out + dj * R.d_xi(R.w(m), j)
        brace = self.sigma_m3_inv_square() * (R.w(m - 1) * GaussianRational(Fraction(n - 2, 2)))
        dxw = self.w_pow(1).deriv(n - 1)
        if dxw:
            acc = Poly({}, ZERO)
            for k in range(0, n // 2 - 2):
                acc = acc + R.d_xi(R.w(n // 2 - k - 2), n - 1) * dxw * R.w(k)
            if acc:
                brace = brace + R.scalar_mv(acc * (-I))
        out = out + brace * s1
        self._cache["sigma_mn2"] = out
        return out

    # -- xi-derivatives of jets -----------------------------------------------------------
    def d_xi(self, x, i: int):
        if isinstance(x, XJet):
            return x.map(lambda m: self.ring.mv_d_xi(m, i))
        return self.ring.mv_d_xi(x, i)

    def restrict(self, m: Multivector) -> Multivector:
        return self.ring.mv_restrict(m)


def sphere_reduce(p: Poly, n: int) -> Poly:
    """Canonical form modulo |xi'|^2 = 1: xi_{n-1} appears with degree <= 1."""
    last = n - 2  # 0-based index of xi_{n-1}
    unit = var_unit(last)
    shift = BITS * last
    mask = (1 << BITS) - 1
    work = dict(p.terms)
    out: dict = {}
    while work:
        mono, c = work.popitem()
        e = (mono >> shift) & mask
        if e < 2:
            if mono in out:
                s = out[mono] + c
                if s:
                    out[mono] = s
                else:
                    del out[mono]
            else:
                out[mono] = c
            continue
        base = mono - 2 * unit
        targets = [(base, c)] + [(base + 2 * var_unit(k), -c) for k in range(last)]
        for key, val in targets:
            if key in work:
                s = work[key] + val
                if s:
                    work[key] = s
                else:
                    del work[key]
            else:
                work[key] = val
    return Poly(out, p.zero)


def mv_sphere_reduce(m: Multivector, n: int) -> Multivector:
    return m.map_coefficients(lambda p: sphere_reduce(p, n))


def mv_equal_on_sphere(a: Multivector, b: Multivector, n: int) -> bool:
    return mv_sphere_reduce(a - b, n) == Multivector(n)
