"""First-order jets of the almost-product structure and the collar metric at x0.

Indices are 0-based in code: index ``n-1`` is the normal direction.  ``A[p][h]``
holds a^p_h, so that c[J(dx_p)] = sum_h A[p][h] e_h, and ``DA[j][p][h]`` holds
the x_j-derivative of a^p_h at x0.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exact import fraction_to_str, parse_fraction

Matrix = list  # list[list[Fraction]]


class JetError(ValueError):
    pass


def zeros(n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(n)]


def identity(n: int) -> Matrix:
    m = zeros(n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0])
    out = [[Fraction(0)] * n for _ in range(len(a))]
    for i, row in enumerate(a):
        acc = out[i]
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def madd(a: Matrix, b: Matrix, s=1) -> Matrix:
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


@dataclass
class JJet:
    n: int
    A: Matrix
    DA: list
    hprime: Fraction

    def __post_init__(self):
        n = self.n
        if n < 4 or n % 2:
            raise JetError(f"n must be even and >= 4, got {n}")
        if len(self.A) != n or any(len(r) != n for r in self.A):
            raise JetError("A must be n x n")
        if len(self.DA) != n or any(len(m) != n or any(len(r) != n for r in m) for m in self.DA):
            raise JetError("DA must hold n matrices of size n x n")
        self.A = [[Fraction(x) for x in r] for r in self.A]
        self.DA = [[[Fraction(x) for x in r] for r in m] for m in self.DA]
        self.hprime = Fraction(self.hprime)

    def violations(self) -> list[str]:
        """Names of the jet constraints that fail (empty when the jet is valid)."""
        n, A = self.n, self.A
        out = []
        if A != transpose(A):
            out.append("A is not symmetric")
        if matmul(A, A) != identity(n):
            out.append("A^2 != I")
        for j, D in enumerate(self.DA):
            if D != transpose(D):
                out.append(f"DA[{j}] is not symmetric")
            if not is_zero(madd(matmul(D, A), matmul(A, D))):
                out.append(f"DA[{j}] does not anticommute with A")
        return out

    def validate(self) -> "JJet":
        bad = self.violations()
        if bad:
            raise JetError("; ".join(bad))
        return self

    def scaled(self, lam) -> "JJet":
        """Same A, with DA and h'(0) multiplied by ``lam``."""
        lam = Fraction(lam)
        return JJet(self.n, self.A, [[[x * lam for x in r] for r in m] for m in self.DA], self.hprime * lam)

    # -- wire format ---------------------------------------------------------
    def to_json(self) -> dict:
        enc = lambda m: [[fraction_to_str(x) for x in r] for r in m]
        return {"n": self.n, "A": enc(self.A), "DA": [enc(m) for m in self.DA], "hprime": fraction_to_str(self.hprime)}

    @classmethod
    def from_json(cls, obj: dict, where: str = "jet") -> "JJet":
        try:
            n = int(obj["n"])
            A = [[parse_fraction(x) for x in r] for r in obj["A"]]
            DA = [[[parse_fraction(x) for x in r] for r in m] for m in obj["DA"]]
            hp = parse_fraction(obj["hprime"])
        except KeyError as exc:
            raise JetError(f"{where}: missing field {exc.args[0]!r}") from exc
        except (TypeError, ValueError) as exc:
            raise JetError(f"{where}: {exc}") from exc
        if len(A) != n or any(len(r) != n for r in A):
            raise JetError(f"{where}: A must be {n}x{n}")
        if len(DA) != n or any(len(m) != n or any(len(r) != n for r in m) for m in DA):
            raise JetError(f"{where}: DA must be {n}x{n}x{n}")
        try:
            return cls(n, A, DA, hp).validate()
        except JetError as exc:
            raise JetError(f"{where}: {exc}") from None


def load_jet_file(path: str | Path) -> list[JJet]:
    """A jet file holds one jet object or a list of them."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JetError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    items = data if isinstance(data, list) else [data]
    return [JJet.from_json(obj, where=f"{path}[{k}]") for k, obj in enumerate(items)]


def trivial_jet(n: int, A: Matrix | None = None) -> JJet:
    return JJet(n, A or identity(n), [zeros(n) for _ in range(n)], Fraction(0))


def identity_jet(n: int, hprime=1) -> JJet:
    """J = id with a curved collar."""
    return JJet(n, identity(n), [zeros(n) for _ in range(n)], Fraction(hprime))


# -- random generation --------------------------------------------------------

_TRIPLES = ((3, 4, 5), (5, 12, 13), (8, 15, 17))


def _small_rational(rng: random.Random) -> Fraction:
    num = rng.randint(-4, 4)
    return Fraction(num, rng.randint(1, 3))


def _nonzero_rational(rng: random.Random) -> Fraction:
    while True:
        x = _small_rational(rng)
        if x:
            return x


def _givens(n: int, i: int, k: int, c: Fraction, s: Fraction) -> Matrix:
    g = identity(n)
    g[i][i] = c
    g[k][k] = c
    g[i][k] = -s
    g[k][i] = s
    return g


def random_orthogonal(n: int, rng: random.Random, rotations: int | None = None) -> Matrix:
    q = identity(n)
    for _ in range(rotations if rotations is not None else n):
        i, k = rng.sample(range(n), 2)
        a, b, c = rng.choice(_TRIPLES)
        q = matmul(_givens(n, i, k, Fraction(a, c), Fraction(b, c)), q)
    return q


def random_jjet(n: int, seed: int, profile: str = "diagonal") -> JJet:
    if n < 6 or n % 2:
        raise JetError(f"random jets need an even n >= 6, got {n}")
    if profile not in ("diagonal", "conjugated"):
        raise JetError(f"unknown profile {profile!r}")
    rng = random.Random(f"{n}:{seed}:{profile}")
    eps = [rng.choice((1, -1)) for _ in range(n)]
    A = zeros(n)
    for i, e in enumerate(eps):
        A[i][i] = Fraction(e)
    DA = []
    for _ in range(n):
        D = zeros(n)
        for i in range(n):
            for k in range(i + 1, n):
                if eps[i] != eps[k]:
                    D[i][k] = D[k][i] = _small_rational(rng)
        DA.append(D)
    hp = _nonzero_rational(rng)
    if profile == "conjugated":
        Q = random_orthogonal(n, rng)
        Qt = transpose(Q)
        A = matmul(matmul(Q, A), Qt)
        DA = [matmul(matmul(Q, D), Qt) for D in DA]
    return JJet(n, A, DA, hp).validate()


# -- connection data at x0 ------------------------------------------------------

@dataclass
class ConnectionJet:
    n: int
    hprime: Fraction
    omega: list  # omega[i][s][t] = omega_{s,t}(e_i)
    christoffel: dict = field(default_factory=dict)  # (s, t, k) -> Gamma^k_{st}
    gamma_contracted: list = field(default_factory=list)  # Gamma^k = sum_i Gamma^k_{ii}

    def mean_curvature(self) -> Fraction:
        """K = sum_{i<n} K_ii with K_ij = -Gamma^n_ij."""
        last = self.n - 1
        return -sum((self.christoffel.get((i, i, last), Fraction(0)) for i in range(last)), Fraction(0))


def connection_jet(hprime, n: int) -> ConnectionJet:
    if n < 4 or n % 2:
        raise JetError(f"n must be even and >= 4, got {n}")
    h = Fraction(hprime)
    half = h / 2
    last = n - 1
    omega = [zeros(n) for _ in range(n)]
    chris = {}
    for i in range(last):
        omega[i][last][i] = half
        omega[i][i][last] = -half
        if h:
            chris[(i, i, last)] = half
            chris[(last, i, i)] = -half
            chris[(i, last, i)] = -half
    gamma = [Fraction(0)] * n
    for (s, t, k), v in chris.items():
        if s == t:
            gamma[k] += v
    return ConnectionJet(n, h, omega, chris, gamma)


def metric_inverse_derivative(n: int, hprime) -> list:
    """dg[j][a][b] = d_{x_j} g^{ab} at x0."""
    h = Fraction(hprime)
    out = [zeros(n) for _ in range(n)]
    for a in range(n - 1):
        out[n - 1][a][a] = h
    return out


def nabla_J(jet: JJet, alpha: int, conn: ConnectionJet | None = None) -> Matrix:
    """N[g][b] = g((nabla_{e_alpha} J) e_b, e_g) at x0.

    With omega_{s,t}(e_a) = -<nabla_{e_a} e_s, e_t> (the reading under which
    the omega and Christoffel tables agree) this is DA + A W^T - W^T A.
    """
    conn = conn or connection_jet(jet.hprime, jet.n)
    Wt = transpose(conn.omega[alpha])
    return madd(jet.DA[alpha], madd(matmul(jet.A, Wt), matmul(Wt, jet.A), -1))


def nabla_J_all(jet: JJet) -> list:
    # memoized on the jet object; jets are not mutated after construction
    cached = jet.__dict__.get("_nabla_all")
    if cached is None:
        conn = connection_jet(jet.hprime, jet.n)
        cached = [nabla_J(jet, a, conn) for a in range(jet.n)]
        jet.__dict__["_nabla_all"] = cached
    return cached


# -- scalar invariants used by the closed forms -------------------------------------

@dataclass(frozen=True)
class JetScalars:
    """Contractions of the jet that appear in the displayed closed forms.

    Index ranges follow the displays: ``i`` runs over tangential indices,
    ``h``/``l`` over all indices.
    """

    S_a: Fraction      # sum_{h, i<n} a^i_h d_i a^n_h
    S_b: Fraction      # sum_{h, i<n} a^n_h d_i a^i_h
    S_full: Fraction   # sum_{l, j} a^j_l d_j a^n_l
    P_tt: Fraction     # sum_{h, i<n} (a^i_h)^2
    P_tn: Fraction     # sum_{i<n} (a^i_n)^2
    P_ta: Fraction     # sum_{h<=n, i<n} (a^i_h)^2
    P_na: Fraction     # sum_h (a^n_h)^2
    P_nt: Fraction     # sum_{nu<n} (a^n_nu)^2
    T: Fraction        # sum_{i<n} a^i_i a^n_n
    G: Fraction        # sum_{i<n} g(J e_i, (nabla_{e_i} J) e_n)
    G_full: Fraction   # sum_{alpha} g(J dx_alpha, (nabla_{e_alpha} J) e_n)
    G_ni: Fraction     # sum_{i<n} g(J e_i, (nabla_{e_n} J) e_i)
    G_in: Fraction     # sum_{i<n} g(J dx_n, (nabla_{e_i} J) e_i)
    J_nn: Fraction     # <J e_n, e_n>
    J_in2: Fraction    # sum_{i<=n} <J e_i, e_n>^2
    hprime: Fraction


def g_J_nabla(jet: JJet, N: list, x: int, alpha: int, b: int) -> Fraction:
    """g(J e_x, (nabla_{e_alpha} J) e_b)."""
    A = jet.A
    return sum((A[g][x] * N[alpha][g][b] for g in range(jet.n)), Fraction(0))


def jet_scalars(jet: JJet) -> JetScalars:
    n, A, DA = jet.n, jet.A, jet.DA
    t = n - 1
    N = nabla_J_all(jet)
    F0 = Fraction(0)
    S_a = sum((A[i][h] * DA[i][t][h] for h in range(n) for i in range(t)), F0)
    S_b = sum((A[t][h] * DA[i][i][h] for h in range(n) for i in range(t)), F0)
    S_full = sum((A[j][l] * DA[j][t][l] for l in range(n) for j in range(n)), F0)
    P_tt = sum((A[i][h] ** 2 for h in range(t) for i in range(t)), F0)
    P_tn = sum((A[i][t] ** 2 for i in range(t)), F0)
    P_ta = sum((A[i][h] ** 2 for h in range(n) for i in range(t)), F0)
    P_na = sum((A[t][h] ** 2 for h in range(n)), F0)
    P_nt = sum((A[t][h] ** 2 for h in range(t)), F0)
    T = sum((A[i][i] * A[t][t] for i in range(t)), F0)
    G = sum((g_J_nabla(jet, N, i, i, t) for i in range(t)), F0)
    G_full = sum((g_J_nabla(jet, N, a, a, t) for a in range(n)), F0)
    G_ni = sum((g_J_nabla(jet, N, i, t, i) for i in range(t)), F0)
    G_in = sum((g_J_nabla(jet, N, t, i, i) for i in range(t)), F0)
    J_nn = A[t][t]
    J_in2 = sum((A[i][t] ** 2 for i in range(n)), F0)
    return JetScalars(S_a, S_b, S_full, P_tt, P_tn, P_ta, P_na, P_nt, T, G, G_full, G_ni, G_in, J_nn, J_in2, jet.hprime)


def identity_report(jet: JJet) -> dict:
    """Exact residuals of the jet and nabla-J identities (all must be zero)."""
    n, A, DA = jet.n, jet.A, jet.DA
    t = n - 1
    s = jet_scalars(jet)
    F0 = Fraction(0)
    out = {}
    out["constraints"] = jet.violations()
    out["tangential_norm_derivative"] = [
        sum((A[i][h] * DA[j][i][h] for h in range(n)), F0) for j in range(n) for i in range(t)
    ]
    out["normal_norm_derivative"] = [sum((A[t][h] * DA[j][t][h] for h in range(n)), F0) for j in range(n)]
    out["P_tt_identity"] = s.P_tt - (n - 2 * s.J_in2 + s.J_nn ** 2)
    out["P_tn_identity"] = s.P_tn - (1 - s.J_nn ** 2)
    out["G_ni_vanishes"] = s.G_ni
    out["G_in_sign"] = s.G_in + s.G
    out["G_full_equals_G"] = s.G_full - s.G
    conn = connection_jet(jet.hprime, n)
    out["mean_curvature"] = conn.mean_curvature() + Fraction(n - 1, 2) * jet.hprime
    return out


def identities_hold(jet: JJet) -> bool:
    rep = identity_report(jet)
    if rep["constraints"]:
        return False
    for k, v in rep.items():
        if k == "constraints":
            continue
        vals = v if isinstance(v, list) else [v]
        if any(vals):
            return False
    return True


def matrix_str(m: Sequence[Sequence[Fraction]]) -> list:
    return [[fraction_to_str(x) for x in r] for r in m]
