"""Floating-point oracles, independent of the exact residue machinery."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .closed_forms import CONSTANTS
from .exact import GaussianRational

DPS = 34
NODES = 128
TOLERANCE = mpmath.mpf("1e-20")


def _mp(z: GaussianRational) -> mpmath.mpc:
    return mpmath.mpc(mpmath.mpf(z.re.numerator) / z.re.denominator, mpmath.mpf(z.im.numerator) / z.im.denominator)


def cauchy_derivative(f, center, m: int, radius=1, nodes: int = NODES) -> mpmath.mpc:
    """m-th derivative of f at center via the trapezoid rule on a circle."""
    total = mpmath.mpc(0)
    for k in range(nodes):
        w = mpmath.expjpi(mpmath.mpf(2 * k) / nodes)
        total += f(center + radius * w) / w ** m
    return total * mpmath.factorial(m) / (nodes * mpmath.mpf(radius) ** m)


def quadrature_constant(name: str, n: int) -> mpmath.mpc:
    """The named constant recomputed from its table entry by contour quadrature.

    The only other pole sits at -i, so the unit circle around +i converges geometrically.
    """
    c = CONSTANTS[name]
    coeffs = [_mp(GaussianRational.coerce(x)) for x in c.numerator(n)]
    denom = c.denominator(n)
    k = c.pole(n)
    j = mpmath.mpc(0, 1)

    def f(z):
        return mpmath.polyval(coeffs[::-1], z) / (denom * (z + j) ** k)

    with mpmath.workdps(DPS):
        return cauchy_derivative(f, j, c.order(n))


@dataclass
class OracleVerdict:
    exact: GaussianRational
    approx: mpmath.mpc
    rel_err: mpmath.mpf

    @property
    def ok(self) -> bool:
        return self.rel_err <= TOLERANCE

    def to_json(self) -> dict:
        return {
            "oracle": mpmath.nstr(self.approx, 25),
            "rel_err": mpmath.nstr(self.rel_err, 3),
            "verdict": "match" if self.ok else "mismatch",
        }


def check_constant(name: str, n: int, exact: GaussianRational) -> OracleVerdict:
    with mpmath.workdps(DPS):
        approx = quadrature_constant(name, n)
        ex = _mp(exact)
        err = abs(approx - ex)
        # an exact zero is compared on an absolute scale
        rel = err / abs(ex) if ex != 0 else err
        return OracleVerdict(exact, approx, rel)


def real_line_integral(f, dps: int = 30) -> mpmath.mpf:
    """Numerical integral over R, divided by pi."""
    with mpmath.workdps(dps):
        return mpmath.quad(f, [-mpmath.inf, 0, mpmath.inf]) / mpmath.pi
