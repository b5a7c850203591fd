from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kkw.exact import GaussianRational
from kkw.ratfun import PoleRational

settings.register_profile("kkw", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("kkw")

small_ints = st.integers(-12, 12)
fractions = st.builds(Fraction, small_ints, st.integers(1, 9))
gaussians = st.builds(GaussianRational, fractions, fractions)
nonzero_gaussians = gaussians.filter(bool)


@st.composite
def pole_rationals(draw, max_deg: int = 4, max_pole: int = 4, decaying: bool = False, integrable: bool = False):
    p = draw(st.integers(0, max_pole))
    q = draw(st.integers(0, max_pole))
    limit = max_deg
    if decaying:
        limit = min(limit, p + q - 1)
    if integrable:
        limit = min(limit, p + q - 2)
    if limit < 0:
        return PoleRational([], 0, 0)
    num = draw(st.lists(gaussians, min_size=0, max_size=limit + 1))
    return PoleRational(num, p, q)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {detail}")
