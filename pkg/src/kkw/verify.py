"""Verification campaigns: constants, pipeline-vs-closed-form checks, chain verdicts, interior spot values.

A report is plain JSON; everything under a verdict key is deterministic for a given
configuration, so two runs with the same seed produce identical bytes.
"""
from __future__ import annotations

import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import closed_forms as cf
from . import displays
from .chain import evaluate_chain
from .clifford import Multivector
from .exact import fraction_to_str
from .jets import JJet, identities_hold, identity_report, load_jet_file, random_jjet
from .oracles import check_constant
from .pipeline import CASES, CaseRunner, PiVolScalar
from .poly import Poly
from .symbols import mv_equal_on_sphere

SCHEMA = 1
MODES = ("constants", "pipeline", "interior", "all")
PROFILES = ("diagonal", "conjugated", "both")


class ConfigError(ValueError):
    pass


def parse_n_list(text: str) -> list[int]:
    """'6,8,10' or '6..16' (even values only in a range)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            try:
                a, b = int(lo), int(hi)
            except ValueError:
                raise ConfigError(f"bad range {part!r}") from None
            if a % 2:
                a += 1
            out.extend(range(a, b + 1, 2))
        else:
            try:
                out.append(int(part))
            except ValueError:
                raise ConfigError(f"bad dimension {part!r}") from None
    if not out:
        raise ConfigError("empty dimension list")
    for n in out:
        if n < 6 or n % 2:
            raise ConfigError(f"dimension {n} is not an even integer >= 6")
    return sorted(set(out))


@dataclass
class RunConfig:
    n_list: list = field(default_factory=lambda: [6])
    jets_per_n: int = 1
    seed: int = 0
    profile: str = "diagonal"
    mode: str = "all"
    jet_file: str | None = None
    invariants: str | None = None
    out: str | None = None
    format: str = "json"
    timing: bool = False

    def validate(self) -> "RunConfig":
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.profile not in PROFILES:
            raise ConfigError(f"unknown profile {self.profile!r}")
        if self.jets_per_n < 1:
            raise ConfigError("jets per n must be positive")
        for n in self.n_list:
            if n < 6 or n % 2:
                raise ConfigError(f"dimension {n} is not an even integer >= 6")
        if self.format not in ("json", "markdown"):
            raise ConfigError(f"unknown format {self.format!r}")
        return self

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("timing")
        d.pop("out")
        return d


def worker_count() -> int:
    cap = os.environ.get("KKW_THREADS")
    cpus = os.cpu_count() or 1
    if cap:
        try:
            return max(1, min(cpus, int(cap)))
        except ValueError:
            raise ConfigError(f"KKW_THREADS must be an integer, got {cap!r}") from None
    return cpus


def _verdict(ok: bool) -> str:
    return "match" if ok else "mismatch"


# -- constants ------------------------------------------------------------------------

def constants_section(n_list: list[int]) -> tuple[dict, bool]:
    ok = True
    out = {}
    for n in n_list:
        rows = []
        for name in cf.CONSTANT_NAMES:
            value = cf.eval_constant(name, n)
            v = check_constant(name, n, value)
            ok &= v.ok
            rows.append({"name": name, "value": value.to_json(), **v.to_json()})
        ident = []
        for total, a, b in cf.COMBINATIONS:
            fdiff, vdiff = cf.combination_residual(total, n)
            good = not fdiff and not vdiff
            ok &= good
            ident.append({"identity": f"{total} = {a} + {b}", "verdict": _verdict(good)})
        same = cf.eval_constant("D4", n) == cf.eval_constant("B1", n)
        ok &= same
        ident.append({"identity": "D4 = B1", "verdict": _verdict(same)})
        out[str(n)] = {"constants": rows, "identities": ident}
    return out, ok


# -- per-jet work ---------------------------------------------------------------------

def _pi_plus(m: Multivector) -> Multivector:
    return m.map_coefficients(lambda p: p.map_coefficients(lambda r: r.pi_plus()))


def display_checks(runner: CaseRunner) -> list[dict]:
    B, jet, n = runner.B, runner.jet, runner.n
    s = B.sigma_m1()
    rows = []

    def add(name: str, built: Multivector, shown: Multivector) -> None:
        rows.append({"display": name, "verdict": _verdict(mv_equal_on_sphere(built, shown, n))})

    ok = all(
        mv_equal_on_sphere(_pi_plus(B.restrict(B.d_xi(s.value, i))), displays.display_pi_plus_dxi_sigma_m1(jet, i), n)
        for i in range(n - 1)
    )
    rows.append({"display": "pi+ d_xi_i sigma_-1, all tangential i", "verdict": _verdict(ok)})
    add("pi+ d_x_n sigma_-1 (case a-II)", _pi_plus(B.restrict(s.deriv(n - 1))), displays.display_pi_plus_dxn_sigma_m1(jet))
    add("pi+ d_xi_n sigma_-1 (case a-III)", _pi_plus(B.restrict(B.d_xi(s.value, n - 1))),
        displays.display_pi_plus_dxin_sigma_m1(jet))
    add("sigma_-n+2 of D_J^-n+3 (case b)", B.restrict(B.sigma_mn2()), displays.display_sigma_mn2(jet))
    p1, p2, p3 = (_pi_plus(B.restrict(x)) for x in B.sigma_m2_parts())
    add("pi+ of the sigma_0 part of sigma_-2 (case c)", p1, displays.display_pi_plus_A1(jet))
    add("pi+ of the x-derivative part of sigma_-2 (case c)", p2, displays.display_pi_plus_A2(jet))
    add("pi+ of the h' part of sigma_-2 (case c)", p3, displays.display_minus_hp_pi_plus_A3(jet))
    return rows


def _identity_json(jet: JJet) -> dict:
    rep = identity_report(jet)
    out = {"verdict": _verdict(identities_hold(jet))}
    bad = []
    for k, v in rep.items():
        if k == "constraints":
            bad.extend(v)
            continue
        vals = v if isinstance(v, list) else [v]
        if any(vals):
            bad.append(k)
    if bad:
        out["failing"] = bad
    return out


def jet_task(args: tuple) -> dict:
    """Everything checked for one jet.  Pure; safe to run in a worker process."""
    label, jet_json, timing = args
    jet = JJet.from_json(jet_json)
    n = jet.n
    t0 = time.perf_counter()
    runner = CaseRunner(jet)
    ident = _identity_json(jet)
    disp = display_checks(runner)
    cases = []
    total = Fraction(0)
    hard_ok = ident["verdict"] == "match" and all(r["verdict"] == "match" for r in disp)
    for c in CASES:
        rep = runner.run(c)
        form = cf.phi_case_form(c, n, jet)
        good = rep.result.q == form.q
        hard_ok &= good
        total += rep.result.q
        row = rep.to_json()
        row["display_q"] = form.to_json()
        row["verdict"] = _verdict(good)
        cases.append(row)
    chain = evaluate_chain(n, jet, total)
    out = {
        "label": label,
        "n": n,
        "jet": jet.to_json(),
        "jet_identities": ident,
        "displays": disp,
        "cases": cases,
        "phi": fraction_to_str(total),
        "chain": chain.to_json(),
        "hard_pass": hard_ok,
        "soft_pass": chain.first_failure is None,
    }
    if timing:
        out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


def jet_inputs(cfg: RunConfig) -> list[tuple[str, JJet]]:
    if cfg.jet_file:
        jets = load_jet_file(cfg.jet_file)
        return [(f"{cfg.jet_file}#{k}", j) for k, j in enumerate(jets)]
    profiles = ("diagonal", "conjugated") if cfg.profile == "both" else (cfg.profile,)
    out = []
    for n in cfg.n_list:
        for prof in profiles:
            for k in range(cfg.jets_per_n):
                seed = cfg.seed + k
                out.append((f"n={n} profile={prof} seed={seed}", random_jjet(n, seed, prof)))
    return out


def pipeline_section(cfg: RunConfig) -> tuple[list, bool, bool]:
    tasks = [(label, jet.to_json(), cfg.timing) for label, jet in jet_inputs(cfg)]
    workers = min(worker_count(), len(tasks)) or 1
    if workers == 1:
        results = [jet_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(jet_task, tasks))
    hard = all(r["hard_pass"] for r in results)
    soft = all(r["soft_pass"] for r in results)
    return results, hard, soft


# -- interior -------------------------------------------------------------------------

INTERIOR_SPOTS = (
    ("all invariants zero", {}, 6, Fraction(0)),
    ("RJJ = 5s/3 cancels the scalar curvature", {"RJJ": "5", "s": "3"}, 6, Fraction(0)),
    ("RJJ = 1 only", {"RJJ": "1"}, 6, Fraction(4)),
)


def interior_section(cfg: RunConfig) -> tuple[dict, bool]:
    out: dict = {"unit": "pi^(n/2)"}
    ok = True
    spots = []
    for label, obj, n, expected in INTERIOR_SPOTS:
        got = cf.interior_integrand(cf.InteriorInvariants.from_json(obj), n)
        good = got == expected
        ok &= good
        spots.append({"case": label, "n": n, "value": fraction_to_str(got), "verdict": _verdict(good)})
    out["spot_checks"] = spots
    if cfg.invariants:
        inv = load_invariants(cfg.invariants)
        out["user"] = {str(n): fraction_to_str(cf.interior_integrand(inv, n)) for n in cfg.n_list}
    return out, ok


def load_invariants(path: str) -> cf.InteriorInvariants:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected a JSON object of invariant slots")
    try:
        return cf.InteriorInvariants.from_json(obj)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


# -- orchestration --------------------------------------------------------------------

def run(cfg: RunConfig) -> tuple[dict, int]:
    """Build the report and the exit status (0 ok, 2 hard mismatch)."""
    cfg.validate()
    report: dict = {"schema": SCHEMA, "config": cfg.to_json()}
    hard = True
    soft = True
    timings = {}
    if cfg.mode in ("constants", "all"):
        t0 = time.perf_counter()
        report["constants"], ok = constants_section(cfg.n_list)
        hard &= ok
        timings["constants"] = time.perf_counter() - t0
    if cfg.mode in ("pipeline", "all"):
        t0 = time.perf_counter()
        report["pipeline"], ok, s_ok = pipeline_section(cfg)
        hard &= ok
        soft &= s_ok
        timings["pipeline"] = time.perf_counter() - t0
    if cfg.mode in ("interior", "all"):
        report["interior"], ok = interior_section(cfg)
        hard &= ok
    report["summary"] = {"hard_pass": hard, "soft_chain_all_match": soft, "exit_code": 0 if hard else 2}
    if cfg.timing:
        report["timing_seconds"] = {k: round(v, 3) for k, v in timings.items()}
    return report, 0 if hard else 2


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def render_markdown(report: dict) -> str:
    lines = ["# Verification report", ""]
    s = report["summary"]
    lines.append(f"- hard checks: {'pass' if s['hard_pass'] else 'FAIL'}")
    lines.append(f"- soft chain: {'all links match' if s['soft_chain_all_match'] else 'mismatch localized below'}")
    lines.append("")
    for n, sec in report.get("constants", {}).items():
        lines += [f"## Constants, n = {n}", "", "| name | value | oracle |", "|---|---|---|"]
        for row in sec["constants"]:
            v = row["value"]
            lines.append(f"| {row['name']} | {v['re']} + ({v['im']}) i | {row['verdict']} |")
        for row in sec["identities"]:
            lines.append(f"| {row['identity']} | | {row['verdict']} |")
        lines.append("")
    for r in report.get("pipeline", []):
        lines += [f"## {r['label']}", "", f"Phi = {r['phi']} pi Vol(S^(n-2))", ""]
        lines += ["| case | q | display | verdict |", "|---|---|---|---|"]
        for c in r["cases"]:
            lines.append(f"| {c['case']} | {c['q']} | {c['display_q']} | {c['verdict']} |")
        lines.append("")
        for d in r["displays"]:
            lines.append(f"- display `{d['display']}`: {d['verdict']}")
        lines.append(f"- jet identities: {r['jet_identities']['verdict']}")
        for lk in r["chain"]["links"]:
            extra = ""
            if lk["verdict"] != "match":
                extra = f" ({lk['left_value']} vs {lk['right_value']}"
                if lk.get("differing_terms"):
                    extra += "; terms " + ", ".join(f"{k}: {a} vs {b}" for k, (a, b) in lk["differing_terms"].items())
                extra += ")"
            lines.append(f"- chain `{lk['link']}`: {lk['verdict']}{extra}")
        lines.append("")
    if "interior" in report:
        lines += ["## Interior density (units pi^(n/2))", ""]
        for sp in report["interior"]["spot_checks"]:
            lines.append(f"- {sp['case']}, n = {sp['n']}: {sp['value']} ({sp['verdict']})")
        for n, v in report["interior"].get("user", {}).items():
            lines.append(f"- supplied invariants, n = {n}: {v}")
        lines.append("")
    return "\n".join(lines)


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
