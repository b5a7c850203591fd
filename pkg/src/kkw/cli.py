"""Command-line entry point ``kkw``.

Exit codes: 0 all hard checks match, 2 a hard mismatch was found, 1 operational error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import closed_forms as cf
from .exact import fraction_to_str
from .jets import JetError
from .pipeline import PipelineError
from .verify import (
    MODES,
    PROFILES,
    ConfigError,
    RunConfig,
    constants_section,
    load_invariants,
    parse_n_list,
    render_json,
    render_markdown,
    run,
    write_atomic,
)


class _Parser(argparse.ArgumentParser):
    # usage errors are operational errors, code 2 is reserved for mismatches
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kkw", description="Exact verification of the boundary residue computation.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("--mode", choices=MODES, default="all")
    v.add_argument("--n", default="6", help="even dimensions, e.g. 6,8,10 or 6..16")
    v.add_argument("--jets", type=int, default=1, help="random jets per dimension and profile")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--profile", choices=PROFILES, default="diagonal")
    v.add_argument("--jet-file", help="JSON jet or list of jets; replaces the random jets")
    v.add_argument("--invariants", help="interior invariants JSON for the interior section")
    v.add_argument("--out", help="report path (stdout if omitted)")
    v.add_argument("--format", choices=("json", "markdown"), default="json")
    v.add_argument("--timing", action="store_true", help="add wall-clock timings (breaks byte-identity)")

    c = sub.add_parser("constants", help="print the named constants with oracle verdicts")
    c.add_argument("--n", default="6..16")
    c.add_argument("--out")
    c.add_argument("--format", choices=("json", "markdown"), default="json")

    i = sub.add_parser("interior", help="evaluate the interior density for given invariants")
    i.add_argument("--invariants", required=True)
    i.add_argument("--n", default="6")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _cmd_verify(args) -> int:
    cfg = RunConfig(
        n_list=parse_n_list(args.n),
        jets_per_n=args.jets,
        seed=args.seed,
        profile=args.profile,
        mode=args.mode,
        jet_file=args.jet_file,
        invariants=args.invariants,
        out=args.out,
        format=args.format,
        timing=args.timing,
    )
    report, code = run(cfg)
    text = render_markdown(report) if cfg.format == "markdown" else render_json(report)
    _emit(text, cfg.out)
    s = report["summary"]
    print(f"hard checks: {'pass' if s['hard_pass'] else 'MISMATCH'}; "
          f"chain: {'all match' if s['soft_chain_all_match'] else 'mismatch localized'}", file=sys.stderr)
    return code


def _cmd_constants(args) -> int:
    n_list = parse_n_list(args.n)
    sec, ok = constants_section(n_list)
    report = {"schema": 1, "constants": sec,
              "summary": {"hard_pass": ok, "soft_chain_all_match": True, "exit_code": 0 if ok else 2}}
    text = render_markdown(report) if args.format == "markdown" else render_json(report)
    _emit(text, args.out)
    return 0 if ok else 2


def _cmd_interior(args) -> int:
    inv = load_invariants(args.invariants)
    values = {str(n): fraction_to_str(cf.interior_integrand(inv, n)) for n in parse_n_list(args.n)}
    sys.stdout.write(json.dumps({"schema": 1, "unit": "pi^(n/2)", "values": values}, indent=2) + "\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "constants":
            return _cmd_constants(args)
        return _cmd_interior(args)
    except (ConfigError, JetError, PipelineError, OSError) as exc:
        print(f"kkw: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
