"""Command-line front end.

Exit codes: 0 success, 1 not locally confluent, 2 confluence unknown,
64 malformed input, 65 invalid rewrite system, 66 unreadable file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .confluence import LOCALLY_CONFLUENT, UNKNOWN, check_local_confluence
from .critical_pairs import enumerate_all_critical_pairs, enumerate_essential_critical_pairs, iter_unique
from .rewriting import RewriteSystem, validate_system
from .serialize import (
    FormatError,
    critical_pair_to_dot,
    critical_pair_to_json,
    dumps,
    load_system,
    report_to_json,
    rule_to_dot,
)

EX_DATAERR = 64
EX_INVALID = 65
EX_NOINPUT = 66


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdcrit", description="Critical pair analysis for string diagram rewriting.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that every rule is left-connected")
    p.add_argument("system", type=Path)

    p = sub.add_parser("critical-pairs", help="enumerate critical pairs")
    p.add_argument("system", type=Path)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all", dest="essential", action="store_false", help="also glue inputs to outputs")
    mode.add_argument("--essential", dest="essential", action="store_true", help="hyperedge gluings only (default)")
    p.set_defaults(essential=True)
    p.add_argument("--no-dedup", dest="dedup", action="store_false")
    p.add_argument("--no-mirrors", dest="mirrors", action="store_false", help="identify (i,j) pairs with their (j,i) swap")
    p.add_argument("--no-trivial", dest="trivial", action="store_false", help="drop identity self-overlaps")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out", type=Path, help="write one file per pair into this directory")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("confluence", help="check local confluence by bounded joinability search")
    p.add_argument("system", type=Path)
    p.add_argument("--max-depth", type=int, default=5)
    p.add_argument("--max-states", type=int, default=10_000)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("render", help="write DOT files for every rule and critical pair")
    p.add_argument("system", type=Path)
    p.add_argument("--out", type=Path, required=True)
    return parser


def _load(path: Path, err: TextIO) -> RewriteSystem | int:
    try:
        return load_system(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=err)
        return EX_NOINPUT
    except FormatError as exc:
        print(f"error: {path}: {exc}", file=err)
        return EX_DATAERR


def _check_valid(system: RewriteSystem, err: TextIO) -> int:
    problems = validate_system(system)
    for name, violations in problems.items():
        print(f"error: rule {name!r} is not left-connected: {', '.join(violations)}", file=err)
    return EX_INVALID if problems else 0


def _cmd_validate(system: RewriteSystem, args, out: TextIO, err: TextIO) -> int:
    problems = validate_system(system)
    for rule in system.rules:
        print(f"{rule.name}: {', '.join(problems[rule.name]) if rule.name in problems else 'ok'}", file=out)
    return EX_INVALID if problems else 0


def _cmd_critical_pairs(system: RewriteSystem, args, out: TextIO, err: TextIO) -> int:
    enumerate_pairs = enumerate_essential_critical_pairs if args.essential else enumerate_all_critical_pairs
    pairs = enumerate_pairs(system, mirrors=args.mirrors, jobs=args.jobs)
    if args.dedup or not args.mirrors or not args.trivial:
        pairs = iter_unique(pairs, args.mirrors, args.trivial)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
    count = 0
    for k, cp in enumerate(pairs):
        count += 1
        if args.format == "json":
            text = json.dumps(critical_pair_to_json(cp), sort_keys=False)
        else:
            text = critical_pair_to_dot(cp, f"pair{k}").rstrip("\n")
        if args.out is None:
            print(text, file=out)
        else:
            (args.out / f"pair_{k:04d}.{args.format}").write_text(text + "\n", encoding="utf-8")
    if args.out is not None:
        print(f"{count} critical pairs written to {args.out}", file=out)
    return 0


def _cmd_confluence(system: RewriteSystem, args, out: TextIO, err: TextIO) -> int:
    report = check_local_confluence(system, args.max_depth, args.max_states, args.jobs)
    out.write(dumps(report_to_json(report)))
    if report.verdict == LOCALLY_CONFLUENT:
        return 0
    return 2 if report.verdict == UNKNOWN else 1


def _cmd_render(system: RewriteSystem, args, out: TextIO, err: TextIO) -> int:
    args.out.mkdir(parents=True, exist_ok=True)
    for k, rule in enumerate(system.rules):
        (args.out / f"rule_{k:02d}.dot").write_text(rule_to_dot(rule), encoding="utf-8")
    pairs = list(iter_unique(enumerate_essential_critical_pairs(system)))
    for k, cp in enumerate(pairs):
        (args.out / f"pair_{k:04d}.dot").write_text(critical_pair_to_dot(cp, f"pair{k}"), encoding="utf-8")
    print(f"{len(system.rules)} rules and {len(pairs)} critical pairs rendered to {args.out}", file=out)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "critical-pairs": _cmd_critical_pairs,
    "confluence": _cmd_confluence,
    "render": _cmd_render,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _parser().parse_args(argv)
    loaded = _load(args.system, err)
    if isinstance(loaded, int):
        return loaded
    if args.command != "validate":
        status = _check_valid(loaded, err)
        if status:
            return status
    return _COMMANDS[args.command](loaded, args, out, err)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
