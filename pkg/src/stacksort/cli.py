"""Command-line front end.

Subcommands cover sorting, avoidance enumeration, sorting classes,
preimages, dynamics, reference sequences, and the verification registry.
Every command takes --format json to emit a stable envelope
{schema_version, command, params, result, elapsed_ms}; identical inputs
give identical JSON apart from elapsed_ms.

Exit codes: 0 success, 1 semantic error or failed check, 2 usage/parse
error, 3 external (OEIS) failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import analysis, checks, machine, patterns, sequences
from .patterns import PatternSyntaxError, parse_pattern_set, parse_vincular
from .perms import (
    PermSyntaxError,
    ScanLimitError,
    perm_from_text,
    perm_to_text,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_USAGE = 2
EXIT_EXTERNAL = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _parse_range(text: str) -> tuple[int, int]:
    s = text.strip()
    try:
        if ".." in s:
            lo_text, hi_text = s.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(s)
    except ValueError as exc:
        raise _CliError(f"bad range {text!r}; expected 'lo..hi' or an integer", EXIT_USAGE) from exc
    if lo < 0 or hi < lo:
        raise _CliError(f"bad range {text!r}", EXIT_USAGE)
    return lo, hi


def _envelope(command: str, params: dict, result, started: float) -> str:
    data = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "result": result,
        "elapsed_ms": int((time.perf_counter() - started) * 1000),
    }
    return json.dumps(data, separators=(",", ":"))


def _emit(args, command: str, params: dict, result, text: str, started: float) -> None:
    if args.format == "json":
        print(_envelope(command, params, result, started))
    else:
        print(text)


def _cmd_sort(args) -> int:
    started = time.perf_counter()
    sigma = parse_vincular(args.sigma)
    perm = perm_from_text(args.perm)
    params = {"sigma": str(sigma), "perm": perm_to_text(perm)}
    if args.iterate is not None:
        if args.iterate < 0:
            raise _CliError("--iterate must be nonnegative", EXIT_USAGE)
        out = machine.sort_iterate(sigma, perm, args.iterate)
        params["iterate"] = args.iterate
        _emit(args, "sort", params, {"output": perm_to_text(out)}, perm_to_text(out), started)
        return EXIT_OK
    trace = machine.sort_once(sigma, perm, want_snapshots=args.trace)
    if args.trace:
        params["trace"] = True
        body = trace.to_json_dict()
        _emit(args, "sort", params, body, json.dumps(body, separators=(",", ":")), started)
    else:
        _emit(
            args,
            "sort",
            params,
            {"output": perm_to_text(trace.output)},
            perm_to_text(trace.output),
            started,
        )
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    started = time.perf_counter()
    pats = parse_pattern_set(args.av)
    lo, hi = _parse_range(args.n)
    rows = []
    for n in range(lo, hi + 1):
        count, members = patterns.enumerate_avoiders(n, pats, want_list=args.list)
        row = {"n": n, "count": count}
        if args.list:
            row["members"] = [perm_to_text(p) for p in members]
        rows.append(row)
    params = {"av": args.av, "n": f"{lo}..{hi}", "list": bool(args.list)}
    if args.format == "csv":
        lines = ["n,count"] + [f"{r['n']},{r['count']}" for r in rows]
        print("\n".join(lines))
        return EXIT_OK
    text_lines = []
    for r in rows:
        line = f"n={r['n']}: {r['count']}"
        if args.list:
            line += "  " + " ".join(r["members"])
        text_lines.append(line)
    _emit(args, "enumerate", params, rows, "\n".join(text_lines), started)
    return EXIT_OK


def _cmd_sort_class(args) -> int:
    started = time.perf_counter()
    sigma = parse_vincular(args.sigma)
    lo, hi = _parse_range(args.n)
    rows = []
    for n in range(lo, hi + 1):
        result = analysis.sorting_class(sigma, n)
        row = {"n": n, "count": result.count}
        if args.list:
            row["members"] = [perm_to_text(p) for p in result.members]
        rows.append(row)
    params = {"sigma": str(sigma), "n": f"{lo}..{hi}", "list": bool(args.list)}
    if args.format == "csv":
        print("\n".join(["n,count"] + [f"{r['n']},{r['count']}" for r in rows]))
        return EXIT_OK
    text_lines = []
    for r in rows:
        line = f"n={r['n']}: {r['count']}"
        if args.list:
            line += "  " + " ".join(r["members"])
        text_lines.append(line)
    _emit(args, "sort-class", params, rows, "\n".join(text_lines), started)
    return EXIT_OK


def _cmd_preimages(args) -> int:
    started = time.perf_counter()
    sigma = parse_vincular(args.sigma)
    if (args.target is None) == (not args.max):
        raise _CliError("give exactly one of --target PERM or --max --n N", EXIT_USAGE)
    if args.max:
        if args.n is None:
            raise _CliError("--max needs --n N", EXIT_USAGE)
        lo, hi = _parse_range(args.n)
        if lo != hi:
            raise _CliError("--max takes a single n, not a range", EXIT_USAGE)
        best, argmax = analysis.max_preimages(sigma, lo, jobs=args.jobs)
        params = {"sigma": str(sigma), "max": True, "n": lo}
        result = {"max": best, "argmax": [perm_to_text(p) for p in argmax]}
        text = f"max {best}  argmax {' '.join(result['argmax'])}"
        _emit(args, "preimages", params, result, text, started)
        return EXIT_OK
    target = perm_from_text(args.target)
    report = analysis.preimages(sigma, target)
    params = {"sigma": str(sigma), "target": perm_to_text(target)}
    result = {
        "count": len(report.preimages),
        "preimages": [perm_to_text(p) for p in report.preimages],
        "movement_multiset": {w: c for w, c in report.movement_multiset},
    }
    text = f"count {result['count']}\n" + "\n".join(result["preimages"])
    _emit(args, "preimages", params, result, text, started)
    return EXIT_OK


def _cmd_dynamics(args) -> int:
    started = time.perf_counter()
    sigma = parse_vincular(args.sigma)
    lo, hi = _parse_range(args.n)
    if lo != hi:
        raise _CliError("dynamics takes a single n", EXIT_USAGE)
    report = analysis.dynamics(sigma, lo)
    periods = sorted({t for _, t in report.period_of})
    params = {"sigma": str(sigma), "n": lo}
    result = {
        "periodic_count": len(report.periodic_points),
        "periods": periods,
        "max_transient": report.max_transient,
    }
    lines = [
        f"periodic points: {result['periodic_count']}",
        f"periods: {periods}",
        f"max transient: {report.max_transient}",
    ]
    if args.periodic:
        result["periodic_points"] = [perm_to_text(p) for p in report.periodic_points]
        lines.append("points: " + " ".join(result["periodic_points"]))
    if args.transients:
        result["transient_bound_2n_minus_4"] = max(2 * lo - 4, 0)
        lines.append(f"transient bound 2n-4: {max(2 * lo - 4, 0)}")
    _emit(args, "dynamics", params, result, "\n".join(lines), started)
    return EXIT_OK


def _cmd_sequence(args) -> int:
    started = time.perf_counter()
    if args.count < 1:
        raise _CliError("--count must be positive", EXIT_USAGE)
    try:
        terms = sequences.sequence_terms(args.name, args.count)
    except KeyError as exc:
        raise _CliError(str(exc), EXIT_USAGE) from exc
    params = {"name": args.name, "count": args.count}
    result: dict = {"terms": terms}
    lines = [" ".join(str(t) for t in terms)]
    code = EXIT_OK
    if args.compare_oeis:
        params["compare_oeis"] = args.compare_oeis
        ok, mismatches = sequences.compare_with_oeis(args.name, args.compare_oeis)
        result["oeis_match"] = ok
        if ok:
            lines.append(f"matches {args.compare_oeis}")
        else:
            result["mismatches"] = [
                {"index": i, "ours": a, "theirs": b} for i, a, b in mismatches
            ]
            lines.append(f"MISMATCH against {args.compare_oeis}: {mismatches[:3]}")
            code = EXIT_SEMANTIC
    if args.format == "csv":
        print("\n".join(["n,value"] + [f"{i},{t}" for i, t in enumerate(terms)]))
        return code
    _emit(args, "sequence", params, result, "\n".join(lines), started)
    return code


def _cmd_verify(args) -> int:
    started = time.perf_counter()
    if args.list_checks:
        listing = checks.registry_listing()
        if args.format == "json":
            _emit(args, "verify", {"list": True}, listing, "", started)
        else:
            for entry in listing:
                print(f"{entry['id']:32s} {entry['kind']:10s} {entry['statement']}")
        return EXIT_OK
    if bool(args.check) == bool(args.all):
        raise _CliError("give exactly one of --check ID or --all", EXIT_USAGE)
    n_range = _parse_range(args.n) if args.n else None
    try:
        if args.all:
            reports = checks.run_many(None, n_range, jobs=args.jobs)
        else:
            reports = [checks.run_check(c, n_range, jobs=args.jobs) for c in args.check]
    except checks.UnknownCheckError as exc:
        raise _CliError(f"unknown check id {exc.args[0]!r}", EXIT_USAGE) from exc
    params: dict = {"jobs": args.jobs}
    if n_range:
        params["n"] = f"{n_range[0]}..{n_range[1]}"
    if args.check:
        params["check"] = list(args.check)
    result = [r.to_json_dict() for r in reports]
    text = "\n".join(checks.format_report(r) for r in reports)
    _emit(args, "verify", params, result, text, started)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_SEMANTIC


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stacksort",
        description="Stack sorting through pattern-avoiding stacks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, csv: bool = False) -> None:
        choices = ["text", "json"] + (["csv"] if csv else [])
        p.add_argument("--format", choices=choices, default="text")

    p = sub.add_parser("sort", help="run the stack once or iterated")
    p.add_argument("--sigma", required=True, help="stack pattern, e.g. 12-3")
    p.add_argument("--perm", required=True, help="input permutation, e.g. 4132")
    p.add_argument("--trace", action="store_true", help="emit the full trace")
    p.add_argument("--iterate", type=int, default=None, metavar="K")
    add_format(p)
    p.set_defaults(fn=_cmd_sort)

    p = sub.add_parser("enumerate", help="count avoiders of a pattern set")
    p.add_argument("--av", required=True, help="comma-separated patterns")
    p.add_argument("--n", required=True, help="range lo..hi or a single n")
    p.add_argument("--list", action="store_true")
    add_format(p, csv=True)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("sort-class", help="membership of the sorting class")
    p.add_argument("--sigma", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--list", action="store_true")
    add_format(p, csv=True)
    p.set_defaults(fn=_cmd_sort_class)

    p = sub.add_parser("preimages", help="preimages of a target or the maximum")
    p.add_argument("--sigma", required=True)
    p.add_argument("--target", default=None)
    p.add_argument("--max", action="store_true")
    p.add_argument("--n", default=None)
    p.add_argument("--jobs", type=int, default=1)
    add_format(p)
    p.set_defaults(fn=_cmd_preimages)

    p = sub.add_parser("dynamics", help="periodic points and transients")
    p.add_argument("--sigma", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--periodic", action="store_true")
    p.add_argument("--transients", action="store_true")
    add_format(p)
    p.set_defaults(fn=_cmd_dynamics)

    p = sub.add_parser("sequence", help="reference sequence terms")
    p.add_argument("--name", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--compare-oeis", default=None, metavar="AID")
    add_format(p, csv=True)
    p.set_defaults(fn=_cmd_sequence)

    p = sub.add_parser("verify", help="run registered checks")
    p.add_argument("--check", action="append", default=None, metavar="ID")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list-checks", action="store_true")
    p.add_argument("--n", default=None)
    p.add_argument("--jobs", type=int, default=1)
    add_format(p)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PatternSyntaxError, PermSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except sequences.OeisIdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except sequences.OeisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXTERNAL
    except (ScanLimitError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
