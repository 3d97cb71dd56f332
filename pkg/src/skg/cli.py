"""Command-line surface: check, compile, infer, simulate, explain.

Exit codes: 0 success (or no alarm), 1 I/O or syntax failure, 2 semantic
failure (validation, unknown profile/sensor/class, guard rails), 3 alarm
raised (only with --alarm-exit).
"""

from __future__ import annotations

import argparse
import json
import sys

from .canon import serialize
from .compiler import compile_graph
from .errors import (
    CompileError,
    InferenceError,
    LexError,
    ParseError,
    ProfileError,
    ValidationError,
)
from .lexer import tokenize
from .model import KnowledgeGraph
from .parser import parse
from .report import DEFAULT_THRESHOLD, build_report, evidence_windows, explain
from .sampling import (
    ground_truth_csv,
    observations_csv,
    parse_observations_csv,
    simulate_dataset,
)
from .validate import apply_profile, validate

EXIT_OK = 0
EXIT_IO = 1
EXIT_SEMANTIC = 2
EXIT_ALARM = 3

_SYNTAX_ERRORS = (LexError, ParseError)
_SEMANTIC_ERRORS = (ValidationError, ProfileError, CompileError, InferenceError)


def _print_diagnostics(exc, path: str) -> None:
    for diag in getattr(exc, "diagnostics", []):
        print(diag.render(path), file=sys.stderr)


def _load(path: str, profile: str | None) -> tuple[KnowledgeGraph, int]:
    """Parse, validate and optionally apply a profile.

    Returns (graph, statement count)."""
    with open(path, "r", encoding="utf-8") as fh:
        source = fh.read()
    doc = parse(tokenize(source))
    kg = validate(doc)
    if profile is not None:
        kg = apply_profile(kg, profile)
    return kg, len(doc.statements)


def cmd_check(args) -> int:
    try:
        _, count = _load(args.path, None)
    except _SYNTAX_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        return EXIT_IO
    except ValidationError as exc:
        _print_diagnostics(exc, args.path)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"ok: {count} statements")
    return EXIT_OK


def cmd_compile(args) -> int:
    try:
        kg, _ = _load(args.path, args.profile)
        bn = compile_graph(kg)
        text = bn.to_json()
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(f"wrote {len(bn.nodes)} nodes to {args.out}")
    except _SYNTAX_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        return EXIT_IO
    except _SEMANTIC_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_fmt(args) -> int:
    try:
        kg, _ = _load(args.path, None)
    except _SYNTAX_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        return EXIT_IO
    except _SEMANTIC_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(serialize(kg))
    return EXIT_OK


def cmd_infer(args) -> int:
    try:
        kg, _ = _load(args.path, args.profile)
        bn = compile_graph(kg)
        with open(args.obs, "r", encoding="utf-8") as fh:
            observations = parse_observations_csv(fh.read())
        virtual = None
        if args.virtual is not None:
            with open(args.virtual, "r", encoding="utf-8") as fh:
                virtual = json.load(fh)
        windows = evidence_windows(bn, observations, virtual)
        report = build_report(kg, bn, windows, tuple(args.entity), args.threshold)
        sys.stdout.write(report.render_text())
        if args.out is not None:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(report.to_json())
    except _SYNTAX_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        return EXIT_IO
    except _SEMANTIC_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.alarm_exit and report.any_alarm():
        return EXIT_ALARM
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        kg, _ = _load(args.path, args.profile)
        dataset = simulate_dataset(kg, args.trials, args.seed)
        with open(args.out_obs, "w", encoding="utf-8") as fh:
            fh.write(observations_csv(dataset.observations))
        with open(args.out_truth, "w", encoding="utf-8") as fh:
            fh.write(ground_truth_csv(dataset.ground_truth))
    except _SYNTAX_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        return EXIT_IO
    except _SEMANTIC_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    truth_rows = sum(len(r.assignment) for r in dataset.ground_truth)
    print(
        f"simulated {args.trials} windows: {len(dataset.observations)} "
        f"observation rows, {truth_rows} ground-truth rows"
    )
    return EXIT_OK


def cmd_explain(args) -> int:
    try:
        kg, _ = _load(args.path, None)
        bn = compile_graph(kg)
        with open(args.obs, "r", encoding="utf-8") as fh:
            observations = parse_observations_csv(fh.read())
        windows = evidence_windows(bn, observations)
        for window_id, evidence in windows:
            print(f"window {window_id}:")
            for rank, (assignment, p) in enumerate(explain(bn, evidence, args.top), 1):
                active = [
                    f"{node.split(':', 1)[1]}={state}"
                    for node, state in assignment.items()
                ]
                print(f"  #{rank} p={p:.6f}  {', '.join(active)}")
    except _SYNTAX_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        return EXIT_IO
    except _SEMANTIC_ERRORS as exc:
        _print_diagnostics(exc, args.path)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skg",
        description="Signal knowledge graphs: validate, compile to a Bayesian "
        "network, infer causes from observations, simulate datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a .skg file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compile", help="compile a .skg file to Bayesian network JSON")
    p.add_argument("path")
    p.add_argument("--profile", default=None)
    p.add_argument("--out", default="-", help="output path (default stdout)")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("fmt", help="print the canonical form of a .skg file")
    p.add_argument("path")
    p.set_defaults(func=cmd_fmt)

    p = sub.add_parser("infer", help="posterior over causes given observations")
    p.add_argument("path")
    p.add_argument("--obs", required=True, help="observations CSV")
    p.add_argument("--profile", default=None)
    p.add_argument(
        "--entity",
        action="append",
        required=True,
        help="entity id treated as the cause of interest (repeatable)",
    )
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--virtual", default=None, help="virtual-evidence JSON sidecar")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument(
        "--alarm-exit",
        action="store_true",
        help="exit with status 3 when any window alarms",
    )
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("simulate", help="sample synthetic observation windows")
    p.add_argument("path")
    p.add_argument("--profile", default=None)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-obs", required=True)
    p.add_argument("--out-truth", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("explain", help="rank joint cause assignments")
    p.add_argument("path")
    p.add_argument("--obs", required=True, help="observations CSV")
    p.add_argument("--top", type=int, default=3)
    p.set_defaults(func=cmd_explain)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
