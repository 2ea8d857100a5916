"""Command-line front end.

Commands: ``table`` (classical/Bell triangles), ``verify`` (run a suite
config and write machine-readable reports), ``check`` (debug a single
identity cell), ``families`` (export builtin families as JSON).

Exit codes are exhaustive and mutually exclusive: 0 pass, 1
counterexample found, 2 invalid configuration or arguments, 3 I/O
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bell import MomentSequence, bell_partial, classical_triangle, triangle_for
from .config import (
    Y_BUILDERS,
    Z_BUILDERS,
    build_suites,
    default_config_text,
    load_config,
    make_y_builder,
    make_z_builder,
    run_suites,
)
from .errors import BellPolyError, ConfigError
from .families import abelize, builtin_family
from .rationals import as_fraction, format_rational
from .reporting import PASS

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _IOFailure(str(exc)) from exc


class _IOFailure(Exception):
    pass


def _json_dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# table


def _triangle_cells(kind: str, moments: MomentSequence | None, n_max: int):
    for n in range(0, n_max + 1):
        for k in range(0, n + 1):
            if kind == "bell":
                yield n, k, bell_partial(moments, n, k)
            else:
                yield n, k, classical_triangle(kind, n, k)


def cmd_table(args) -> int:
    kind = args.kind
    moments = None
    if kind == "bell":
        if args.moments is None:
            raise ConfigError("--kind bell requires --moments")
        moments = _parse_moments_arg(args.moments, args.n_max)
        moments.require(args.n_max)
    rows = list(_triangle_cells(kind, moments, args.n_max))
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "k", "value"])
        for n, k, value in rows:
            writer.writerow([n, k, format_rational(value)])
        text = buf.getvalue()
    else:
        text = _json_dumps({
            "kind": kind,
            "n_max": args.n_max,
            "cells": [[n, k, format_rational(v)] for n, k, v in rows],
        })
    _write_output(text, args.output)
    return EXIT_PASS


def _parse_moments_arg(raw: str, length: int) -> MomentSequence:
    raw = raw.strip()
    if raw.startswith("["):
        try:
            values = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad moments JSON: {exc}") from exc
        return MomentSequence.of(values)
    return MomentSequence.from_spec(raw, length)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    if args.config is None:
        text = default_config_text()
    else:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise _IOFailure(f"cannot read config: {exc}") from exc
    config = load_config(text)
    suites = build_suites(config)
    parallelism = args.parallelism or config.get("parallelism", 1)
    reports = run_suites(suites, parallelism)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "identity", "status", "n_max", "s_max", "counterexamples", "elapsed_ms"])
        for rep in reports:
            writer.writerow([
                rep["id"], rep["identity"], rep["status"],
                rep["range"]["n_max"], rep["range"]["s_max"],
                len(rep["counterexamples"]), rep["elapsed_ms"],
            ])
        text_out = buf.getvalue()
    else:
        text_out = _json_dumps(reports)
    # reports are written even when some suites failed
    _write_output(text_out, args.output)
    all_pass = all(rep["status"] == PASS for rep in reports)
    if not all_pass:
        failing = [rep["id"] for rep in reports if rep["status"] != PASS]
        print(f"{len(failing)} suite(s) failed: {', '.join(failing[:10])}"
              + ("..." if len(failing) > 10 else ""), file=sys.stderr)
    return EXIT_PASS if all_pass else EXIT_COUNTEREXAMPLE


# ---------------------------------------------------------------------------
# check


_CHECK_PARAM_FLAGS = (
    "moments", "family", "abel_a", "a", "x", "y", "alpha", "beta",
    "lambda", "b", "c", "aux", "reading",
)


def _collect_check_params(args) -> dict:
    params: dict = {}
    if args.params:
        try:
            params.update(json.loads(args.params))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad --params JSON: {exc}") from exc
    for flag in _CHECK_PARAM_FLAGS:
        value = getattr(args, flag.replace("-", "_"), None)
        if value is not None:
            if flag == "moments" and value.strip().startswith("["):
                params[flag] = json.loads(value)
            elif flag == "aux":
                params[flag] = [piece.strip() for piece in value.split(",")]
            else:
                params[flag] = value
    for flag in ("r", "s", "u", "v"):
        value = getattr(args, flag)
        if value is not None:
            params[flag] = value
    return params


def cmd_check(args) -> int:
    params = _collect_check_params(args)
    n = args.n
    if args.identity == "h":
        if args.k is None:
            raise ConfigError("--identity h needs --k")
        k = args.k
        builder = make_y_builder(args.builder, params, max(n, n - k + 1))
        operands = [builder.value(m, 1) for m in range(1, n - k + 2)]
        lhs = bell_partial(MomentSequence.of(operands), n, k)
        rhs = builder.value(n, k)
        cell = {"n": n, "k": k}
    else:
        if args.s is None:
            raise ConfigError("--identity b needs --s (the cell coordinate)")
        s = args.s
        builder = make_z_builder(args.builder, params, n, s)
        column = [builder.value(m, 0) for m in range(1, n + 1)]
        operands = [s * z for z in column]
        tri = triangle_for(MomentSequence.of(operands))
        lhs = sum((tri.value(n, k) for k in range(1, n + 1)), as_fraction(0))
        rhs = s * builder.value(n, s)
        cell = {"n": n, "s": s}
    ok = lhs == rhs
    if args.json:
        payload = {
            "identity": args.identity,
            "builder": {"builder": builder.name, **builder.params()},
            "cell": cell,
            "operands": [format_rational(v) for v in operands],
            "lhs": format_rational(lhs),
            "rhs": format_rational(rhs),
            "status": "pass" if ok else "fail",
        }
        _write_output(_json_dumps(payload), args.output)
    else:
        lines = [
            f"identity {args.identity}, builder {builder.name}, cell {cell}",
            f"params: {builder.params()}",
            f"operands: {', '.join(format_rational(v) for v in operands)}",
        ]
        # intermediate bell values, restricted to cells the operand prefix covers
        tri = triangle_for(MomentSequence.of(operands))
        max_gap = len(operands) - 1
        for nn in range(1, n + 1):
            cells = [
                f"B({nn},{kk})={format_rational(tri.value(nn, kk))}"
                for kk in range(1, nn + 1)
                if nn - kk <= max_gap
            ]
            if cells:
                lines.append(f"bell row {nn}: {'  '.join(cells)}")
        lines.append(f"LHS = {format_rational(lhs)}")
        lines.append(f"RHS = {format_rational(rhs)}")
        lines.append("PASS" if ok else "FAIL")
        _write_output("\n".join(lines) + "\n", args.output)
    return EXIT_PASS if ok else EXIT_COUNTEREXAMPLE


# ---------------------------------------------------------------------------
# families


def cmd_families(args) -> int:
    fam = builtin_family(args.kind, args.n_max, a=args.abel_a)
    if args.a is not None:
        fam = abelize(fam, as_fraction(args.a))
    payload = {
        "kind": args.kind,
        "a": format_rational(fam.deformation),
        "N": fam.size,
        "polys": [[format_rational(c) for c in poly.coeffs] for poly in fam.polys],
    }
    _write_output(_json_dumps(payload), args.output)
    return EXIT_PASS


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellpoly",
        description="Exact Bell-polynomial tables, families and identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="emit a coefficient triangle")
    p_table.add_argument("--kind", required=True, choices=["bell", "stirling2", "stirling1", "lah"])
    p_table.add_argument("--moments", help='moment sequence for --kind bell (JSON list or "1", "m", "m!")')
    p_table.add_argument("--n-max", type=int, required=True, dest="n_max")
    p_table.add_argument("--format", choices=["csv", "json"], default="csv")
    p_table.add_argument("--output", "-o")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run a verification config")
    p_verify.add_argument("--config", help="config path (bundled default when omitted)")
    p_verify.add_argument("--output", "-o")
    p_verify.add_argument("--format", choices=["json", "csv"], default="json")
    p_verify.add_argument("--parallelism", type=int)
    p_verify.set_defaults(func=cmd_verify)

    p_check = sub.add_parser("check", help="debug one identity cell")
    p_check.add_argument("--identity", required=True, choices=["h", "b"])
    p_check.add_argument("--builder", required=True, choices=list(Y_BUILDERS) + list(Z_BUILDERS))
    p_check.add_argument("--params", help="inline JSON with builder parameters")
    for flag in _CHECK_PARAM_FLAGS:
        p_check.add_argument(f"--{flag.replace('_', '-')}", dest=flag)
    for flag in ("r", "s", "u", "v"):
        p_check.add_argument(f"--{flag}", type=int)
    p_check.add_argument("--n", type=int, required=True)
    p_check.add_argument("--k", type=int)
    p_check.add_argument("--json", action="store_true")
    p_check.add_argument("--output", "-o")
    p_check.set_defaults(func=cmd_check)

    p_fam = sub.add_parser("families", help="export a builtin family as JSON")
    p_fam.add_argument("--kind", required=True, choices=["monomial", "falling", "rising", "abel", "touchard"])
    p_fam.add_argument("--n-max", type=int, required=True, dest="n_max")
    p_fam.add_argument("--abel-a", dest="abel_a", help="parameter of the abel base family")
    p_fam.add_argument("--a", help="deformation applied on top of the base family")
    p_fam.add_argument("--output", "-o")
    p_fam.set_defaults(func=cmd_families)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, BellPolyError, ValueError, KeyError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
