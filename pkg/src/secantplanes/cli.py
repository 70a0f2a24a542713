"""Command line entry point: ``secantplanes {coeffs,verify,table}``.

Exit codes: 0 pass, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import genfun, moduli, relations, verify
from .exact import rational_str

SCHEMA = "secantplanes/1"
OUTPUT_DIR_ENV = "SECANTPLANES_OUTPUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _a_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}")
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"need 2 <= LO <= HI, got {text!r}")
    return list(range(lo, hi + 1))


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", help=f"output file; relative paths resolve against ${OUTPUT_DIR_ENV}")
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)

    p = argparse.ArgumentParser(prog="secantplanes", description="Secant plane divisor class calculator.")
    sub = p.add_subparsers(dest="command")

    c = sub.add_parser("coeffs", parents=[common], help="solved coefficient bundle for one d")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--g", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--times-factorial", action="store_true", help="multiply every coefficient by d!")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    v.add_argument("--d-max", type=_positive)
    v.add_argument("--mode", choices=("fixed", "family", "both"))
    v.add_argument("--stretch", action="store_true", help="raise the explicit oracle bounds by one")
    v.add_argument("--timings", action="store_true", help="include wall times (not byte-stable)")

    t = sub.add_parser("table", parents=[common], help="emit a reference table")
    t.add_argument("which", choices=("slopes", "virtual_slopes", "xy_taylor"))
    t.add_argument("--a", type=_a_range, default=list(range(2, 6)))
    t.add_argument("--d-max", type=_positive, default=10)
    t.add_argument("--order", type=_positive, default=10)
    t.add_argument("--source", choices=moduli.COEFF_SOURCES, default="hypergeom")
    return p


# -- rendering ------------------------------------------------------------------

def _header(command: str, config: dict) -> dict:
    return {"schema": SCHEMA, "command": command, "config": config}


def _render(fmt: str, command: str, config: dict, columns: list[str], rows: list[dict],
            extra: dict | None = None) -> str:
    if fmt == "json":
        doc = _header(command, config)
        doc["columns"] = columns
        doc["rows"] = rows
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in columns})
        return buf.getvalue()
    widths = {c: max([len(c)] + [len(_cell(r.get(c))) for r in rows]) for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns).rstrip()]
    for r in rows:
        lines.append("  ".join(_cell(r.get(c)).ljust(widths[c]) for c in columns).rstrip())
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return rational_str(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"), default=str)
    return str(v)


def _resolve_output(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, output: str | None) -> None:
    target = _resolve_output(output)
    if target is None:
        sys.stdout.write(text)
        return
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {target}: {exc}")


# -- commands -------------------------------------------------------------------

def cmd_coeffs(args) -> int:
    if args.d < 1:
        raise UsageError("--d must be >= 1")
    if (args.g is None) != (args.m is None):
        raise UsageError("--g and --m must be given together")
    bundle = relations.solve_coefficients(args.d)
    if args.times_factorial:
        bundle = bundle.scaled(math.factorial(args.d))
    config = {"d": args.d, "g": args.g, "m": args.m, "times_factorial": args.times_factorial}
    if args.g is not None:
        rows = [{"name": k, "value": rational_str(v)} for k, v in bundle.evaluate(args.g, args.m).items()]
        columns = ["name", "value"]
    elif args.format == "json":
        rows = [{"name": k, "terms": p.to_records()} for k, p in bundle.items()]
        columns = ["name", "terms"]
    else:
        rows = [{"name": k, "polynomial": str(p)} for k, p in bundle.items()]
        columns = ["name", "polynomial"]
    _emit(_render(args.format, "coeffs", config, columns, rows), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    bounds = verify.Bounds(d_max=args.d_max, mode=args.mode, workers=args.workers,
                           stretch=args.stretch, seed=args.seed)
    results = verify.run(args.suite, bounds)
    rows = []
    for r in results:
        rec = r.to_record()
        if not args.timings:
            rec.pop("seconds")
        rows.append(rec)
    columns = ["suite", "name", "pass"] + (["seconds"] if args.timings else [])
    failures = [r for r in rows if not r["pass"]]
    config = {"suite": args.suite, "d_max": args.d_max, "mode": args.mode,
              "stretch": args.stretch, "seed": args.seed}
    extra = {"passed": not failures, "failures": failures}
    _emit(_render(args.format, "verify", config, columns, rows, extra), args.output)
    if failures:
        manifest = _header("verify", config)
        manifest["failures"] = failures
        sys.stderr.write(json.dumps(manifest, indent=2, default=str) + "\n")
        return EXIT_FAIL
    return EXIT_OK


def _slopes_rows(args):
    columns = ["g", "d", "s", "m", "m_printed", "slope", "bn_margin", "half_genus_margin",
               "large_genus_margin", "margins_match"]
    return columns, [c.to_record() for c in moduli.slope_table(args.source)]


def _virtual_rows(args):
    columns = ["a", "d", "closed_form", "b_lambda", "b_0", "status"]
    rows = []
    for a in args.a:
        if a not in moduli.VIRTUAL_SLOPES:
            raise UsageError(f"virtual slope closed forms cover a in 2..5, not {a}")
        for d in range(1, args.d_max + 1):
            c = moduli.sec_class(a, d, args.source, per_sheet=True)
            value = moduli.virtual_slope_value(a, d)
            if c.is_zero:
                status = "vanishing"
            else:
                status = "match" if value * c.b_0 == c.b_lambda else "mismatch"
            rows.append({"a": a, "d": d, "closed_form": rational_str(value),
                         "b_lambda": rational_str(c.b_lambda), "b_0": rational_str(c.b_0),
                         "status": status})
    return columns, rows


def _xy_rows(args):
    x, y = genfun.xy_series(args.order)
    rows = []
    for n in range(args.order):
        rows.append({"n": n, "X": rational_str(x[n]), "Y": rational_str(y[n]),
                     "X_closed": rational_str(genfun.xy_closed_coeff("X", n)),
                     "Y_closed": rational_str(genfun.xy_closed_coeff("Y", n))})
    return ["n", "X", "Y", "X_closed", "Y_closed"], rows


TABLES = {"slopes": _slopes_rows, "virtual_slopes": _virtual_rows, "xy_taylor": _xy_rows}


def cmd_table(args) -> int:
    columns, rows = TABLES[args.which](args)
    config = {"table": args.which, "source": args.source}
    if args.which == "virtual_slopes":
        config.update(a=args.a, d_max=args.d_max)
    elif args.which == "xy_taylor":
        config["order"] = args.order
    output = args.output
    if output is None and os.environ.get(OUTPUT_DIR_ENV):
        output = f"{args.which}.{'txt' if args.format == 'text' else args.format}"
    _emit(_render(args.format, "table", config, columns, rows), output)
    bad = [r for r in rows if r.get("status") == "mismatch" or r.get("margins_match") is False]
    return EXIT_FAIL if bad else EXIT_OK


COMMANDS = {"coeffs": cmd_coeffs, "verify": cmd_verify, "table": cmd_table}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        # bare invocation runs the whole acceptance suite
        args = parser.parse_args(list(argv or []) + ["verify"])
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, ArithmeticError, moduli.ModuliDomainError) as exc:
        sys.stderr.write(f"secantplanes: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
