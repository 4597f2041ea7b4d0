"""
Command-line front end.

    xibounds verify-threshold [--variant V] [--window LO,HI]
    xibounds check-lemmas [--table MANIFEST ...] [--variant V]
    xibounds count --table MANIFEST --T DECIMAL
    xibounds sum --table MANIFEST --sigma DECIMAL --t DECIMAL [--first K] [--count N] [--c DECIMAL]
    xibounds region --preset NAME [--table MANIFEST] [--zero BETA,GAMMA ...] [--infinite] [--c DECIMAL] [--out DIR]

Exit codes: 0 every check passed, 1 a check failed, 2 invalid input or data.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict
from decimal import Decimal
from typing import Dict, List, Optional

from .bounds import find_threshold, n_envelope, threshold_scan
from .checks import run_lemma_checks
from .emitters import emit_csv, emit_svg
from .errors import DomainError, MultipleSignChanges, NoSignChange, XiBoundsError
from .models import (
    LEMMA_CONSISTENT,
    PUBLISHED_THRESHOLD,
    PRESET_NAMES,
    THRESHOLD_CONSTANT,
    THRESHOLD_WINDOW,
    CheckStatus,
    EpsilonVariant,
    HypotheticalZero,
    RunManifest,
)
from .regions import preset, scan
from .utils import parse_decimal, parse_pair
from .XiBounds import XiBounds

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


def _variant_names() -> List[str]:
    return [variant.value for variant in EpsilonVariant]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xibounds",
        description="Explicit lower bounds for Re xi'/xi and their numerical checks.",
    )
    parser.add_argument("--json", action="store_true", help="print a JSON report instead of text")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify-threshold", help="locate the root of 0.28 - epsilon(t)")
    verify.add_argument("--variant", choices=_variant_names(), default=LEMMA_CONSISTENT)
    verify.add_argument(
        "--window",
        default=f"{THRESHOLD_WINDOW[0]:g},{THRESHOLD_WINDOW[1]:g}",
        help="scan window LO,HI (default %(default)s)",
    )

    check = commands.add_parser("check-lemmas", help="run the lemma check suite")
    check.add_argument("--table", action="append", default=[], help="table manifest (repeatable)")
    check.add_argument("--variant", choices=_variant_names(), default=LEMMA_CONSISTENT)

    count = commands.add_parser("count", help="exact zero count against the N(T) envelope")
    count.add_argument("--table", required=True, help="table manifest")
    count.add_argument("--label", help="table label inside the manifest")
    count.add_argument("--T", dest="height", required=True, help="height, exact decimal")

    total = commands.add_parser("sum", help="truncated Re sum 1/(s - rho) at one point")
    total.add_argument("--table", required=True, help="table manifest")
    total.add_argument("--label", help="table label inside the manifest")
    total.add_argument("--sigma", required=True, help="real part, exact decimal")
    total.add_argument("--t", dest="t_offset", required=True, help="height offset from the table base")
    total.add_argument("--first", type=int, help="first zero index (default: table start)")
    total.add_argument("--count", type=int, help="number of zeros (default: to table end)")
    total.add_argument("--c", default="1", help="critical-line fraction c (default %(default)s)")

    region = commands.add_parser("region", help="scan a preset region and write CSV and SVG")
    region.add_argument("--preset", required=True, help=f"one of {', '.join(PRESET_NAMES)}")
    region.add_argument("--table", help="table manifest (fig1)")
    region.add_argument("--label", help="table label inside the manifest")
    region.add_argument(
        "--zero", action="append", default=[], help="hypothetical zero BETA,GAMMA (repeatable)"
    )
    region.add_argument("--c", default="1", help="critical-line fraction c (default %(default)s)")
    region.add_argument(
        "--infinite", action="store_true", help="subtract the tail allowance for zeros above the list"
    )
    region.add_argument("--resolution", type=int, default=None, help="lattice points per axis")
    region.add_argument("--out", default=".", help="output directory (default %(default)s)")
    return parser


# ==================== Commands ====================


def cmd_verify_threshold(args) -> Dict:
    selected = EpsilonVariant(args.variant)
    window = parse_pair(args.window, "window")

    # Other variants are diagnostics; the selected one propagates its error
    roots = {}
    for variant in EpsilonVariant:
        if variant == selected:
            continue
        try:
            roots[variant.value] = find_threshold(variant, window)
        except (NoSignChange, MultipleSignChanges) as exc:
            roots[variant.value] = str(exc)

    root = find_threshold(selected, window)
    roots[selected.value] = root
    scan_result = threshold_scan(selected, window)
    passed = f"{root:.1e}" == f"{PUBLISHED_THRESHOLD:.1e}"
    return {
        "run": RunManifest(
            command="verify-threshold", params={"variant": args.variant, "window": args.window}
        ),
        "variant": selected.value,
        "threshold": root,
        "roots": roots,
        "scan": {
            "grid_points": scan_result.grid_points,
            "sign_changes": scan_result.sign_changes,
            "bracket": list(scan_result.brackets[0]),
        },
        "expected": PUBLISHED_THRESHOLD,
        "status": CheckStatus.PASS if passed else CheckStatus.FAIL,
    }


def cmd_check_lemmas(args) -> Dict:
    reader = XiBounds()
    tables = []
    for manifest in args.table:
        tables.extend(reader.read_manifest(manifest))
    results = run_lemma_checks(tables, EpsilonVariant(args.variant))
    failed = any(result.status == CheckStatus.FAIL for result in results)
    return {
        "run": RunManifest(
            command="check-lemmas",
            params={"variant": args.variant},
            table_paths=[entry.path for entry in reader.entries or []],
        ),
        "checks": [asdict(result) for result in results],
        "status": CheckStatus.FAIL if failed else CheckStatus.PASS,
    }


def _reader_with(manifest: str) -> XiBounds:
    reader = XiBounds()
    reader.read_manifest(manifest)
    return reader


def cmd_count(args) -> Dict:
    reader = _reader_with(args.table)
    height = parse_decimal(args.height, "T")
    count = reader.count_up_to(height, args.label)
    lower, upper = n_envelope(float(height))
    inside = count is None or lower <= count <= upper
    return {
        "run": RunManifest(
            command="count",
            params={"T": str(height)},
            table_paths=[entry.path for entry in reader.entries],
        ),
        "T": str(height),
        "count": count,
        "envelope": [lower, upper],
        "status": CheckStatus.PASS if inside else CheckStatus.FAIL,
    }


def cmd_sum(args) -> Dict:
    reader = _reader_with(args.table)
    table = reader.get_table(args.label)
    sigma = parse_decimal(args.sigma, "sigma")
    t_offset = parse_decimal(args.t_offset, "t")
    reader.set_c(args.c)

    first = table.first_index if args.first is None else args.first
    count = table.last_index - first + 1 if args.count is None else args.count
    k_range = range(first, first + count)

    value = reader.sum_at(sigma, t_offset, k_range, args.label)
    threshold = THRESHOLD_CONSTANT * reader.params.c / (float(sigma) - 0.5) if sigma != Decimal("0.5") else None
    return {
        "run": RunManifest(
            command="sum",
            params={"sigma": str(sigma), "t": str(t_offset), "c": args.c, "first": str(first), "count": str(count)},
            table_paths=[entry.path for entry in reader.entries],
        ),
        "height": str(table.base_height + t_offset),
        "value": value,
        "threshold": threshold,
        "in_region": threshold is not None and value > threshold,
    }


def _parse_zero(text: str) -> HypotheticalZero:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"--zero expects BETA,GAMMA, got {text!r}")
    beta = parse_decimal(parts[0], "beta")
    gamma = parse_decimal(parts[1], "gamma")
    base = Decimal(int(gamma))
    return HypotheticalZero(beta=float(beta), gamma=float(gamma - base), base=base)


def cmd_region(args) -> Dict:
    table = None
    table_paths = []
    if args.table:
        reader = _reader_with(args.table)
        table = reader.get_table(args.label)
        table_paths = [entry.path for entry in reader.entries]
    zeros = [_parse_zero(text) for text in args.zero]
    c = float(parse_decimal(args.c, "c"))

    options = {} if args.resolution is None else {"resolution": args.resolution}
    criterion, grid_spec = preset(args.preset, table=table, zeros=zeros, c=c, infinite=args.infinite, **options)
    grid = scan(criterion, grid_spec)

    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, f"{args.preset}.csv")
    svg_path = os.path.join(args.out, f"{args.preset}.svg")
    emit_csv(grid, csv_path)
    emit_svg(grid, svg_path)
    return {
        "run": RunManifest(
            command="region",
            params={
                "preset": args.preset,
                "c": args.c,
                "zero": ";".join(args.zero),
                "infinite": args.infinite,
            },
            table_paths=table_paths,
            output_paths=[csv_path, svg_path],
        ),
        "kind": grid.label,
        "cells": int(grid.mask.sum()),
        "lattice": [grid.n_t, grid.n_sigma],
    }


COMMANDS = {
    "verify-threshold": cmd_verify_threshold,
    "check-lemmas": cmd_check_lemmas,
    "count": cmd_count,
    "sum": cmd_sum,
    "region": cmd_region,
}


# ==================== Reports ====================


def _plain(value):
    if isinstance(value, RunManifest):
        return asdict(value)
    if isinstance(value, EpsilonVariant) or isinstance(value, CheckStatus):
        return value.value
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def format_text(report: Dict) -> str:
    run = report["run"]
    lines = [f"# {run['command']} {' '.join(f'{k}={v}' for k, v in sorted(run['params'].items()))}"]
    for path in run["table_paths"]:
        lines.append(f"# table {path}")

    if run["command"] == "verify-threshold":
        for variant, root in sorted(report["roots"].items()):
            shown = f"{root:.6g}" if isinstance(root, float) else (root or "not computed for this window")
            lines.append(f"root({variant}) = {shown}")
        scan_info = report["scan"]
        lines.append(
            f"sign scan: {scan_info['grid_points']} points, {scan_info['sign_changes']} sign change, "
            f"bracket [{scan_info['bracket'][0]:.6g}, {scan_info['bracket'][1]:.6g}]"
        )
        lines.append(f"threshold({report['variant']}) ≈ {report['threshold']:.2g} {report['status']}")
    elif run["command"] == "check-lemmas":
        for check in report["checks"]:
            margin = "" if check["margin"] is None else f" margin={check['margin']:.6g}"
            lines.append(f"{check['status']:<7} {check['name']}{margin}  {check['detail']}")
        lines.append(report["status"])
    elif run["command"] == "count":
        count = "unknown (outside table)" if report["count"] is None else report["count"]
        lower, upper = report["envelope"]
        lines.append(f"N({report['T']}) = {count}; envelope [{lower:.6f}, {upper:.6f}] {report['status']}")
    elif run["command"] == "sum":
        threshold = report["threshold"]
        lines.append(f"sum at t = {report['height']}: {report['value']:.12g}")
        if threshold is not None:
            relation = ">" if report["in_region"] else "<="
            lines.append(f"0.28 c/(sigma - 1/2) = {threshold:.12g} ({relation})")
    elif run["command"] == "region":
        lines.append(f"{report['kind']}: {report['cells']} of {report['lattice'][0] * report['lattice'][1]} points")
        for path in run["output_paths"]:
            lines.append(f"wrote {path}")
    return "\n".join(lines)


def _exit_code(report: Dict) -> int:
    status = report.get("status", CheckStatus.PASS)
    return EXIT_CHECK_FAILED if status == CheckStatus.FAIL else EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    try:
        report = COMMANDS[args.command](args)
    except (XiBoundsError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR

    plain = _plain(report)
    if args.json:
        print(json.dumps(plain, sort_keys=True, indent=2))
    else:
        print(format_text(plain))
    return _exit_code(report)
