#!/usr/bin/env python3
"""Validate l0screen JSON and CSV outputs against the schemas in schemas/."""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import jsonschema

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"
BENCH_HEADER = [
    "instance_id", "method", "k", "gamma_exp", "rho", "snr", "fixed_count", "fixed_pct",
    "nodes", "time_s", "optimal", "status", "seed", "n", "objective",
]
INTEGER_COLUMNS = {"instance_id", "k", "fixed_count", "nodes", "seed", "n"}
TEXT_COLUMNS = {"method", "optimal", "status"}


def load_schema(name):
    with open(SCHEMA_DIR / f"{name}.schema.json", encoding="utf-8") as f:
        return json.load(f)


def coerce(column, text):
    if column in TEXT_COLUMNS:
        return text
    if text == "":
        return None
    return int(text) if column in INTEGER_COLUMNS else float(text)


def check_bench(path):
    validator = jsonschema.Draft202012Validator(load_schema("bench_row"))
    errors = []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != BENCH_HEADER:
            return [f"unexpected header {header}"]
        for line, row in enumerate(reader, start=2):
            if len(row) != len(header):
                errors.append(f"line {line}: {len(row)} fields, expected {len(header)}")
                continue
            try:
                record = {c: coerce(c, v) for c, v in zip(header, row)}
            except ValueError as e:
                errors.append(f"line {line}: {e}")
                continue
            errors += [f"line {line}: {e.message}" for e in validator.iter_errors(record)]
    return errors


def check_matrix(path):
    width = None
    with open(path, newline="", encoding="utf-8") as f:
        for line, row in enumerate(csv.reader(f), start=1):
            if not row:
                continue
            try:
                values = [float(v) for v in row]
            except ValueError as e:
                return [f"line {line}: {e}"]
            if not all(math.isfinite(v) for v in values):
                return [f"line {line}: non-finite entry"]
            if width is None:
                width = len(values)
            elif len(values) != width:
                return [f"line {line}: {len(values)} columns, expected {width}"]
    return [] if width is not None else ["empty matrix"]


def check_json(path, data):
    if path.name == "meta.json":
        schema = "meta"
    elif path.name == "fixes.json":
        schema = "fixes"
    elif isinstance(data, dict) and data.get("command") == "gen":
        schema = "gen_output"
    else:
        schema = "run_report"
    validator = jsonschema.Draft202012Validator(load_schema(schema))
    errors = [f"{'/'.join(map(str, e.path)) or '<root>'}: {e.message}"
              for e in validator.iter_errors(data)]
    if not errors and schema == "fixes" and len(data["columns"]) != len(data["fixes"]):
        errors.append("columns and fixes differ in length")
    if not errors and schema == "run_report" and "screen" in data:
        s = data["screen"]
        if s["n_zero"] + s["n_one"] + s["n_free"] != data["instance"]["n"]:
            errors.append("screen counts do not add up to n")
        if len(s["fixes"]) != data["instance"]["n"]:
            errors.append("fixes length differs from n")
    return errors


def check(path):
    path = Path(path)
    if path.suffix == ".json":
        with open(path, encoding="utf-8") as f:
            return check_json(path, json.load(f))
    with open(path, encoding="utf-8") as f:
        first = f.readline().strip()
    if first.startswith("instance_id,"):
        return check_bench(path)
    return check_matrix(path)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("files", nargs="+", type=Path,
                        help="JSON reports, meta.json, fixes.json, bench CSV or matrix CSV")
    args = parser.parse_args()
    failed = 0
    for path in args.files:
        errors = check(path)
        for e in errors:
            print(f"{path}: {e}", file=sys.stderr)
        failed += bool(errors)
        if not errors:
            print(f"{path}: ok")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
