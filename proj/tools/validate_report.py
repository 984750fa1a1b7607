#!/usr/bin/env python3
"""Validate a report JSON file against schemas/report.schema.json."""
import json
import sys

import jsonschema


def main() -> int:
    if len(sys.argv) != 3:
        print("usage: validate_report.py SCHEMA REPORT", file=sys.stderr)
        return 2
    with open(sys.argv[1]) as f:
        schema = json.load(f)
    with open(sys.argv[2]) as f:
        report = json.load(f)
    jsonschema.validate(report, schema)
    print(f"{sys.argv[2]}: valid ({len(report['rows'])} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
