#!/usr/bin/env python3
"""Run every property suite and write the JSON report next to this script."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cliffem import cli

if __name__ == "__main__":
    out = pathlib.Path(__file__).resolve().parent / "verify_report.json"
    code = cli.main(["verify", "--json", str(out)])
    print(f"report written to {out}")
    cli.main(["report", "--from", str(out)])
    sys.exit(code)
