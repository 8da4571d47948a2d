#!/usr/bin/env python3
"""Time the 8-coefficient against the 16-coefficient formulation."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cliffem import bench

if __name__ == "__main__":
    records = bench.run_benchmarks(seed=42, gp_reps=4000, residual_reps=100)
    print(",".join(bench.CSV_HEADER))
    for record in records:
        print(",".join(str(v) for v in record.as_row()))
    for row in bench.ratio_rows(records):
        print(",".join(str(v) for v in row))
