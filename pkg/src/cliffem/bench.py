"""Microbenchmark comparing the Cl(3) and Cl(1,3) formulations.

The two algebras state the same field equation; this harness times the
geometric product (8 vs 16 coefficients) and a full residual evaluation in
each formalism on identical seeded workloads, reporting medians with
interquartile ranges.  Timing runs stay on one thread for stability.
"""

from __future__ import annotations

import hashlib
import sys
import time
from dataclasses import dataclass

import numpy as np

from .ga_core import CL3, CL13, Multivector, Signature
from . import analytic_lab as lab
from . import em_fields as em

MIN_BATCHES = 5
MIN_BATCH_SECONDS = 1e-3  # below this, timer noise dominates; reps are doubled


@dataclass(frozen=True)
class BenchRecord:
    formalism: str
    operation: str
    reps: int
    batches: int
    ns_per_op_median: float
    ns_per_op_iqr: float
    workload_checksum: str

    def as_row(self) -> list:
        return [self.formalism, self.operation, self.reps, self.batches,
                f"{self.ns_per_op_median:.1f}", f"{self.ns_per_op_iqr:.1f}",
                self.workload_checksum]


CSV_HEADER = ["formalism", "operation", "reps", "batches",
              "ns_per_op_median", "ns_per_op_iqr", "workload_checksum"]


def _checksum(arrays) -> str:
    digest = hashlib.sha256()
    for arr in arrays:
        digest.update(np.ascontiguousarray(arr).tobytes())
    return digest.hexdigest()[:16]


def _time_batches(fn, reps: int, batches: int, warn) -> tuple[list[float], int]:
    """Per-op nanoseconds for each batch, doubling reps when batches are too short."""
    while True:
        t0 = time.perf_counter()
        fn(reps)
        elapsed = time.perf_counter() - t0
        if elapsed >= MIN_BATCH_SECONDS:
            break
        reps *= 2
        if warn:
            warn(f"batch below timer resolution comfort zone; reps increased to {reps}")
    samples = []
    for _ in range(batches):
        t0 = time.perf_counter()
        fn(reps)
        samples.append((time.perf_counter() - t0) * 1e9 / reps)
    return samples, reps


def _median_iqr(samples) -> tuple[float, float]:
    q1, med, q3 = np.percentile(samples, [25, 50, 75])
    return float(med), float(q3 - q1)


def gp_workload(sig: Signature, seed: int, n_pairs: int = 64):
    rng = np.random.default_rng(seed)
    lhs = rng.uniform(-1.0, 1.0, (n_pairs, sig.dim))
    rhs = rng.uniform(-1.0, 1.0, (n_pairs, sig.dim))
    mvs = [(Multivector(sig, a), Multivector(sig, b)) for a, b in zip(lhs, rhs)]
    return mvs, _checksum([lhs, rhs])


def bench_gp(sig: Signature, seed: int, reps: int, batches: int = MIN_BATCHES,
             warn=None) -> BenchRecord:
    pairs, checksum = gp_workload(sig, seed)
    n = len(pairs)

    def run(k):
        for i in range(k):
            a, b = pairs[i % n]
            a.gp(b)

    samples, reps_used = _time_batches(run, reps, batches, warn)
    med, iqr = _median_iqr(samples)
    name = f"cl{sig.p}{sig.q}" if sig.q else f"cl{sig.p}"
    return BenchRecord(name, "gp", reps_used, batches, med, iqr, checksum)


def residual_workload(seed: int, n_points: int = 16):
    pot, src = lab.random_smooth_config(seed)
    rng = np.random.default_rng(seed + 1)
    points = lab.random_points(rng, n_points)
    return pot, src, points, _checksum([points])


def bench_residual(formalism: str, seed: int, reps: int, batches: int = MIN_BATCHES,
                   warn=None) -> BenchRecord:
    pot, src, points, checksum = residual_workload(seed)
    n = len(points)
    evaluate = (em.maxwell_residual_aps if formalism == "aps"
                else em.maxwell_residual_sta)

    def run(k):
        for i in range(k):
            evaluate(pot, src, points[i % n])

    samples, reps_used = _time_batches(run, reps, batches, warn)
    med, iqr = _median_iqr(samples)
    algebra = "cl3" if formalism == "aps" else "cl13"
    return BenchRecord(algebra, f"residual_{formalism}", reps_used, batches,
                       med, iqr, checksum)


def run_benchmarks(seed: int = 42, gp_reps: int = 2000, residual_reps: int = 50,
                   batches: int = MIN_BATCHES, warn=None) -> list[BenchRecord]:
    if warn is None:
        warn = lambda msg: print(f"warning: {msg}", file=sys.stderr)
    records = [
        bench_gp(CL3, seed, gp_reps, batches, warn),
        bench_gp(CL13, seed, gp_reps, batches, warn),
        bench_residual("aps", seed, residual_reps, batches, warn),
        bench_residual("sta", seed, residual_reps, batches, warn),
    ]
    return records


def ratio_rows(records) -> list[list]:
    """cl13-over-cl3 median ratios, appended to the CSV after the raw records."""
    by_key = {(r.formalism, r.operation): r for r in records}
    rows = []
    gp3, gp13 = by_key.get(("cl3", "gp")), by_key.get(("cl13", "gp"))
    if gp3 and gp13:
        rows.append(["ratio_cl13_over_cl3", "gp", "", "",
                     f"{gp13.ns_per_op_median / gp3.ns_per_op_median:.3f}", "", ""])
    r3 = by_key.get(("cl3", "residual_aps"))
    r13 = by_key.get(("cl13", "residual_sta"))
    if r3 and r13:
        rows.append(["ratio_cl13_over_cl3", "residual", "", "",
                     f"{r13.ns_per_op_median / r3.ns_per_op_median:.3f}", "", ""])
    return rows
