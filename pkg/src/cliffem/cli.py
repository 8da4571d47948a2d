"""Command-line harness: verification suites, convergence studies, benchmarks.

Exit codes: 0 on success, 1 when a property or acceptance threshold fails,
2 on usage or configuration errors.  Relative output paths are resolved
against $CLIFFEM_OUTPUT_DIR when that variable is set.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

import numpy as np

from . import analytic_lab as lab
from . import bench as bench_mod
from . import em_fields as em
from .verify import ConfigError, SuiteConfig, parse_config_file, run_suites

OUTPUT_DIR_ENV = "CLIFFEM_OUTPUT_DIR"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def _write_text(path: str | None, text: str):
    if path is None:
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        cfg = parse_config_file(args.config) if args.config else SuiteConfig()
        if args.seed is not None:
            cfg.seed = args.seed
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    results = run_suites(cfg)
    report = {
        "schema": "cliffem-verify-1",
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "seed": cfg.seed,
        "c": cfg.c,
        "m_gamma": cfg.m_gamma,
        "suites": list(cfg.suites),
        "results": [r.as_dict() for r in results],
        "passed": all(r.passed for r in results),
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    _write_text(_resolve_output(args.json), text)
    failures = [r for r in results if not r.passed]
    for r in failures:
        print(f"FAIL {r.suite}/{r.prop}: error {r.error:.3g} exceeds tol {r.tol:g}",
              file=sys.stderr)
    return EXIT_OK if not failures else EXIT_FAILURE


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------

def _convergence_cases(c: float):
    pts_singular = lab.sample_points(10, seed=7, extent=1.0, exclusion_radius=0.5,
                                     offset=0.4)
    pts_smooth = lab.sample_points(10, seed=8, extent=1.0)
    yukawa = lab.yukawa_config(1.0, 1.0, c=c)
    monopole = lab.monopole_config(1.0, c=c)
    wave = lab.proca_plane_wave([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], m_gamma=1.0, c=c)
    none = em.zero_sources()

    def comp_norm(pot, src, pts, pick):
        def fn(scheme):
            return lab.residual_sup_norm(
                lambda x: pick(em.maxwell_residual_components(pot, src, x, scheme)), pts)
        return fn

    # The static configurations exercise spatial stencils through their Gauss
    # equations; the wave exercises the mixed time/space terms of the Ampere
    # equation.  Residuals that vanish identically even under differencing
    # (e.g. the Ampere equation of a static config) are not convergence cases.
    return [
        ("yukawa", "gauss_electric",
         comp_norm(yukawa, none, pts_singular, lambda r: abs(r.gauss_electric))),
        ("monopole", "gauss_magnetic",
         comp_norm(monopole, none, pts_singular, lambda r: abs(r.gauss_magnetic))),
        ("proca_wave", "ampere",
         comp_norm(wave, none, pts_smooth, lambda r: float(np.max(np.abs(r.ampere))))),
    ]


def cmd_convergence(args) -> int:
    try:
        ladder = [float(v) for v in args.ladder.split(",") if v.strip()]
        if not ladder:
            raise ValueError("empty ladder")
    except ValueError as exc:
        print(f"bad ladder: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if len(ladder) < 3:
        print("convergence ladder needs at least 3 spacings", file=sys.stderr)
        return EXIT_USAGE

    rows = [["config", "equation", "spacing", "residual_norm", "fitted_order"]]
    all_ok = True
    for config_name, equation, norm_fn in _convergence_cases(args.c):
        result = lab.convergence_study(norm_fn, ladder, stencil_order=args.order)
        ok = result.accepted(args.order)
        all_ok = all_ok and ok
        for h, n in zip(result.spacings, result.norms):
            rows.append([config_name, equation, f"{h:g}", f"{n:.6e}",
                         f"{result.order:.3f}"])
        if not ok:
            print(f"slope {result.order:.3f} below acceptance for "
                  f"{config_name}/{equation}", file=sys.stderr)
    text = "\n".join(",".join(str(v) for v in row) for row in rows)
    _write_text(_resolve_output(args.csv), text)
    return EXIT_OK if all_ok else EXIT_FAILURE


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def cmd_bench(args) -> int:
    records = bench_mod.run_benchmarks(seed=args.seed, gp_reps=args.reps,
                                       residual_reps=max(args.reps // 40, 10))
    rows = [bench_mod.CSV_HEADER] + [r.as_row() for r in records]
    rows += bench_mod.ratio_rows(records)
    text = "\n".join(",".join(str(v) for v in row) for row in rows)
    _write_text(_resolve_output(args.csv), text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def cmd_report(args) -> int:
    try:
        with open(args.source) as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    results = report.get("results", [])
    width = max((len(f"{r['suite']}/{r['property']}") for r in results), default=20)
    print(f"schema {report.get('schema')}  seed {report.get('seed')}  "
          f"generated {report.get('timestamp')}")
    for r in results:
        status = "PASS" if r["pass"] else "FAIL"
        name = f"{r['suite']}/{r['property']}"
        print(f"{status}  {name:<{width}}  error={r['error']:.3e}  tol={r['tol']:g}")
    n_fail = sum(1 for r in results if not r["pass"])
    print(f"{len(results) - n_fail}/{len(results)} properties passed")
    return EXIT_OK if n_fail == 0 else EXIT_FAILURE


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffem",
        description="Verification, convergence and benchmark harness for the "
                    "two-potential electrodynamics kernel.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the property suites")
    p_verify.add_argument("--config", help="key=value suite configuration file")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--json", help="write the JSON report here instead of stdout")
    p_verify.set_defaults(fn=cmd_verify)

    p_conv = sub.add_parser("convergence", help="grid-spacing convergence study")
    p_conv.add_argument("--ladder", default="0.04,0.02,0.01",
                        help="comma-separated decreasing spacings")
    p_conv.add_argument("--order", type=int, choices=(2, 4), default=2)
    p_conv.add_argument("--c", type=float, default=1.0)
    p_conv.add_argument("--csv", help="write the CSV table here instead of stdout")
    p_conv.set_defaults(fn=cmd_convergence)

    p_bench = sub.add_parser("bench", help="time the two formalisms")
    p_bench.add_argument("--reps", type=int, default=2000)
    p_bench.add_argument("--seed", type=int, default=42)
    p_bench.add_argument("--csv", help="write the CSV table here instead of stdout")
    p_bench.set_defaults(fn=cmd_bench)

    p_report = sub.add_parser("report", help="pretty-print a JSON verify report")
    p_report.add_argument("--from", dest="source", required=True)
    p_report.set_defaults(fn=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else EXIT_OK
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
