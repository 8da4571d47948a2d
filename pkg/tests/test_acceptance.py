"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the per-criterion
lines alongside pytest's own verdicts.  Tolerances are pinned here and match
the defaults wired into the verification suites.
"""

import math

import numpy as np
import pytest

from cliffem import aps, em_fields as em, analytic_lab as lab, bench, sta, verify
from cliffem.ga_core import CL3, CL13, Multivector, blade_product, pseudoscalar


def _report(number: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    line = f"acceptance {number:02d} {name}: {status}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def _suite_ok(results):
    worst = max((r.error for r in results), default=0.0)
    return all(r.passed for r in results), worst


CFG = verify.SuiteConfig()


def test_criterion_01_algebra_exactness():
    mismatches = 0
    for sig in (CL3, CL13):
        for a in range(sig.dim):
            for b in range(sig.dim):
                if blade_product(a, b, sig) != verify.reference_blade_product(a, b, sig):
                    mismatches += 1
    i3 = pseudoscalar(CL3)
    commute_err = max(
        (i3.gp(Multivector.blade(CL3, b)) - Multivector.blade(CL3, b).gp(i3)).norm_inf()
        for b in range(8))
    i4 = pseudoscalar(CL13)
    parity_err = 0.0
    for b in range(16):
        blade = Multivector.blade(CL13, b)
        sign = -1.0 if bin(b).count("1") % 2 else 1.0
        parity_err = max(parity_err, (i4.gp(blade) - blade.gp(i4).scale(sign)).norm_inf())
    ok = mismatches == 0 and commute_err == 0.0 and parity_err == 0.0
    _report(1, "algebra-exactness", ok,
            f"table mismatches {mismatches}, centrality {commute_err:g}, "
            f"parity {parity_err:g}")


def test_criterion_02_involution_identities():
    ok, worst = _suite_ok(verify.suite_involutions(CFG))
    _report(2, "involution-identities", ok and worst <= 1e-12, f"worst {worst:.3g}")


def test_criterion_03_central_equivalence():
    results = verify.suite_equivalence(CFG)
    ok, worst = _suite_ok(results)
    _report(3, "central-equivalence-100-configs", ok and worst <= 1e-10,
            f"worst {worst:.3g}")


def test_criterion_04_cross_formalism():
    results = verify.suite_cross_formalism(CFG)
    ok, worst = _suite_ok(results)
    _report(4, "cross-formalism-bridge", ok and worst <= 1e-10, f"worst {worst:.3g}")


def test_criterion_05_lorentz_covariance():
    results = verify.suite_covariance(CFG, n_rotors=50, n_configs=10)
    by_name = {r.prop: r for r in results}
    unimod = by_name["rotor-unimodularity"]
    law = by_name["residual-transforms-as-lower-paravector"]
    ok = unimod.error <= 1e-10 and law.error <= 1e-9
    _report(5, "lorentz-covariance-50x10", ok,
            f"unimodularity {unimod.error:.3g}, transform law {law.error:.3g}")


def test_criterion_06_duality_invariance():
    results = verify.suite_duality(CFG, n_angles=20)
    by_name = {r.prop: r for r in results}
    equiv = by_name["massless-residual-equivariance"]
    force = by_name["quarter-turn-maps-electric-force-law-to-magnetic"]
    ok = equiv.error <= 1e-10 and force.error <= 1e-12
    _report(6, "duality-invariance-massless", ok,
            f"equivariance {equiv.error:.3g}, quarter-turn force {force.error:.3g}")


def test_criterion_07_gauge_behavior():
    results = verify.suite_gauge(CFG, n_gauge=10)
    by_name = {r.prop: r for r in results}
    shift = by_name["residual-shift-is-mass-squared-times-gauge-gradient"]
    massless = by_name["massless-gauge-invariance"]
    ok = shift.error <= 1e-10 and massless.error <= 1e-12
    _report(7, "gauge-behavior", ok,
            f"shift {shift.error:.3g}, massless {massless.error:.3g}")


def test_criterion_08_conservation():
    results = verify.suite_conservation(CFG)
    by_name = {r.prop: r for r in results}
    match = by_name["wave-scalar-parts-reproduce-continuity"]
    mutation = by_name["halved-current-mutation-detected"]
    ok = match.error <= 1e-10 and mutation.passed
    _report(8, "charge-conservation", ok,
            f"projection match {match.error:.3g}, mutation detected {mutation.passed}")


def test_criterion_09_analytic_solutions_and_convergence():
    pts = lab.sample_points(10, seed=7, extent=1.0, exclusion_radius=0.5, offset=0.4)
    checks = []

    yukawa = lab.yukawa_config(1.0, 1.0)
    checks.append(em.residual_report(yukawa, em.zero_sources(), pts).worst() <= 1e-10)

    monopole = lab.monopole_config(1.0)
    checks.append(em.residual_report(monopole, em.zero_sources(), pts).worst() <= 1e-10)

    def norm_fn(pot, pick):
        def fn(scheme):
            return lab.residual_sup_norm(
                lambda x: pick(em.maxwell_residual_components(
                    pot, em.zero_sources(), x, scheme)), pts)
        return fn

    ladder = [0.04, 0.02, 0.01]
    conv_y = lab.convergence_study(norm_fn(yukawa, lambda r: abs(r.gauss_electric)),
                                   ladder, stencil_order=2)
    conv_m = lab.convergence_study(norm_fn(monopole, lambda r: abs(r.gauss_magnetic)),
                                   ladder, stencil_order=2)
    checks.append(conv_y.monotone and conv_y.order >= 1.7)
    checks.append(conv_m.monotone and conv_m.order >= 1.7)

    wave = lab.proca_plane_wave([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], m_gamma=1.0)
    x = np.array([0.3, 0.1, -0.2, 0.5])
    r_a, r_z = em.wave_residuals(wave, em.zero_sources(), x)
    checks.append(max(r_a.norm_inf(), r_z.norm_inf()) <= 1e-10)
    assert wave.A.vector[1].wavevecs[0][0] == pytest.approx(-math.sqrt(2.0))

    detuned = lab.proca_plane_wave([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], m_gamma=1.0,
                                   omega=1.5)
    r_a, _ = em.wave_residuals(detuned, em.zero_sources(), x)
    checks.append(r_a.norm_inf() > 1e-2)

    _report(9, "analytic-solutions-and-grid-orders", all(checks),
            f"orders: yukawa {conv_y.order:.2f}, monopole {conv_m.order:.2f}")


def test_criterion_10_structure_checks():
    sta_table = sta.bivector_commutator_table()
    commutators_ok = sta_table["failures"] == [] and sta_table["count"] == 27

    faraday_ok = True
    selections = {}
    for eps in (1, -1):
        report = lab.faraday_sign_experiment(eps)
        faraday_ok = faraday_ok and report.exactly_one_vanishes
        selections[eps] = report.vanishing
    faraday_ok = faraday_ok and selections[1] != selections[-1]

    m = aps.paravector(5.0, [3.0, 0.0, 0.0])
    quad_ok = (aps.quadratic_form(m, 1) == 16.0 and aps.quadratic_form(m, -1) == -16.0)

    _report(10, "structure-checks", commutators_ok and faraday_ok and quad_ok,
            f"commutators 27/27 {commutators_ok}, faraday {faraday_ok}, "
            f"quadratic {quad_ok}")


def test_criterion_11_benchmark_report():
    records = bench.run_benchmarks(seed=42, gp_reps=300, residual_reps=10,
                                   warn=lambda msg: None)
    records2 = bench.run_benchmarks(seed=42, gp_reps=300, residual_reps=10,
                                    warn=lambda msg: None)
    keys = {(r.formalism, r.operation) for r in records}
    expected = {("cl3", "gp"), ("cl13", "gp"),
                ("cl3", "residual_aps"), ("cl13", "residual_sta")}
    checks = [
        keys == expected,
        all(r.ns_per_op_median > 0 for r in records),
        all(r.batches >= 5 for r in records),
        [r.workload_checksum for r in records] == [r.workload_checksum for r in records2],
        len(bench.ratio_rows(records)) == 2,
    ]
    med = {(r.formalism, r.operation): r.ns_per_op_median for r in records}
    ratio = med[("cl13", "gp")] / med[("cl3", "gp")]
    _report(11, "benchmark-report", all(checks),
            f"gp ratio cl13/cl3 {ratio:.2f}, checksums stable {checks[3]}")
