"""Property suites behind the ``verify`` command.

Each suite re-derives one family of structural identities at its pinned
tolerance and reports measured errors.  Results are plain records so the CLI
can serialize them to JSON with a stable schema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ga_core import CL3, CL13, Multivector, Signature, blade_product, pseudoscalar
from . import aps, sta
from . import em_fields as em
from . import analytic_lab as lab
from .fields import TrigPolyField


@dataclass(frozen=True)
class PropertyResult:
    suite: str
    prop: str
    ref: str
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.error <= self.tol

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "property": self.prop,
            "paper_ref": self.ref,
            "error": self.error,
            "tol": self.tol,
            "pass": self.passed,
        }


SUITE_NAMES = (
    "algebra",
    "involutions",
    "equivalence",
    "cross_formalism",
    "covariance",
    "duality",
    "gauge",
    "conservation",
    "structure",
    "solutions",
)

DEFAULT_TOLS = {
    "algebra": 1e-12,
    "involutions": 1e-12,
    "equivalence": 1e-10,
    "cross_formalism": 1e-10,
    "covariance": 1e-9,
    "duality": 1e-10,
    "gauge": 1e-10,
    "conservation": 1e-10,
    "structure": 1e-12,
    "solutions": 1e-10,
}


@dataclass
class SuiteConfig:
    """Knobs shared by the verification suites, parsed from key=value text."""

    seed: int = 42
    c: float = 1.0
    m_gamma: float = 0.7
    ladder: tuple = (0.04, 0.02, 0.01)
    order: int = 2
    suites: tuple = SUITE_NAMES
    tols: dict = field(default_factory=dict)

    def tol(self, suite: str) -> float:
        return self.tols.get(suite, DEFAULT_TOLS[suite])


class ConfigError(ValueError):
    """A suite configuration file or value is malformed."""


def parse_config_file(path: str) -> SuiteConfig:
    cfg = SuiteConfig()
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, value = (part.strip() for part in line.partition("="))
            try:
                _apply_config_key(cfg, key, value)
            except (ValueError, KeyError) as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    return cfg


def _apply_config_key(cfg: SuiteConfig, key: str, value: str):
    if key == "seed":
        cfg.seed = int(value)
    elif key == "c":
        cfg.c = float(value)
        if cfg.c <= 0:
            raise ValueError("c must be positive")
    elif key == "m_gamma":
        cfg.m_gamma = float(value)
        if cfg.m_gamma < 0:
            raise ValueError("m_gamma must be non-negative")
    elif key == "ladder":
        cfg.ladder = tuple(float(v) for v in value.split(",") if v.strip())
    elif key == "order":
        cfg.order = int(value)
        if cfg.order not in (2, 4):
            raise ValueError("order must be 2 or 4")
    elif key == "suites":
        names = tuple(v.strip() for v in value.split(",") if v.strip())
        unknown = [n for n in names if n not in SUITE_NAMES]
        if unknown:
            raise ValueError(f"unknown suites: {unknown}")
        cfg.suites = names
    elif key.startswith("tol."):
        suite = key[4:]
        if suite not in SUITE_NAMES:
            raise ValueError(f"unknown suite in tolerance override: {suite}")
        tol = float(value)
        if tol <= 0:
            raise ValueError("tolerances must be positive")
        cfg.tols[suite] = tol
    else:
        raise ValueError(f"unknown config key: {key}")


# ---------------------------------------------------------------------------
# independent reference for the blade product
# ---------------------------------------------------------------------------

def reference_blade_product(a_bits: int, b_bits: int, sig: Signature) -> tuple[int, int]:
    """Symbol-list reduction oracle for the blade product.

    Concatenates the factor lists and bubble-sorts with explicit adjacent
    swaps (each flips the sign) and metric contractions of equal neighbors.
    Kept deliberately naive and separate from the bitmap kernel.
    """
    symbols = [k for k in range(sig.n) if a_bits >> k & 1]
    symbols += [k for k in range(sig.n) if b_bits >> k & 1]
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(symbols) - 1:
            if symbols[i] == symbols[i + 1]:
                sign *= sig.metric_sign(symbols[i])
                del symbols[i:i + 2]
                changed = True
                i = max(i - 1, 0)
            elif symbols[i] > symbols[i + 1]:
                symbols[i], symbols[i + 1] = symbols[i + 1], symbols[i]
                sign = -sign
                changed = True
                i += 1
            else:
                i += 1
    bits = 0
    for k in symbols:
        bits |= 1 << k
    return sign, bits


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_algebra(cfg: SuiteConfig) -> list[PropertyResult]:
    tol = cfg.tol("algebra")
    results = []

    def table_error(sig: Signature) -> float:
        worst = 0.0
        for a in range(sig.dim):
            for b in range(sig.dim):
                got = blade_product(a, b, sig)
                want = reference_blade_product(a, b, sig)
                if got != want:
                    worst = max(worst, 1.0)
        return worst

    results.append(PropertyResult(
        "algebra", "blade-table-cl3-vs-oracle",
        "geometric product sign table, 64 blade pairs", table_error(CL3), 0.0))
    results.append(PropertyResult(
        "algebra", "blade-table-cl13-vs-oracle",
        "geometric product sign table, 256 blade pairs", table_error(CL13), 0.0))

    i3 = pseudoscalar(CL3)
    worst = max(
        (i3.gp(Multivector.blade(CL3, b)) - Multivector.blade(CL3, b).gp(i3)).norm_inf()
        for b in range(CL3.dim)
    )
    results.append(PropertyResult(
        "algebra", "cl3-pseudoscalar-central",
        "unit volume element commutes with the whole algebra", worst, 0.0))

    i4 = pseudoscalar(CL13)
    worst = 0.0
    for b in range(CL13.dim):
        blade = Multivector.blade(CL13, b)
        sign = -1.0 if bin(b).count("1") % 2 else 1.0
        worst = max(worst, (i4.gp(blade) - blade.gp(i4).scale(sign)).norm_inf())
    results.append(PropertyResult(
        "algebra", "cl13-pseudoscalar-parity",
        "volume element commutes with even and anticommutes with odd blades",
        worst, 0.0))

    rng = np.random.default_rng(cfg.seed)
    worst_assoc = 0.0
    for sig in (CL3, CL13, Signature(3, 1), Signature(2, 2), Signature(4, 0)):
        for _ in range(20):
            a, b, c = (Multivector(sig, rng.uniform(-1, 1, sig.dim)) for _ in range(3))
            worst_assoc = max(worst_assoc, (a.gp(b).gp(c) - a.gp(b.gp(c))).norm_inf())
    results.append(PropertyResult(
        "algebra", "gp-associativity-random",
        "associativity of the geometric product", worst_assoc, tol))

    worst_inv = 0.0
    for _ in range(50):
        a = Multivector(CL13, rng.uniform(-1, 1, 16))
        b = Multivector(CL13, rng.uniform(-1, 1, 16))
        ab = a.gp(b)
        worst_inv = max(
            worst_inv,
            (ab.reversion() - b.reversion().gp(a.reversion())).norm_inf(),
            (ab.clifford_conjugate()
             - b.clifford_conjugate().gp(a.clifford_conjugate())).norm_inf(),
            (ab.grade_involution()
             - a.grade_involution().gp(b.grade_involution())).norm_inf(),
        )
    results.append(PropertyResult(
        "algebra", "involution-morphisms",
        "reversion and conjugation reverse products, grade involution preserves them",
        worst_inv, tol))

    one = Multivector.scalar(CL3, 1.0)
    worst_exp = 0.0
    for _ in range(20):
        m = Multivector(CL3, rng.uniform(-1, 1, 8))
        m = m.scale(1.0 / max(m.norm_inf(), 1.0))
        worst_exp = max(worst_exp, (m.exp().gp((-m).exp()) - one).norm_inf())
    results.append(PropertyResult(
        "algebra", "exp-inverse",
        "exp(m) exp(-m) = 1", worst_exp, 1e-10))
    return results


def suite_involutions(cfg: SuiteConfig) -> list[PropertyResult]:
    tol = cfg.tol("involutions")
    rng = np.random.default_rng(cfg.seed + 1)
    worst = 0.0
    worst_recon = 0.0
    for _ in range(1000):
        m = Multivector(CL3, rng.uniform(-1, 1, 8))
        direct = aps.parts(m)
        via = aps.parts_via_involutions(m)
        worst = max(
            worst,
            abs(direct.rs - via.rs),
            float(np.max(np.abs(direct.rv - via.rv))),
            float(np.max(np.abs(direct.iv - via.iv))),
            abs(direct.is_ - via.is_),
        )
        worst_recon = max(worst_recon, (aps.from_parts(direct) - m).norm_inf())
    results = [
        PropertyResult("involutions", "involution-decomposition-matches-grades",
                       "quarter-sum involution identities, sign-corrected",
                       worst, tol),
        PropertyResult("involutions", "parts-reconstruction",
                       "rs + rv + i iv + i is reassembles the element",
                       worst_recon, tol),
    ]

    # Regression: the rv/iv quarter-sums with the commonly printed sign
    # arrangement come out negated relative to the direct grade read-off.
    worst_flip = 0.0
    for _ in range(50):
        m = Multivector(CL3, rng.uniform(-1, 1, 8))
        md, mc = m.reversion(), m.clifford_conjugate()
        mdc = md.clifford_conjugate()
        printed_rv = (mc + mdc - m - md).scale(0.25)
        printed_iv = (md - m + mc - mdc).scale(0.25)
        direct = aps.parts(m)
        worst_flip = max(
            worst_flip,
            float(np.max(np.abs(printed_rv.vector_components() + direct.rv))),
            float(np.max(np.abs(aps.parts(printed_iv).iv + direct.iv))),
        )
    results.append(PropertyResult(
        "involutions", "printed-sign-combination-flips-vectors",
        "as-printed rv/iv quarter-sums equal minus the true parts",
        worst_flip, tol))
    return results


def _equivalence_error(pot, src, points) -> float:
    worst = 0.0
    for x in points:
        p = aps.parts(em.maxwell_residual_aps(pot, src, x))
        r = em.maxwell_residual_components(pot, src, x)
        worst = max(
            worst,
            abs(p.rs - r.gauss_electric),
            float(np.max(np.abs(p.rv + r.ampere))),
            abs(p.is_ - r.gauss_magnetic),
            float(np.max(np.abs(p.iv - r.faraday))),
        )
    return worst


def suite_equivalence(cfg: SuiteConfig) -> list[PropertyResult]:
    rng = np.random.default_rng(cfg.seed + 2)
    worst = 0.0
    for i in range(100):
        pot, src = lab.random_smooth_config(cfg.seed + i, m_gamma=cfg.m_gamma, c=cfg.c)
        worst = max(worst, _equivalence_error(pot, src, lab.random_points(rng, 2)))
    return [PropertyResult(
        "equivalence", "aps-projections-match-component-equations",
        "single-equation projections against the four component residuals, "
        "with (rs, rv, is, iv) mapping to (r1, -r2, r3, r4)",
        worst, cfg.tol("equivalence"))]


def suite_cross_formalism(cfg: SuiteConfig) -> list[PropertyResult]:
    rng = np.random.default_rng(cfg.seed + 3)
    worst = 0.0
    for i in range(100):
        pot, src = lab.random_smooth_config(cfg.seed + i, m_gamma=cfg.m_gamma, c=cfg.c)
        for x in lab.random_points(rng, 2):
            mapped = em.sta_residual_to_aps(em.maxwell_residual_sta(pot, src, x))
            direct = em.maxwell_residual_aps(pot, src, x)
            worst = max(worst, (mapped - direct).norm_inf())
    return [PropertyResult(
        "cross_formalism", "gamma0-bridged-sta-residual-equals-aps",
        "spacetime-algebra residual mapped through the even-subalgebra split",
        worst, cfg.tol("cross_formalism"))]


def suite_covariance(cfg: SuiteConfig, n_rotors: int = 50,
                     n_configs: int = 10) -> list[PropertyResult]:
    rng = np.random.default_rng(cfg.seed + 4)
    configs = [lab.random_smooth_config(cfg.seed + 100 + i, m_gamma=cfg.m_gamma, c=cfg.c)
               for i in range(n_configs)]
    worst = 0.0
    worst_unimod = 0.0
    one = Multivector.scalar(CL3, 1.0)
    for _ in range(n_rotors):
        boost = rng.uniform(-1, 1, 3)
        boost *= rng.uniform(0, 1.5) / max(np.linalg.norm(boost), 1e-12)
        angle = rng.uniform(-1, 1, 3)
        angle *= rng.uniform(0, 1.5) / max(np.linalg.norm(angle), 1e-12)
        rot = aps.rotor(boost, angle)
        worst_unimod = max(worst_unimod,
                           (rot.value.gp(rot.value.clifford_conjugate()) - one).norm_inf())
        linv = aps.lt_matrix_upper(aps.LorentzRotor(rot.inverse_mv))
        for pot, src in configs:
            pot_t, src_t = em.lorentz_transform_config(pot, src, rot)
            x = lab.random_points(rng, 1)[0]
            big_x = np.array([pot.c * x[0], x[1], x[2], x[3]])
            old = linv @ big_x
            x_old = np.array([old[0] / pot.c, old[1], old[2], old[3]])
            got = em.maxwell_residual_aps(pot_t, src_t, x)
            want = aps.lt_apply_lower(rot, em.maxwell_residual_aps(pot, src, x_old))
            worst = max(worst, (got - want).norm_inf())
    return [
        PropertyResult("covariance", "rotor-unimodularity",
                       "rotor times its Clifford conjugate is unity",
                       worst_unimod, 1e-10),
        PropertyResult("covariance", "residual-transforms-as-lower-paravector",
                       "residual of the transformed configuration equals the "
                       "lower-paravector transform of the original residual",
                       worst, cfg.tol("covariance")),
    ]


def suite_duality(cfg: SuiteConfig, n_angles: int = 20) -> list[PropertyResult]:
    rng = np.random.default_rng(cfg.seed + 5)
    tol = cfg.tol("duality")
    worst = 0.0
    for i in range(n_angles):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        pot, src = lab.random_smooth_config(cfg.seed + 200 + i, m_gamma=0.0, c=cfg.c)
        pot_d, src_d = em.duality_rotate_config(pot, src, theta)
        for x in lab.random_points(rng, 2):
            got = em.maxwell_residual_aps(pot_d, src_d, x)
            want = aps.duality_rotate_field(em.maxwell_residual_aps(pot, src, x), theta)
            worst = max(worst, (got - want).norm_inf())
    results = [PropertyResult(
        "duality", "massless-residual-equivariance",
        "residual picks up the duality phase when field and currents rotate",
        worst, tol)]

    worst_force = 0.0
    for _ in range(10):
        u = aps.four_velocity(rng.uniform(-0.4, 0.4, 3), cfg.c)
        f = aps.biparavector(rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3))
        q_e, q_m = rng.uniform(0.5, 2.0, 2)
        _, f_m = em.lorentz_force(q_e, q_m, u, f)
        f_rot = aps.duality_rotate_field(f, math.pi / 2.0)
        f_e2, _ = em.lorentz_force(q_m, q_e, u, f_rot)
        worst_force = max(worst_force, (f_e2 - f_m).norm_inf())
    results.append(PropertyResult(
        "duality", "quarter-turn-maps-electric-force-law-to-magnetic",
        "electric force law on the rotated field reproduces the monopole force",
        worst_force, 1e-12))
    return results


def _harmonic_gauge_function(rng: np.random.Generator, c: float) -> TrigPolyField:
    k = rng.uniform(-1.0, 1.0, 3)
    omega = c * float(np.linalg.norm(k))
    return TrigPolyField.single(rng.uniform(0.2, 1.0), np.concatenate(([-omega], k)),
                                rng.uniform(0, 2 * math.pi))


def suite_gauge(cfg: SuiteConfig, n_gauge: int = 10) -> list[PropertyResult]:
    rng = np.random.default_rng(cfg.seed + 6)
    tol = cfg.tol("gauge")
    worst = 0.0
    for i in range(n_gauge):
        pot, src = lab.random_smooth_config(cfg.seed + 300 + i, m_gamma=cfg.m_gamma, c=cfg.c)
        chi = _harmonic_gauge_function(rng, cfg.c)
        pot_g = em.gauge_transform(pot, chi)
        for x in lab.random_points(rng, 2):
            shift = (em.maxwell_residual_aps(pot_g, src, x)
                     - em.maxwell_residual_aps(pot, src, x))
            want = em.lower_gradient(chi, x, cfg.c).scale(pot.m_gamma ** 2)
            worst = max(worst, (shift - want).norm_inf())
    results = [PropertyResult(
        "gauge", "residual-shift-is-mass-squared-times-gauge-gradient",
        "gauge shift of the electric potential moves the residual by exactly "
        "m^2 times the lower gradient of the gauge function",
        worst, tol)]

    worst0 = 0.0
    pot, src = lab.random_smooth_config(cfg.seed + 350, m_gamma=0.0, c=cfg.c)
    chi = _harmonic_gauge_function(rng, cfg.c)
    pot_g = em.gauge_transform(pot, chi)
    for x in lab.random_points(rng, 4):
        worst0 = max(worst0, (em.maxwell_residual_aps(pot_g, src, x)
                              - em.maxwell_residual_aps(pot, src, x)).norm_inf())
    results.append(PropertyResult(
        "gauge", "massless-gauge-invariance",
        "residual unchanged under gauge shifts once the mass vanishes",
        worst0, 1e-12))
    return results


def suite_conservation(cfg: SuiteConfig) -> list[PropertyResult]:
    rng = np.random.default_rng(cfg.seed + 7)
    tol = cfg.tol("conservation")
    worst = 0.0
    for i in range(20):
        _, src = lab.random_smooth_config(cfg.seed + 400 + i, m_gamma=0.0, c=cfg.c)
        for x in lab.random_points(rng, 2):
            rs, is_ = em.source_wave_scalar_parts(src, x, c=cfg.c)
            ce, cm = em.charge_conservation_residual(src, x)
            scale = em.FOUR_PI / cfg.c
            worst = max(worst, abs(rs - scale * ce), abs(is_ - scale * cm))
    results = [PropertyResult(
        "conservation", "wave-scalar-parts-reproduce-continuity",
        "scalar projections of the wave operator on the field equal "
        "4 pi / c times the two continuity residuals",
        worst, tol)]

    # A halved electric current must break the match measurably.
    _, src = lab.random_smooth_config(cfg.seed + 450, m_gamma=0.0, c=cfg.c)
    halved = em.Sources(
        rho_e=src.rho_e,
        j_e=em.VectorField(tuple(em.SumField([(0.5, src.j_e[k])]) for k in range(3))),
        rho_m=src.rho_m, j_m=src.j_m)
    detected = 0.0
    for x in lab.random_points(rng, 6):
        rs, _ = em.source_wave_scalar_parts(halved, x, c=cfg.c)
        ce, _ = em.charge_conservation_residual(src, x)
        detected = max(detected, abs(rs - em.FOUR_PI / cfg.c * ce))
    results.append(PropertyResult(
        "conservation", "halved-current-mutation-detected",
        "projection path flags a tampered current",
        0.0 if detected > 1e-3 else 1.0, 0.5))
    return results


def suite_structure(cfg: SuiteConfig) -> list[PropertyResult]:
    tol = cfg.tol("structure")
    table = sta.bivector_commutator_table()
    worst = max(table["worst"].values())
    results = [PropertyResult(
        "structure", "bivector-commutator-complex-structure",
        "all 27 commutator relations of the timelike bivector triple",
        worst, 0.0)]

    ok = all(lab.faraday_sign_experiment(eps).exactly_one_vanishes for eps in (1, -1))
    flip = (lab.faraday_sign_experiment(1).vanishing
            != lab.faraday_sign_experiment(-1).vanishing)
    results.append(PropertyResult(
        "structure", "faraday-combination-selected-by-metric-sign",
        "exactly one curl-E combination vanishes per metric choice and the "
        "selected combination flips with it",
        0.0 if (ok and flip) else 1.0, 0.5))

    m = aps.paravector(5.0, [3.0, 0.0, 0.0])
    err = max(abs(aps.quadratic_form(m, 1) - 16.0), abs(aps.quadratic_form(m, -1) + 16.0))
    results.append(PropertyResult(
        "structure", "paravector-quadratic-form-sign",
        "overall sign of the paravector invariant flips with the metric factor",
        err, tol))
    return results


def suite_solutions(cfg: SuiteConfig) -> list[PropertyResult]:
    tol = cfg.tol("solutions")
    results = []
    pts = lab.sample_points(10, seed=cfg.seed, extent=1.0, exclusion_radius=0.5,
                            offset=0.4)

    yk = lab.yukawa_config(1.0, 1.0, c=cfg.c)
    report = em.residual_report(yk, em.zero_sources(), pts)
    results.append(PropertyResult(
        "solutions", "screened-point-charge-residual",
        "exponentially damped Coulomb profile solves the massive electric "
        "sector away from the origin",
        report.worst(), tol))

    mp = lab.monopole_config(1.0, c=cfg.c)
    report = em.residual_report(mp, em.zero_sources(), pts)
    results.append(PropertyResult(
        "solutions", "point-monopole-residual",
        "1/r magnetic-sector potential sources a string-free monopole field",
        report.worst(), tol))

    wave = lab.proca_plane_wave([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], m_gamma=1.0, c=cfg.c)
    x = np.array([0.3, 0.1, -0.2, 0.5])
    r_a, r_z = em.wave_residuals(wave, em.zero_sources(), x)
    results.append(PropertyResult(
        "solutions", "massive-plane-wave-dispersion",
        "transverse wave with w^2 = c^2 (k^2 + m^2) solves the wave equation",
        max(r_a.norm_inf(), r_z.norm_inf()), tol))

    detuned = lab.proca_plane_wave([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], m_gamma=1.0,
                                   c=cfg.c, omega=1.5 * cfg.c)
    r_a, _ = em.wave_residuals(detuned, em.zero_sources(), x)
    results.append(PropertyResult(
        "solutions", "detuned-frequency-rejected",
        "off-shell frequency leaves a visible wave residual",
        0.0 if r_a.norm_inf() > 1e-3 else 1.0, 0.5))
    return results


SUITES = {
    "algebra": suite_algebra,
    "involutions": suite_involutions,
    "equivalence": suite_equivalence,
    "cross_formalism": suite_cross_formalism,
    "covariance": suite_covariance,
    "duality": suite_duality,
    "gauge": suite_gauge,
    "conservation": suite_conservation,
    "structure": suite_structure,
    "solutions": suite_solutions,
}


def run_suites(cfg: SuiteConfig) -> list[PropertyResult]:
    results = []
    for name in cfg.suites:
        results.extend(SUITES[name](cfg))
    return results
