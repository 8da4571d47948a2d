"""Analytic field configurations, grids, convergence fits, sign experiments.

Every named configuration is an exact solution of its governing equation
away from singular points, verified in-repo by independent closed-form
derivative identities before being used as a convergence oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .em_fields import Potentials, Sources
from .fields import (
    CentralDiff,
    ParavectorField,
    RadialField,
    TrigPolyField,
    VectorField,
    ZERO,
)


# ---------------------------------------------------------------------------
# named configurations
# ---------------------------------------------------------------------------

def yukawa_config(q_e: float, m_gamma: float, c: float = 1.0) -> Potentials:
    """Static point charge of the massive electric sector.

    A0(r) = q_e exp(-m r) / r, everything else zero.  Off the origin the
    profile satisfies laplacian A0 = m^2 A0, so the electric Gauss residual
    vanishes identically; m = 0 recovers the Coulomb potential.
    """
    if m_gamma < 0:
        raise ValueError("photon mass must be non-negative")

    def f(r):
        return q_e * math.exp(-m_gamma * r) / r

    def df(r):
        return -q_e * math.exp(-m_gamma * r) * (1.0 + m_gamma * r) / r ** 2

    def d2f(r):
        return q_e * math.exp(-m_gamma * r) * (2.0 + 2.0 * m_gamma * r
                                               + (m_gamma * r) ** 2) / r ** 3

    a0 = RadialField(f, df, d2f)
    return Potentials(A=ParavectorField(a0, VectorField.zero()),
                      Z=ParavectorField.zero(), m_gamma=m_gamma, c=c)


def monopole_config(q_m: float, c: float = 1.0) -> Potentials:
    """Static point magnetic charge carried entirely by the second potential.

    Z0(r) = q_m / r gives B = q_m rhat / r^2 with no string anywhere except
    the origin itself.
    """

    def f(r):
        return q_m / r

    def df(r):
        return -q_m / r ** 2

    def d2f(r):
        return 2.0 * q_m / r ** 3

    z0 = RadialField(f, df, d2f)
    return Potentials(A=ParavectorField.zero(),
                      Z=ParavectorField(z0, VectorField.zero()), m_gamma=0.0, c=c)


def _transverse_wave(kvec, polarization, omega: float, amplitude: float) -> VectorField:
    kvec = np.asarray(kvec, dtype=np.float64)
    polarization = np.asarray(polarization, dtype=np.float64)
    if abs(float(np.dot(kvec, polarization))) > 1e-12 * np.linalg.norm(kvec):
        raise ValueError("polarization must be transverse to the wave vector "
                         "(Lorenz gauge)")
    wave4 = np.concatenate(([-omega], kvec))
    comps = tuple(
        TrigPolyField.single(amplitude * polarization[i], wave4) if polarization[i] else ZERO
        for i in range(3)
    )
    return VectorField(comps)


def proca_plane_wave(kvec, polarization, m_gamma: float, c: float = 1.0,
                     amplitude: float = 1.0, omega: float | None = None) -> Potentials:
    """Transverse plane wave of the massive sector, A = pol cos(k.x - w t).

    The default frequency obeys w^2 = c^2 (|k|^2 + m^2); passing a detuned
    ``omega`` produces a non-solution for mutation checks.
    """
    kvec = np.asarray(kvec, dtype=np.float64)
    if omega is None:
        omega = c * math.sqrt(float(np.dot(kvec, kvec)) + m_gamma ** 2)
    a_vec = _transverse_wave(kvec, polarization, omega, amplitude)
    return Potentials(A=ParavectorField(ZERO, a_vec), Z=ParavectorField.zero(),
                      m_gamma=m_gamma, c=c)


def massless_plane_wave(kvec, polarization, c: float = 1.0,
                        amplitude: float = 1.0, omega: float | None = None) -> Potentials:
    """Transverse plane wave of the magnetic sector with w = c |k|."""
    kvec = np.asarray(kvec, dtype=np.float64)
    if omega is None:
        omega = c * math.sqrt(float(np.dot(kvec, kvec)))
    z_vec = _transverse_wave(kvec, polarization, omega, amplitude)
    return Potentials(A=ParavectorField.zero(), Z=ParavectorField(ZERO, z_vec),
                      m_gamma=0.0, c=c)


def _random_trig(rng: np.random.Generator, n_terms: int, freq_scale: float,
                 bound: float) -> TrigPolyField:
    amps = rng.uniform(-1.0, 1.0, n_terms)
    amps *= bound / max(np.sum(np.abs(amps)), 1e-12)
    waves = rng.uniform(-freq_scale, freq_scale, (n_terms, 4))
    phases = rng.uniform(0.0, 2.0 * math.pi, n_terms)
    return TrigPolyField(amps, waves, phases)


def random_smooth_config(seed: int, m_gamma: float = 0.7, c: float = 1.0,
                         n_terms: int = 3, freq_scale: float = 1.2,
                         bound: float = 1.0) -> tuple[Potentials, Sources]:
    """Deterministic smooth trig-polynomial potentials and sources.

    Not a solution of anything; fuel for the equivalence, covariance,
    duality and conservation properties.  Exact partials come with the trig
    family, and every component is bounded by ``bound`` in sup-norm.
    """
    rng = np.random.default_rng(seed)

    def para() -> ParavectorField:
        return ParavectorField(
            _random_trig(rng, n_terms, freq_scale, bound),
            VectorField(tuple(_random_trig(rng, n_terms, freq_scale, bound)
                              for _ in range(3))),
        )

    pot = Potentials(A=para(), Z=para(), m_gamma=m_gamma, c=c)
    src = Sources(
        rho_e=_random_trig(rng, n_terms, freq_scale, bound),
        j_e=VectorField(tuple(_random_trig(rng, n_terms, freq_scale, bound)
                              for _ in range(3))),
        rho_m=_random_trig(rng, n_terms, freq_scale, bound),
        j_m=VectorField(tuple(_random_trig(rng, n_terms, freq_scale, bound)
                              for _ in range(3))),
    )
    return pot, src


def periodic_smooth_config(seed: int, box: float = 2.0 * math.pi, m_gamma: float = 0.5,
                           c: float = 1.0, max_mode: int = 2) -> Potentials:
    """Smooth potentials with integer modes on a 4D box of side ``box``.

    Midpoint quadrature over the box is exact for trig polynomials whose
    aliased modes vanish, which makes total-derivative identities testable
    at machine precision.
    """
    rng = np.random.default_rng(seed)
    base = 2.0 * math.pi / box

    def trig() -> TrigPolyField:
        n_terms = 3
        amps = rng.uniform(-0.5, 0.5, n_terms)
        modes = rng.integers(-max_mode, max_mode + 1, (n_terms, 4))
        waves = base * modes.astype(np.float64)
        phases = rng.uniform(0.0, 2.0 * math.pi, n_terms)
        return TrigPolyField(amps, waves, phases)

    def para() -> ParavectorField:
        return ParavectorField(trig(), VectorField(tuple(trig() for _ in range(3))))

    return Potentials(A=para(), Z=para(), m_gamma=m_gamma, c=c)


def random_points(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return rng.uniform(-scale, scale, (n, 4))


# ---------------------------------------------------------------------------
# Faraday signature experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaradaySignReport:
    """Sup-norms of both curl-E combinations on a wave configuration."""

    eps: int
    norm_plus: float     # |curl E + c^-1 dt B|
    norm_minus: float    # |curl E - c^-1 dt B|
    vanishing: str       # which combination vanishes for this metric choice

    @property
    def exactly_one_vanishes(self) -> bool:
        tol = 1e-10
        return (self.norm_plus <= tol) != (self.norm_minus <= tol)


def faraday_sign_experiment(eps: int, c: float = 1.0, k: float = 1.0,
                            tol: float = 1e-10) -> FaradaySignReport:
    """Evaluate both Faraday combinations on the vacuum wave of a metric choice.

    With the Lorentzian choice (eps = +1) the wave E = xhat cos(kz - wt),
    B = yhat cos(kz - wt) satisfies curl E + c^-1 dt B = 0.  Flipping the
    sign of B produces the wave of the Euclidean choice (eps = -1), where
    the combination with the opposite (anti-Lenz) sign vanishes instead.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    omega = c * k
    wave4 = np.array([-omega, 0.0, 0.0, k])
    e_field = VectorField((TrigPolyField.single(1.0, wave4), ZERO, ZERO))
    b_sign = 1.0 if eps == 1 else -1.0
    b_field = VectorField((ZERO, TrigPolyField.single(b_sign, wave4), ZERO))

    rng = np.random.default_rng(20)
    pts = random_points(rng, 12, scale=2.0)
    norm_plus = norm_minus = 0.0
    for x in pts:
        curl_e = np.array([
            e_field[2].partial(x, 2) - e_field[1].partial(x, 3),
            e_field[0].partial(x, 3) - e_field[2].partial(x, 1),
            e_field[1].partial(x, 1) - e_field[0].partial(x, 2),
        ])
        dt_b = np.array([b_field[i].partial(x, 0) for i in range(3)]) / c
        norm_plus = max(norm_plus, float(np.max(np.abs(curl_e + dt_b))))
        norm_minus = max(norm_minus, float(np.max(np.abs(curl_e - dt_b))))
    vanishing = "curlE + c^-1 dtB" if norm_plus <= tol else "curlE - c^-1 dtB"
    return FaradaySignReport(eps, norm_plus, norm_minus, vanishing)


# ---------------------------------------------------------------------------
# grids and convergence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Evaluation region, spacing and stencil order for grid-mode residuals."""

    extent: float = 1.0
    spacing: float = 0.02
    order: int = 2
    exclusion_radius: float = 0.0

    def __post_init__(self):
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if self.order not in (2, 4):
            raise ValueError("stencil order must be 2 or 4")
        half_width = 1 if self.order == 2 else 2
        # Nested first-derivative stencils reach twice the half width.
        min_excl = 2 * half_width * self.spacing
        if self.exclusion_radius and self.exclusion_radius < min_excl:
            raise ValueError(
                f"exclusion radius {self.exclusion_radius} smaller than stencil reach "
                f"{min_excl}"
            )

    def scheme(self) -> CentralDiff:
        return CentralDiff(order=self.order, h=self.spacing)


def sample_points(n: int, seed: int = 7, extent: float = 1.0,
                  exclusion_radius: float = 0.0, offset: float = 0.0) -> np.ndarray:
    """Deterministic evaluation points, keeping |r| outside the exclusion ball."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        p = rng.uniform(-extent, extent, 4)
        p[1:] += np.sign(p[1:]) * offset
        if np.linalg.norm(p[1:]) > exclusion_radius:
            pts.append(p)
    return np.array(pts)


@dataclass(frozen=True)
class ConvergenceResult:
    """Log-log slope fit of residual norms against grid spacing."""

    spacings: tuple
    norms: tuple
    order: float
    fit_residual: float
    monotone: bool

    def accepted(self, stencil_order: int, slack: float = 0.3) -> bool:
        return self.monotone and self.order >= stencil_order - slack


def convergence_study(residual_norm, ladder, stencil_order: int = 2) -> ConvergenceResult:
    """Fit the decay order of ``residual_norm(CentralDiff)`` over a spacing ladder.

    ``residual_norm`` maps a differentiation scheme to a non-negative norm.
    Needs at least three spacings, each below the previous; non-monotone
    norms are flagged rather than silently fitted.
    """
    ladder = [float(h) for h in ladder]
    if len(ladder) < 3:
        raise ValueError("convergence ladder needs at least 3 spacings")
    if any(h2 >= h1 for h1, h2 in zip(ladder, ladder[1:])):
        raise ValueError("ladder spacings must decrease")
    norms = [float(residual_norm(CentralDiff(order=stencil_order, h=h))) for h in ladder]
    monotone = all(n2 < n1 for n1, n2 in zip(norms, norms[1:]))
    logs_h = np.log(ladder)
    logs_n = np.log(np.maximum(norms, 1e-300))
    coeffs, res_arr, *_ = np.polyfit(logs_h, logs_n, 1, full=True)
    fit_res = float(res_arr[0]) if len(res_arr) else 0.0
    return ConvergenceResult(tuple(ladder), tuple(norms), float(coeffs[0]),
                             fit_res, monotone)


def residual_sup_norm(residual_at, points) -> float:
    """Sup over points of a pointwise residual magnitude."""
    worst = 0.0
    for x in points:
        worst = max(worst, float(residual_at(x)))
    return worst
