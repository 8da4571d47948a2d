"""Clifford-algebra kernel and two-potential electrodynamics verification lab."""

from .ga_core import (
    CL3,
    CL13,
    ConvergenceError,
    Multivector,
    Signature,
    blade_product,
    exp_mv,
    gp,
    grade_project,
    pseudoscalar,
)
from .aps import (
    LorentzRotor,
    Parts,
    biparavector,
    duality_rotate_currents,
    duality_rotate_field,
    four_velocity,
    lt_apply_field,
    lt_apply_lower,
    lt_apply_upper,
    paravector,
    parity,
    parts,
    parts_via_involutions,
    quadratic_form,
    rotor,
)
from .em_fields import (
    DyonState,
    FieldTensors,
    LorenzGaugeError,
    Potentials,
    ResidualReport,
    Sources,
    charge_conservation_residual,
    dyon_push,
    fields_from_potentials,
    fields_from_tensors,
    gauge_transform,
    lagrangian_density,
    lorentz_force,
    lorenz_gauge_residual,
    maxwell_residual_aps,
    maxwell_residual_components,
    maxwell_residual_sta,
    residual_report,
    sta_residual_to_aps,
    wave_residuals,
    zero_sources,
)
from .analytic_lab import (
    ConvergenceResult,
    GridSpec,
    convergence_study,
    faraday_sign_experiment,
    massless_plane_wave,
    monopole_config,
    proca_plane_wave,
    random_smooth_config,
    yukawa_config,
)
from .fields import ANALYTIC, CentralDiff, ParavectorField, TrigPolyField, VectorField

__version__ = "0.1.0"
