"""Algebra-of-physical-space layer: Cl(3) paravectors, rotors, duality.

A paravector (scalar + vector) carries a spacetime four-vector with the time
component in the scalar slot.  The unit pseudoscalar i = e1 e2 e3 commutes
with everything and squares to -1, so grade-2 and grade-3 parts act as the
imaginary vector and imaginary scalar of a complex decomposition:

    m = rs + rv + i*iv + i*is
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .ga_core import CL3, Multivector, NUMERIC_TOL, pseudoscalar
from .fields import ANALYTIC, MultivectorField

E1 = Multivector.basis_vector(CL3, 0)
E2 = Multivector.basis_vector(CL3, 1)
E3 = Multivector.basis_vector(CL3, 2)
I3 = pseudoscalar(CL3)

# Bitmaps of the Cl(3) basis: 1, e1, e2, e12, e3, e13, e23, e123.
_VEC_BITS = (1, 2, 4)
# i*e1 = e23, i*e2 = -e13, i*e3 = e12
_IVEC_BITS = (6, 5, 3)
_IVEC_SIGNS = (1.0, -1.0, 1.0)


class Parts(NamedTuple):
    """Real-scalar, real-vector, imaginary-vector, imaginary-scalar parts."""

    rs: float
    rv: np.ndarray
    iv: np.ndarray
    is_: float


def paravector(scalar: float, vec) -> Multivector:
    """Grade-{0,1} element scalar + vec."""
    vec = np.asarray(vec, dtype=np.float64)
    c = np.zeros(8)
    c[0] = scalar
    c[list(_VEC_BITS)] = vec
    return Multivector(CL3, c)


def biparavector(evec, bvec) -> Multivector:
    """Grade-{1,2} element evec + i*bvec, the layout of the field F = E + iB."""
    evec = np.asarray(evec, dtype=np.float64)
    bvec = np.asarray(bvec, dtype=np.float64)
    c = np.zeros(8)
    c[list(_VEC_BITS)] = evec
    for k in range(3):
        c[_IVEC_BITS[k]] = _IVEC_SIGNS[k] * bvec[k]
    return Multivector(CL3, c)


def from_complex_scalar(re: float, im: float) -> Multivector:
    """Scalar + pseudoscalar element re + i*im."""
    c = np.zeros(8)
    c[0], c[7] = re, im
    return Multivector(CL3, c)


def parts(m: Multivector) -> Parts:
    """Decompose a Cl(3) element by direct grade read-off."""
    if m.sig != CL3:
        raise ValueError("parts() expects a Cl(3) multivector")
    rv = np.array([m.coeffs[b] for b in _VEC_BITS])
    iv = np.array([s * m.coeffs[b] for b, s in zip(_IVEC_BITS, _IVEC_SIGNS)])
    return Parts(float(m.coeffs[0]), rv, iv, float(m.coeffs[7]))


def from_parts(p: Parts) -> Multivector:
    return paravector(p.rs, p.rv) + biparavector(np.zeros(3), p.iv) + from_complex_scalar(0.0, p.is_)


def parts_via_involutions(m: Multivector) -> Parts:
    """Decompose using only m and its three involutions.

    The sign-corrected quarter-sum combinations are used; the combinations
    as usually printed for the rv and iv parts come out with a flipped sign
    (see the regression test exercising that discrepancy).
    """
    md = m.reversion()
    mc = m.clifford_conjugate()
    mdc = md.clifford_conjugate()
    rs_mv = (m + md + mc + mdc).scale(0.25)
    rv_mv = (m + md - mc - mdc).scale(0.25)
    is_mv = (m - md + mc - mdc).scale(0.25)
    iv_mv = (m - md - mc + mdc).scale(0.25)
    return Parts(
        rs_mv.scalar_part(),
        rv_mv.vector_components(),
        parts(iv_mv).iv,
        float(is_mv.coeffs[7]),
    )


def parity(m: Multivector) -> Multivector:
    """Spatial parity inversion: e_k -> -e_k.

    On a paravector this is the Clifford conjugate; on a pseudoparavector
    i*J it equals the composition (double dagger then dagger), i.e. the
    grade involution, which is the grade-defined extension used here.
    """
    if m.sig != CL3:
        raise ValueError("parity() expects a Cl(3) multivector")
    return m.grade_involution()


@dataclass(frozen=True)
class LorentzRotor:
    """Unimodular Cl(3) rotor: value * value.clifford_conjugate() = 1."""

    value: Multivector
    tol: float = NUMERIC_TOL

    def __post_init__(self):
        one = Multivector.scalar(CL3, 1.0)
        defect = (self.value.gp(self.value.clifford_conjugate()) - one).norm_inf()
        if defect > self.tol:
            raise ValueError(f"rotor is not unimodular (defect {defect:.3g})")

    @property
    def inverse_mv(self) -> Multivector:
        return self.value.clifford_conjugate()

    @property
    def dagger_inverse_mv(self) -> Multivector:
        # (R^dagger)^-1 = (R^ddagger)^dagger = grade involution of R
        return self.value.grade_involution()

    def compose(self, first: "LorentzRotor") -> "LorentzRotor":
        """Rotor equivalent to applying ``first`` then ``self``."""
        return LorentzRotor(self.value.gp(first.value))


def rotor(boost, rotation) -> LorentzRotor:
    """exp((boost - i*rotation)/2): six-parameter restricted transformation.

    Pure boosts are Hermitian (dagger-invariant), pure rotations unitary.
    """
    boost = np.asarray(boost, dtype=np.float64)
    rotation = np.asarray(rotation, dtype=np.float64)
    if not (np.all(np.isfinite(boost)) and np.all(np.isfinite(rotation))):
        raise ValueError("rotor parameters must be finite")
    generator = biparavector(boost, -rotation).scale(0.5)
    return LorentzRotor(generator.exp())


def lt_apply_upper(rot: LorentzRotor, m: Multivector) -> Multivector:
    """Active transformation of an upper paravector: m -> R m R^dagger."""
    return rot.value.gp(m).gp(rot.value.reversion())


def lt_apply_lower(rot: LorentzRotor, m: Multivector) -> Multivector:
    """Active transformation of a lower paravector: m -> (R^dagger)^-1 m R^-1."""
    return rot.dagger_inverse_mv.gp(m).gp(rot.inverse_mv)


def lt_apply_field(rot: LorentzRotor, f: Multivector) -> Multivector:
    """Field transformation F -> R F R^-1, consistent with the derivative law."""
    return rot.value.gp(f).gp(rot.inverse_mv)


def lt_matrix_upper(rot: LorentzRotor) -> np.ndarray:
    """4x4 matrix of the upper-paravector action on components (x0, x, y, z)."""
    basis = [Multivector.scalar(CL3, 1.0), E1, E2, E3]
    cols = []
    for b in basis:
        pb = parts(lt_apply_upper(rot, b))
        cols.append(np.concatenate(([pb.rs], pb.rv)))
    return np.array(cols).T


def duality_rotate_field(f: Multivector, theta: float) -> Multivector:
    """F -> F exp(-i theta); i is central so the side does not matter."""
    phase = from_complex_scalar(math.cos(theta), -math.sin(theta))
    return f.gp(phase)


def duality_rotate_currents(j_e: Multivector, j_m: Multivector,
                            theta: float) -> tuple[Multivector, Multivector]:
    """Mix electric and magnetic currents by the duality angle."""
    ct, st = math.cos(theta), math.sin(theta)
    return (j_e.scale(ct) + j_m.scale(st), j_e.scale(-st) + j_m.scale(ct))


def quadratic_form(m: Multivector, eps: int = 1) -> float:
    """Paravector invariant eps * (m0^2 - |m_vec|^2).

    eps = +1 selects a (1,3) paravector metric, eps = -1 the (3,1) one; the
    two choices differ only by this overall sign.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    p = parts(m)
    dust = max(abs(p.is_), float(np.max(np.abs(p.iv))))
    if dust > 1e-12 * max(1.0, m.norm_inf()):
        raise ValueError("quadratic form is defined for paravectors (grades 0 and 1)")
    return eps * (p.rs ** 2 - float(np.dot(p.rv, p.rv)))


def four_velocity(v, c: float = 1.0) -> Multivector:
    """gamma * (1 + v/c) for coordinate velocity v; requires |v| < c."""
    v = np.asarray(v, dtype=np.float64)
    beta2 = float(np.dot(v, v)) / c ** 2
    if beta2 >= 1.0:
        raise ValueError(f"speed {math.sqrt(beta2):.3g} c is not below c")
    gamma = 1.0 / math.sqrt(1.0 - beta2)
    return paravector(gamma, gamma * v / c)


# ---------------------------------------------------------------------------
# paravector derivatives of multivector-valued fields
# ---------------------------------------------------------------------------

def paravector_derivative_backward(f: MultivectorField, p, c: float = 1.0,
                                   scheme=ANALYTIC) -> Multivector:
    """(c^-1 d_t + grad) f, with grad f = sum_k e_k (d_k f)."""
    out = f.partial_mv(p, 0, scheme).scale(1.0 / c)
    for k, ek in enumerate((E1, E2, E3)):
        out = out + ek.gp(f.partial_mv(p, k + 1, scheme))
    return out


def paravector_derivative_forward(f: MultivectorField, p, c: float = 1.0,
                                  scheme=ANALYTIC) -> Multivector:
    """(c^-1 d_t - grad) f."""
    out = f.partial_mv(p, 0, scheme).scale(1.0 / c)
    for k, ek in enumerate((E1, E2, E3)):
        out = out - ek.gp(f.partial_mv(p, k + 1, scheme))
    return out


def dalembertian(f: MultivectorField, p, c: float = 1.0, scheme=ANALYTIC) -> Multivector:
    """Backward then forward derivative: c^-2 d_tt - laplacian, componentwise.

    Expanded as c^-2 d_tt f - sum_kl e_k e_l d_k d_l f; the mixed products
    cancel pairwise for twice-differentiable fields.
    """
    out = f.partial2_mv(p, 0, 0, scheme).scale(1.0 / c ** 2)
    es = (E1, E2, E3)
    for k in range(3):
        for l in range(3):
            out = out - es[k].gp(es[l]).gp(f.partial2_mv(p, k + 1, l + 1, scheme))
    return out
