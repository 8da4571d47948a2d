"""Spacetime-algebra layer: Cl(1,3) gamma frame, splits, Faraday bivector.

The even subalgebra of Cl(1,3) is isomorphic to Cl(3) through the fixed
dictionary gamma_k gamma_0 <-> e_k (and pseudoscalar to pseudoscalar); that
dictionary is the bridge used by every cross-formalism comparison.  Index
placement: contravariant components are stored and diag(+,-,-,-) is applied
explicitly when lowering.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .ga_core import CL13, CL3, Multivector, pseudoscalar
from . import aps

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

I4 = pseudoscalar(CL13)


def gamma(mu: int) -> Multivector:
    """Frame vector gamma_mu (gamma_0 squares to +1, spatial ones to -1)."""
    if not 0 <= mu <= 3:
        raise ValueError(f"frame index {mu} out of range")
    return Multivector.basis_vector(CL13, mu)


GAMMAS = tuple(gamma(mu) for mu in range(4))


def metric_check() -> np.ndarray:
    """Symmetrized products gamma_mu . gamma_nu as a 4x4 table."""
    table = np.zeros((4, 4))
    for mu in range(4):
        for nu in range(4):
            sym = (GAMMAS[mu].gp(GAMMAS[nu]) + GAMMAS[nu].gp(GAMMAS[mu])).scale(0.5)
            table[mu, nu] = sym.scalar_part()
    return table


def spacetime_vector(comps) -> Multivector:
    """Grade-1 element with contravariant components in the gamma frame."""
    return Multivector.vector(CL13, comps)


# ---------------------------------------------------------------------------
# even-subalgebra bridge to Cl(3)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _bridge_table():
    """Map each Cl(3) basis blade to its (bitmap, sign) image in Cl+(1,3)."""
    sigma = [GAMMAS[k + 1].gp(GAMMAS[0]) for k in range(3)]
    table = {}
    for bits3 in range(8):
        img = Multivector.scalar(CL13, 1.0)
        for k in range(3):
            if bits3 >> k & 1:
                img = img.gp(sigma[k])
        nz = np.nonzero(img.coeffs)[0]
        assert nz.size == 1
        table[bits3] = (int(nz[0]), float(img.coeffs[nz[0]]))
    return table


def from_aps(m3: Multivector) -> Multivector:
    """Embed a Cl(3) element into the even subalgebra of Cl(1,3)."""
    if m3.sig != CL3:
        raise ValueError("from_aps expects a Cl(3) multivector")
    c = np.zeros(16)
    for bits3, (bits13, sign) in _bridge_table().items():
        c[bits13] = sign * m3.coeffs[bits3]
    return Multivector(CL13, c)


def to_aps(m13: Multivector, tol: float = 0.0) -> Multivector:
    """Read an even Cl(1,3) element back as a Cl(3) multivector."""
    if m13.sig != CL13:
        raise ValueError("to_aps expects a Cl(1,3) multivector")
    odd = m13.grade(1) + m13.grade(3)
    if odd.norm_inf() > tol:
        raise ValueError(f"element has odd content {odd.norm_inf():.3g}; bridge is even-only")
    c = np.zeros(8)
    for bits3, (bits13, sign) in _bridge_table().items():
        c[bits3] = sign * m13.coeffs[bits13]
    return Multivector(CL3, c)


def split_forward(v: Multivector) -> Multivector:
    """Right-multiply a grade-1 vector by gamma_0 and map to a paravector.

    Components (v0, v) become the paravector v0 + v; the current and
    potential vectors split this way into their upper paravector form.
    """
    _require_grade1(v)
    even = v.gp(GAMMAS[0])
    return to_aps(even)


def split_backward(v: Multivector) -> Multivector:
    """Left-multiply by gamma_0: components (v0, v) become v0 - v."""
    _require_grade1(v)
    even = GAMMAS[0].gp(v)
    return to_aps(even)


def _require_grade1(v: Multivector):
    if v.sig != CL13:
        raise ValueError("expected a Cl(1,3) multivector")
    rest = v - v.grade(1)
    if rest.norm_inf() > 0.0:
        raise ValueError("split is defined for grade-1 vectors only")


def faraday_sta(e_vec, b_vec) -> Multivector:
    """Faraday bivector E^i gamma_i gamma_0 - B^1 g2g3 - B^2 g3g1 - B^3 g1g2."""
    e_vec = np.asarray(e_vec, dtype=np.float64)
    b_vec = np.asarray(b_vec, dtype=np.float64)
    c = np.zeros(16)
    # gamma_i gamma_0 = -(canonical blade {0,i})
    c[0b0011] = -e_vec[0]
    c[0b0101] = -e_vec[1]
    c[0b1001] = -e_vec[2]
    c[0b0110] = -b_vec[2]   # -B^3 g1g2
    c[0b1010] = +b_vec[1]   # -B^2 g3g1 = +B^2 g1g3
    c[0b1100] = -b_vec[0]   # -B^1 g2g3
    return Multivector(CL13, c)


def faraday_components(f: Multivector) -> np.ndarray:
    """Contravariant components F^{mu nu} extracted from the bivector.

    Uses the reversed-factor scalar product <(g^mu ^ g^nu)~ F>_0, which for
    bivectors equals -(g^mu ^ g^nu) . F and inverts the packing exactly.
    """
    if f.sig != CL13:
        raise ValueError("expected a Cl(1,3) multivector")
    out = np.zeros((4, 4))
    gammas_up = [GAMMAS[mu].scale(METRIC[mu, mu]) for mu in range(4)]
    for mu in range(4):
        for nu in range(4):
            if mu == nu:
                continue
            blade = gammas_up[mu].wedge(gammas_up[nu])
            out[mu, nu] = blade.reversion().gp(f).scalar_part()
    return out


def grade_13_decompose(m: Multivector, tol: float = 0.0) -> tuple[Multivector, Multivector]:
    """Split an odd (grades 1 and 3) element into vector and trivector parts."""
    if m.sig != CL13:
        raise ValueError("expected a Cl(1,3) multivector")
    even = m.grade(0) + m.grade(2) + m.grade(4)
    if even.norm_inf() > tol:
        raise ValueError(f"unexpected even-grade content {even.norm_inf():.3g}")
    return m.grade(1), m.grade(3)


# ---------------------------------------------------------------------------
# bivector complex structure
# ---------------------------------------------------------------------------

_EPS3 = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS3[_i, _j, _k] = 1.0
    _EPS3[_j, _i, _k] = -1.0


def bivector_commutator_table() -> dict:
    """Check the three commutator families of the timelike bivectors B_j.

    With B_j = gamma_j gamma_0 and x the commutator product:
        B_j x B_k          = eps_jkm i B_m
        (i B_j) x (i B_k)  = -eps_jkm i B_m
        (i B_j) x B_k      = -eps_jkm B_m
    Returns per-family worst deviations and a list of violated index pairs.
    """
    bs = [GAMMAS[j + 1].gp(GAMMAS[0]) for j in range(3)]
    ibs = [I4.gp(b) for b in bs]
    failures = []
    worst = {"bb": 0.0, "ibib": 0.0, "ibb": 0.0}

    def expected(kind, j, k):
        out = Multivector.zero(CL13)
        for mm in range(3):
            w = _EPS3[j, k, mm]
            if w == 0.0:
                continue
            if kind == "bb":
                out = out + ibs[mm].scale(w)
            elif kind == "ibib":
                out = out - ibs[mm].scale(w)
            else:
                out = out - bs[mm].scale(w)
        return out

    for j in range(3):
        for k in range(3):
            checks = {
                "bb": bs[j].commutator(bs[k]),
                "ibib": ibs[j].commutator(ibs[k]),
                "ibb": ibs[j].commutator(bs[k]),
            }
            for kind, got in checks.items():
                dev = (got - expected(kind, j, k)).norm_inf()
                worst[kind] = max(worst[kind], dev)
                if dev > 0.0:
                    failures.append((kind, j + 1, k + 1, dev))
    return {"worst": worst, "failures": failures, "count": 27}
