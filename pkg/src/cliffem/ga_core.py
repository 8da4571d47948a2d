"""Dense multivector kernel for real Clifford algebras Cl(p, q) with p + q <= 6.

Blades are encoded as bitmaps (bit k set means basis vector k is a factor) and
multivectors as dense coefficient arrays of length 2^n indexed by bitmap.
Every value is immutable after construction and every operation is a pure
function, so all types here are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_DIM = 6

# Tolerance convention: exact structural identities are asserted at STRUCT_TOL
# on unit-scale inputs, iterative or numeric results at NUMERIC_TOL.
STRUCT_TOL = 1e-12
NUMERIC_TOL = 1e-10

EXP_SQUARING_THRESHOLD = 0.5
EXP_TERM_TOL = 1e-16
EXP_MAX_TERMS = 128


class ConvergenceError(RuntimeError):
    """An iterative kernel hit its iteration cap before reaching tolerance."""


@dataclass(frozen=True)
class Signature:
    """Metric descriptor (p, q): p basis vectors square to +1, q to -1.

    Basis ordering is fixed with the positive-norm vectors first, so
    ``metric_sign(k)`` is +1 for k < p and -1 otherwise.  Degenerate (null)
    basis vectors are not supported.
    """

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"signature counts must be non-negative, got ({self.p}, {self.q})")
        if self.n > MAX_DIM:
            raise ValueError(f"dimension {self.n} exceeds supported maximum {MAX_DIM}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return 1 << self.n

    def metric_sign(self, k: int) -> int:
        if not 0 <= k < self.n:
            raise ValueError(f"basis index {k} out of range for n={self.n}")
        return 1 if k < self.p else -1

    def metric_signs(self) -> np.ndarray:
        return np.array([self.metric_sign(k) for k in range(self.n)], dtype=np.int8)


CL3 = Signature(3, 0)
CL13 = Signature(1, 3)


def _reorder_sign(a: int, b: int) -> int:
    # Number of transpositions needed to interleave the factors of blade a
    # past those of blade b, counted as pairs (i in a, j in b) with i > j.
    a >>= 1
    count = 0
    while a:
        count += bin(a & b).count("1")
        a >>= 1
    return 1 if count % 2 == 0 else -1


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Product of two basis blades: returns (sign, result bitmap).

    The result bitmap is ``a ^ b``; the sign combines the transposition
    parity of the interleave with the metric factors of contracted vectors.
    """
    if not (0 <= a < sig.dim and 0 <= b < sig.dim):
        raise ValueError(f"blade bitmaps ({a}, {b}) out of range for dim {sig.dim}")
    sign = _reorder_sign(a, b)
    shared = a & b
    k = 0
    while shared:
        if shared & 1:
            sign *= sig.metric_sign(k)
        shared >>= 1
        k += 1
    return sign, a ^ b


@lru_cache(maxsize=None)
def _tables(p: int, q: int):
    """Cached per-signature product and grade tables."""
    sig = Signature(p, q)
    dim, n = sig.dim, sig.n
    idx = np.arange(dim)
    xor = idx[:, None] ^ idx[None, :]
    sign = np.empty((dim, dim), dtype=np.float64)
    for i in range(dim):
        for j in range(dim):
            sign[i, j], _ = blade_product(i, j, sig)
    grades = np.array([bin(i).count("1") for i in range(dim)], dtype=np.int64)
    grade_masks = tuple(grades == k for k in range(n + 1))
    rev = np.array([(-1) ** (k * (k - 1) // 2) for k in grades], dtype=np.float64)
    ginv = np.array([(-1) ** k for k in grades], dtype=np.float64)
    conj = rev * ginv
    for arr in (xor, sign, grades, rev, ginv, conj):
        arr.setflags(write=False)
    return xor, sign, grades, grade_masks, rev, ginv, conj


class Multivector:
    """Element of Cl(p, q) held as a dense coefficient array over blades."""

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig: Signature, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.float64)
        if coeffs.shape != (sig.dim,):
            raise ValueError(f"expected {sig.dim} coefficients, got shape {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("multivector coefficients must be finite")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # ----- constructors -------------------------------------------------
    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, np.zeros(sig.dim))

    @classmethod
    def scalar(cls, sig: Signature, value: float) -> "Multivector":
        c = np.zeros(sig.dim)
        c[0] = value
        return cls(sig, c)

    @classmethod
    def blade(cls, sig: Signature, bitmap: int, coeff: float = 1.0) -> "Multivector":
        if not 0 <= bitmap < sig.dim:
            raise ValueError(f"blade bitmap {bitmap} out of range")
        c = np.zeros(sig.dim)
        c[bitmap] = coeff
        return cls(sig, c)

    @classmethod
    def basis_vector(cls, sig: Signature, k: int) -> "Multivector":
        if not 0 <= k < sig.n:
            raise ValueError(f"basis index {k} out of range")
        return cls.blade(sig, 1 << k)

    @classmethod
    def vector(cls, sig: Signature, comps) -> "Multivector":
        comps = np.asarray(comps, dtype=np.float64)
        if comps.shape != (sig.n,):
            raise ValueError(f"expected {sig.n} vector components")
        c = np.zeros(sig.dim)
        for k in range(sig.n):
            c[1 << k] = comps[k]
        return cls(sig, c)

    # ----- structure ----------------------------------------------------
    def _check_sig(self, other: "Multivector"):
        if self.sig != other.sig:
            raise ValueError(f"signature mismatch: {self.sig} vs {other.sig}")

    def grade(self, k: int) -> "Multivector":
        """Projection onto the grade-k part."""
        if not 0 <= k <= self.sig.n:
            raise ValueError(f"grade {k} out of range for n={self.sig.n}")
        mask = _tables(self.sig.p, self.sig.q)[3][k]
        return Multivector(self.sig, np.where(mask, self.coeffs, 0.0))

    def grades_present(self, tol: float = 0.0) -> set[int]:
        grades = _tables(self.sig.p, self.sig.q)[2]
        return {int(g) for g, c in zip(grades, self.coeffs) if abs(c) > tol}

    def vector_components(self) -> np.ndarray:
        return np.array([self.coeffs[1 << k] for k in range(self.sig.n)])

    # ----- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check_sig(other)
            return Multivector(self.sig, self.coeffs + other.coeffs)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Multivector):
            self._check_sig(other)
            return Multivector(self.sig, self.coeffs - other.coeffs)
        return NotImplemented

    def __neg__(self):
        return Multivector(self.sig, -self.coeffs)

    def scale(self, factor: float) -> "Multivector":
        return Multivector(self.sig, self.coeffs * float(factor))

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return self.gp(other)
        if isinstance(other, (int, float, np.floating)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return self.scale(other)
        return NotImplemented

    def gp(self, other: "Multivector") -> "Multivector":
        """Geometric product, the bilinear extension of ``blade_product``."""
        self._check_sig(other)
        xor, sign = _tables(self.sig.p, self.sig.q)[:2]
        terms = np.outer(self.coeffs, other.coeffs) * sign
        out = np.bincount(xor.ravel(), weights=terms.ravel(), minlength=self.sig.dim)
        return Multivector(self.sig, out)

    def wedge(self, other: "Multivector") -> "Multivector":
        """Grade-raising (outer) part of the geometric product."""
        self._check_sig(other)
        out = Multivector.zero(self.sig)
        for r in self.grades_present():
            for s in other.grades_present():
                if r + s <= self.sig.n:
                    out = out + self.grade(r).gp(other.grade(s)).grade(r + s)
        return out

    def dot(self, other: "Multivector") -> "Multivector":
        """Grade-lowering (inner) part: sum of <<a>_r <b>_s>_|r-s|."""
        self._check_sig(other)
        out = Multivector.zero(self.sig)
        for r in self.grades_present():
            for s in other.grades_present():
                out = out + self.grade(r).gp(other.grade(s)).grade(abs(r - s))
        return out

    def commutator(self, other: "Multivector") -> "Multivector":
        """Commutator product (a b - b a) / 2."""
        return (self.gp(other) - other.gp(self)).scale(0.5)

    # ----- involutions --------------------------------------------------
    def reversion(self) -> "Multivector":
        """Anti-automorphism negating grades 2, 3 mod 4 (dagger in Cl(3))."""
        rev = _tables(self.sig.p, self.sig.q)[4]
        return Multivector(self.sig, self.coeffs * rev)

    def grade_involution(self) -> "Multivector":
        """Automorphism negating odd grades."""
        ginv = _tables(self.sig.p, self.sig.q)[5]
        return Multivector(self.sig, self.coeffs * ginv)

    def clifford_conjugate(self) -> "Multivector":
        """Anti-automorphism negating grades 1, 2 mod 4 (double dagger in Cl(3))."""
        conj = _tables(self.sig.p, self.sig.q)[6]
        return Multivector(self.sig, self.coeffs * conj)

    # ----- analysis -----------------------------------------------------
    def exp(self) -> "Multivector":
        """Exponential by scaling-and-squaring with a truncated power series.

        The argument is halved until its sup-norm is at most
        ``EXP_SQUARING_THRESHOLD``, the series is summed until the term norm
        drops below ``EXP_TERM_TOL``, then the result is squared back up.
        """
        squarings = 0
        norm = self.norm_inf()
        while norm > EXP_SQUARING_THRESHOLD:
            squarings += 1
            norm /= 2.0
        x = self.scale(0.5 ** squarings)
        result = Multivector.scalar(self.sig, 1.0)
        term = Multivector.scalar(self.sig, 1.0)
        for k in range(1, EXP_MAX_TERMS + 1):
            term = term.gp(x).scale(1.0 / k)
            result = result + term
            if term.norm_inf() < EXP_TERM_TOL:
                break
        else:
            raise ConvergenceError(
                f"exp series did not converge in {EXP_MAX_TERMS} terms "
                f"(input norm {self.norm_inf():.3g}, last term norm {term.norm_inf():.3g})"
            )
        for _ in range(squarings):
            result = result.gp(result)
        return result

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.sig.dim else 0.0

    def approx_eq(self, other: "Multivector", tol: float = STRUCT_TOL) -> bool:
        self._check_sig(other)
        return float(np.max(np.abs(self.coeffs - other.coeffs))) <= tol

    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    # ----- misc ---------------------------------------------------------
    def __repr__(self):
        names = []
        for bitmap, c in enumerate(self.coeffs):
            if c == 0.0:
                continue
            if bitmap == 0:
                names.append(f"{c:g}")
            else:
                factors = "".join(str(k + 1) for k in range(self.sig.n) if bitmap >> k & 1)
                names.append(f"{c:g}*e{factors}")
        body = " + ".join(names) if names else "0"
        return f"Multivector[Cl({self.sig.p},{self.sig.q})]({body})"


def pseudoscalar(sig: Signature) -> Multivector:
    """Top-grade blade with coefficient +1 in the canonical right-handed order."""
    return Multivector.blade(sig, sig.dim - 1)


def grade_project(m: Multivector, k: int) -> Multivector:
    return m.grade(k)


def gp(a: Multivector, b: Multivector) -> Multivector:
    return a.gp(b)


def exp_mv(m: Multivector) -> Multivector:
    return m.exp()
