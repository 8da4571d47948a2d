"""Field configurations over spacetime points and their differentiation.

A spacetime point is a 4-array ``(t, x, y, z)``.  Scalar fields carry an
evaluation callable plus optional exact first and second partials (analytic
mode).  Fields without exact partials can only be differentiated through a
central-difference scheme (grid mode).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ga_core import Multivector, Signature


class DerivativeUnavailableError(RuntimeError):
    """Exact partials were requested from a field that does not carry them."""


class ScalarField:
    """Base scalar field; subclasses provide value and optionally partials.

    ``partial(p, mu)`` and ``partial2(p, mu, nu)`` use coordinate indices
    0..3 for (t, x, y, z).  ``derivative(mu)`` returns the derivative as a
    new ScalarField when the family is closed under differentiation.
    """

    analytic = False

    def value(self, p: np.ndarray) -> float:
        raise NotImplementedError

    def partial(self, p: np.ndarray, mu: int) -> float:
        raise DerivativeUnavailableError(f"{type(self).__name__} has no exact partials")

    def partial2(self, p: np.ndarray, mu: int, nu: int) -> float:
        raise DerivativeUnavailableError(f"{type(self).__name__} has no exact second partials")

    def derivative(self, mu: int) -> "ScalarField":
        raise DerivativeUnavailableError(f"{type(self).__name__} has no derivative closure")

    def __call__(self, p) -> float:
        return self.value(np.asarray(p, dtype=np.float64))

    @property
    def mode(self) -> str:
        return "analytic" if self.analytic else "grid"


class ZeroField(ScalarField):
    analytic = True

    def value(self, p):
        return 0.0

    def partial(self, p, mu):
        return 0.0

    def partial2(self, p, mu, nu):
        return 0.0

    def derivative(self, mu):
        return self


ZERO = ZeroField()


@dataclass(frozen=True)
class AffineField(ScalarField):
    """const + sum_mu lin[mu] * p[mu]."""

    const: float = 0.0
    lin: tuple = (0.0, 0.0, 0.0, 0.0)
    analytic = True

    def value(self, p):
        return self.const + float(np.dot(self.lin, p))

    def partial(self, p, mu):
        return self.lin[mu]

    def partial2(self, p, mu, nu):
        return 0.0

    def derivative(self, mu):
        return AffineField(const=self.lin[mu])


class TrigPolyField(ScalarField):
    """Truncated trigonometric polynomial sum_m amp_m cos(k_m . p + phase_m).

    Closed under differentiation to every order, which makes it the workhorse
    for smooth analytic configurations, gauge functions and plane waves.
    """

    analytic = True

    def __init__(self, amps, wavevecs, phases):
        self.amps = np.atleast_1d(np.asarray(amps, dtype=np.float64))
        self.wavevecs = np.atleast_2d(np.asarray(wavevecs, dtype=np.float64))
        self.phases = np.atleast_1d(np.asarray(phases, dtype=np.float64))
        if self.wavevecs.shape != (self.amps.size, 4) or self.phases.size != self.amps.size:
            raise ValueError("inconsistent trig term shapes")
        for arr in (self.amps, self.wavevecs, self.phases):
            arr.setflags(write=False)

    @classmethod
    def single(cls, amp: float, wavevec, phase: float = 0.0) -> "TrigPolyField":
        return cls([amp], [wavevec], [phase])

    def value(self, p):
        return float(np.dot(self.amps, np.cos(self.wavevecs @ p + self.phases)))

    def partial(self, p, mu):
        return float(np.dot(-self.amps * self.wavevecs[:, mu],
                            np.sin(self.wavevecs @ p + self.phases)))

    def partial2(self, p, mu, nu):
        # (k_mu k_nu) grouped first keeps the Hessian exactly symmetric
        kk = self.wavevecs[:, mu] * self.wavevecs[:, nu]
        return float(np.dot(-self.amps * kk, np.cos(self.wavevecs @ p + self.phases)))

    def derivative(self, mu):
        # d/dp_mu cos(k.p + phi) = -k_mu sin(k.p + phi) = -k_mu cos(k.p + phi - pi/2)
        return TrigPolyField(-self.amps * self.wavevecs[:, mu],
                             self.wavevecs, self.phases - math.pi / 2.0)

    def sup_bound(self) -> float:
        return float(np.sum(np.abs(self.amps)))


class RadialField(ScalarField):
    """Static spherically symmetric field f(r) with supplied f' and f''.

    Partials follow the chain rule; time derivatives vanish.  Evaluation at
    the origin is the caller's responsibility (singular profiles are only
    claimed away from their source point).
    """

    analytic = True

    def __init__(self, f, df, d2f):
        self.f = f
        self.df = df
        self.d2f = d2f

    def _r(self, p):
        r = math.sqrt(p[1] ** 2 + p[2] ** 2 + p[3] ** 2)
        if r == 0.0:
            raise ZeroDivisionError("radial field evaluated at the origin")
        return r

    def value(self, p):
        return self.f(self._r(p))

    def partial(self, p, mu):
        if mu == 0:
            return 0.0
        r = self._r(p)
        return self.df(r) * p[mu] / r

    def partial2(self, p, mu, nu):
        if mu == 0 or nu == 0:
            return 0.0
        r = self._r(p)
        xx = p[mu] * p[nu]  # grouped so the result is exactly symmetric in (mu, nu)
        delta = 1.0 if mu == nu else 0.0
        return self.d2f(r) * xx / r ** 2 + self.df(r) * (delta / r - xx / r ** 3)


class SumField(ScalarField):
    """Linear combination sum_i weight_i * field_i with exact partials."""

    def __init__(self, terms):
        self.terms = tuple((float(w), f) for w, f in terms)
        self.analytic = all(f.analytic for _, f in self.terms)

    def value(self, p):
        return sum(w * f.value(p) for w, f in self.terms)

    def partial(self, p, mu):
        return sum(w * f.partial(p, mu) for w, f in self.terms)

    def partial2(self, p, mu, nu):
        return sum(w * f.partial2(p, mu, nu) for w, f in self.terms)

    def derivative(self, mu):
        return SumField([(w, f.derivative(mu)) for w, f in self.terms])


@dataclass(frozen=True)
class VectorField:
    """Three scalar fields bundled as a spatial vector field."""

    components: tuple

    def __post_init__(self):
        if len(self.components) != 3:
            raise ValueError("vector field needs exactly 3 components")

    def __getitem__(self, i) -> ScalarField:
        return self.components[i]

    def value(self, p) -> np.ndarray:
        return np.array([f.value(p) for f in self.components])

    @property
    def analytic(self) -> bool:
        return all(f.analytic for f in self.components)

    @classmethod
    def zero(cls) -> "VectorField":
        return cls((ZERO, ZERO, ZERO))


@dataclass(frozen=True)
class ParavectorField:
    """Scalar (time) component plus spatial vector field, e.g. a potential."""

    scalar: ScalarField
    vector: VectorField

    @property
    def analytic(self) -> bool:
        return self.scalar.analytic and self.vector.analytic

    @property
    def mode(self) -> str:
        return "analytic" if self.analytic else "grid"

    @classmethod
    def zero(cls) -> "ParavectorField":
        return cls(ZERO, VectorField.zero())

    def component(self, mu: int) -> ScalarField:
        return self.scalar if mu == 0 else self.vector[mu - 1]


# ---------------------------------------------------------------------------
# differentiation schemes
# ---------------------------------------------------------------------------

def _value_fn(f):
    return f.value if isinstance(f, ScalarField) else f


class AnalyticScheme:
    """Differentiate through the exact partials a field carries."""

    order = None

    def d(self, f, p, mu) -> float:
        if not isinstance(f, ScalarField):
            raise DerivativeUnavailableError("analytic scheme needs a ScalarField with partials")
        return f.partial(p, mu)

    def d2(self, f, p, mu, nu) -> float:
        if not isinstance(f, ScalarField):
            raise DerivativeUnavailableError("analytic scheme needs a ScalarField with partials")
        return f.partial2(p, mu, nu)

    def __repr__(self):
        return "AnalyticScheme()"


ANALYTIC = AnalyticScheme()

_STENCILS_D1 = {
    2: ((1, 0.5), (-1, -0.5)),
    4: ((2, -1.0 / 12.0), (1, 8.0 / 12.0), (-1, -8.0 / 12.0), (-2, 1.0 / 12.0)),
}
_STENCILS_D2 = {
    2: ((1, 1.0), (0, -2.0), (-1, 1.0)),
    4: ((2, -1.0 / 12.0), (1, 16.0 / 12.0), (0, -30.0 / 12.0),
        (-1, 16.0 / 12.0), (-2, -1.0 / 12.0)),
}


@dataclass(frozen=True)
class CentralDiff:
    """Central-difference scheme of a given order and spacing.

    Works from field values alone, so it applies to derived callables as
    well as to ScalarFields; second derivatives use the direct stencil on
    the diagonal and composed first-derivative stencils for mixed terms.
    """

    order: int
    h: float

    def __post_init__(self):
        if self.order not in (2, 4):
            raise ValueError(f"stencil order must be 2 or 4, got {self.order}")
        if self.h <= 0:
            raise ValueError("spacing must be positive")

    def _shift(self, p, mu, steps):
        q = np.array(p, dtype=np.float64)
        q[mu] += steps * self.h
        return q

    def d(self, f, p, mu) -> float:
        fn = _value_fn(f)
        return sum(w * fn(self._shift(p, mu, s)) for s, w in _STENCILS_D1[self.order]) / self.h

    def d2(self, f, p, mu, nu) -> float:
        fn = _value_fn(f)
        if mu == nu:
            acc = sum(w * fn(self._shift(p, mu, s)) for s, w in _STENCILS_D2[self.order])
            return acc / self.h ** 2
        return self.d(lambda q: self.d(fn, q, nu), p, mu)

    @property
    def half_width(self) -> int:
        return 1 if self.order == 2 else 2


# ---------------------------------------------------------------------------
# multivector-valued fields
# ---------------------------------------------------------------------------

class MultivectorField:
    """Multivector-valued field: one scalar field per blade coefficient."""

    def __init__(self, sig: Signature, comps: dict):
        self.sig = sig
        self.comps = dict(comps)
        for bitmap in self.comps:
            if not 0 <= bitmap < sig.dim:
                raise ValueError(f"bitmap {bitmap} out of range")

    def value(self, p) -> Multivector:
        c = np.zeros(self.sig.dim)
        for bitmap, f in self.comps.items():
            c[bitmap] = f.value(p)
        return Multivector(self.sig, c)

    def partial_mv(self, p, mu, scheme=ANALYTIC) -> Multivector:
        c = np.zeros(self.sig.dim)
        for bitmap, f in self.comps.items():
            c[bitmap] = scheme.d(f, p, mu)
        return Multivector(self.sig, c)

    def partial2_mv(self, p, mu, nu, scheme=ANALYTIC) -> Multivector:
        c = np.zeros(self.sig.dim)
        for bitmap, f in self.comps.items():
            c[bitmap] = scheme.d2(f, p, mu, nu)
        return Multivector(self.sig, c)


def spot_check_partials(f: ScalarField, points, h: float = 1e-4, tol: float = 1e-5) -> float:
    """Compare exact partials against O(h^2) central differences.

    Returns the worst absolute deviation; raises if it exceeds ``tol``.
    Used to validate hand-derived partials before they serve as oracles.
    """
    fd = CentralDiff(order=2, h=h)
    worst = 0.0
    for p in points:
        p = np.asarray(p, dtype=np.float64)
        for mu in range(4):
            worst = max(worst, abs(f.partial(p, mu) - fd.d(f, p, mu)))
    if worst > tol:
        raise AssertionError(f"exact partials disagree with central differences by {worst:.3g}")
    return worst
