"""Frenet data as truncated Taylor jets.

``FrenetEval`` turns the raw derivative stack of a curve into jets of every
first-order invariant: speed, curvature, torsion, the frame, the curvature
radius r, its arclength derivative, and the cusp density

    sigma = r*tau + d/ds( (dr/ds) / tau ),

which is the speed of the evolute with respect to arc length of the base
curve and vanishes exactly at evolute cusps.  All quantities are vectorized
over the query parameters and computed to whatever jet order the raw stack
supports, so derived curves can in turn be differentiated exactly.

Conventions: curvature is nonnegative, torsion is signed by det(x', x'',
x''') and d/ds denotes the arclength derivative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .curves import ArclengthMap, Curve
from .errors import CuspPoint, DegenerateCurvature, LengthMismatch
from .quadrature import adaptive_integral
from .roots import find_roots
from .taylor import (arclength_derivative, jet_cross, jet_div, jet_dot,
                     jet_mul, jet_recip, jet_sqrt)

__all__ = [
    "FrenetEval", "FrenetState", "frenet_at", "sigma_values",
    "arclength", "total_curvature", "total_torsion",
    "total_absolute_torsion", "indicatrix_geodesic_curvature",
    "CongruenceReport", "is_congruent",
]


def jet_sum(a, b):
    m = min(len(a), len(b))
    return a[:m] + b[:m]


class FrenetEval:
    """Jets of the Frenet apparatus at an array of parameters.

    ``order`` is the order of the raw derivative stack; derived jets come
    out shorter (sigma loses four orders, the frame two).  Division by a
    vanishing torsion or curvature produces inf/nan entries rather than
    raising; callers mask or avoid those parameters.
    """

    def __init__(self, curve: Curve, t, order: int = 4):
        self.curve = curve
        self.t = np.atleast_1d(np.asarray(t, dtype=float))
        self.order = order
        with np.errstate(all="ignore"):
            self.x = curve.derivatives(self.t, order)

    def _quiet(self, fn):
        with np.errstate(all="ignore"):
            return fn()

    @cached_property
    def d1(self):
        return self.x[1:]

    @cached_property
    def u(self):
        return jet_dot(self.d1, self.d1)

    @cached_property
    def v(self):
        """Speed jet |x'|."""
        return self._quiet(lambda: jet_sqrt(self.u))

    @cached_property
    def cross12(self):
        return jet_cross(self.d1, self.x[2:])

    @cached_property
    def q(self):
        return jet_dot(self.cross12, self.cross12)

    @cached_property
    def w(self):
        return self._quiet(lambda: jet_sqrt(self.q))

    @cached_property
    def p(self):
        """det(x', x'', x''') jet."""
        return jet_dot(self.cross12, self.x[3:])

    @cached_property
    def k(self):
        return self._quiet(lambda: jet_div(self.w, jet_mul(self.u, self.v)))

    @cached_property
    def tau(self):
        return self._quiet(lambda: jet_div(self.p, self.q))

    @cached_property
    def T(self):
        return self._quiet(lambda: jet_div(self.d1, self.v))

    @cached_property
    def B(self):
        return self._quiet(lambda: jet_div(self.cross12, self.w))

    @cached_property
    def N(self):
        return jet_cross(self.B, self.T)

    @cached_property
    def r(self):
        """Curvature radius jet 1/k."""
        return self._quiet(lambda: jet_recip(self.k))

    @cached_property
    def r_s(self):
        return self._quiet(lambda: arclength_derivative(self.r, self.v))

    @cached_property
    def rr(self):
        """Jet of (dr/ds)/tau, the binormal coefficient of the evolute."""
        return self._quiet(lambda: jet_div(self.r_s, self.tau))

    @cached_property
    def sigma(self):
        return self._quiet(lambda: jet_sum(
            jet_mul(self.r, self.tau),
            arclength_derivative(self.rr, self.v)))


@dataclass(frozen=True)
class FrenetState:
    """Frenet data of a curve at one parameter."""

    t: float
    point: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    binormal: np.ndarray
    speed: float
    curvature: float
    torsion: float
    radius: float
    sigma: float


def frenet_at(curve: Curve, t: float) -> FrenetState:
    """Frenet state at t; raises at cusps and where curvature vanishes."""
    for c in curve.cusps:
        if abs(t - c) <= 1e-12:
            raise CuspPoint("curve has a cusp", t=t)
    fe = FrenetEval(curve, t, order=4)
    speed = float(fe.v[0, 0])
    if not speed > 1e-15:
        raise CuspPoint("speed vanishes", t=t)
    k = float(fe.k[0, 0])
    if not k > curve.eps_k:
        raise DegenerateCurvature("curvature vanishes", t=t)
    tau = float(fe.tau[0, 0])
    sigma = float(fe.sigma[0, 0]) if abs(tau) > curve.eps_tau else float("nan")
    return FrenetState(
        t=float(t),
        point=fe.x[0, 0].copy(),
        tangent=fe.T[0, 0].copy(),
        normal=fe.N[0, 0].copy(),
        binormal=fe.B[0, 0].copy(),
        speed=speed,
        curvature=k,
        torsion=tau,
        radius=1.0 / k,
        sigma=sigma,
    )


def sigma_values(curve: Curve, ts) -> np.ndarray:
    """Vectorized sigma with nan where torsion is below the threshold."""
    fe = FrenetEval(curve, ts, order=4)
    out = fe.sigma[0].copy()
    out[np.abs(fe.tau[0]) <= curve.eps_tau] = np.nan
    return out


def _speed_fn(curve):
    def speed(ts):
        d1 = curve.derivatives(ts, 1)[1]
        return np.linalg.norm(d1, axis=-1)
    return speed


def arclength(curve: Curve, t0=None, t1=None) -> float:
    a, b = curve.domain
    t0 = a if t0 is None else t0
    t1 = b if t1 is None else t1
    return adaptive_integral(_speed_fn(curve), t0, t1)


def total_curvature(curve: Curve) -> float:
    """Integral of k ds over the whole domain."""
    def integrand(ts):
        fe = FrenetEval(curve, ts, order=2)
        return fe.k[0] * fe.v[0]
    a, b = curve.domain
    return adaptive_integral(integrand, a, b)


def total_torsion(curve: Curve) -> float:
    """Integral of tau ds over the whole domain."""
    def integrand(ts):
        fe = FrenetEval(curve, ts, order=3)
        return fe.tau[0] * fe.v[0]
    a, b = curve.domain
    return adaptive_integral(integrand, a, b)


def total_absolute_torsion(curve: Curve) -> float:
    """Integral of |tau| ds, split at torsion zeros so panels stay smooth."""
    def tau_fn(ts):
        return FrenetEval(curve, ts, order=3).tau[0]

    def integrand(ts):
        fe = FrenetEval(curve, ts, order=3)
        return np.abs(fe.tau[0]) * fe.v[0]

    a, b = curve.domain
    cuts = [a, *find_roots(tau_fn, a, b, closed=curve.closed), b]
    cuts = sorted(set(float(c) for c in cuts))
    return sum(adaptive_integral(integrand, lo, hi)
               for lo, hi in zip(cuts[:-1], cuts[1:]))


def indicatrix_geodesic_curvature(curve: Curve, ts) -> np.ndarray:
    """Geodesic curvature tau/k of the tangent indicatrix on the sphere."""
    fe = FrenetEval(curve, ts, order=3)
    with np.errstate(all="ignore"):
        return fe.tau[0] / fe.k[0]


@dataclass(frozen=True)
class CongruenceReport:
    congruent: bool
    mirror: bool
    max_deviation: float
    length_difference: float


def is_congruent(c1: Curve, c2: Curve, samples: int = 512,
                 tol: float = 1e-4, length_rtol: float = 1e-3) -> CongruenceReport:
    """Compare curvature/torsion profiles over arc length from each start.

    Curves of equal length are congruent iff the profiles agree; a sign flip
    of torsion alone marks a mirror image.  Raises LengthMismatch when the
    arc lengths differ too much for the comparison to mean anything.
    """
    L1, L2 = arclength(c1), arclength(c2)
    if abs(L1 - L2) > length_rtol * max(L1, L2):
        raise LengthMismatch(f"arc lengths differ: {L1:.9g} vs {L2:.9g}")
    s = np.linspace(0.0, min(L1, L2), samples)
    profiles = []
    for curve in (c1, c2):
        t = ArclengthMap(curve).inverse(s)
        fe = FrenetEval(curve, t, order=3)
        profiles.append((fe.k[0], fe.tau[0]))
    (k1, tau1), (k2, tau2) = profiles
    dk = float(np.max(np.abs(k1 - k2)))
    direct = max(dk, float(np.max(np.abs(tau1 - tau2))))
    mirrored = max(dk, float(np.max(np.abs(tau1 + tau2))))
    mirror = mirrored < direct
    deviation = min(direct, mirrored)
    return CongruenceReport(deviation <= tol, mirror, deviation,
                            abs(L1 - L2))
