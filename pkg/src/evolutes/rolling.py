"""Rolling the osculating plane along the tangent developable.

Rolling a plane H along the tangent developable of a curve (no slipping, no
twisting) makes every point of H trace an involute of the curve in space;
the trace of the curve itself inside H is its planar development, a plane
curve with the same curvature profile.  For a closed curve the plane comes
back to its initial position composed with an orientation-preserving
isometry, the monodromy, whose rotation angle is the total curvature of the
curve; its fixed point seeds the unique closed involute.

The instantaneous motion of H is a rotation about the current tangent line
with angular rate equal to the torsion, so a tracked point obeys

    dP/dt = tau(t) v(t) T(t) x (P - xi(t)),

which keeps (P - xi) . B constant: a point starting on the osculating plane
stays on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import Curve
from .errors import (IdentityMonodromy, IntegrationFailure, NotClosed,
                     PureTranslation)
from .frenet import FrenetEval
from .quadrature import CumulativeIntegral
from .taylor import antiderivative_jet, jet_mul, jet_sin_cos

__all__ = [
    "Development", "PlanarIsometry", "ContactElement", "monodromy",
    "TracedInvoluteCurve", "trace_involute", "closed_involute",
]


@dataclass(frozen=True)
class ContactElement:
    """A point of the rolling plane together with a direction angle."""

    point: np.ndarray
    angle: float


class Development:
    """Planar development (unrolling) of a curve into its osculating plane.

    The developed curve starts at the origin heading along +x; its turning
    angle is the cumulative integral of k ds and its position follows by a
    second cumulative integration.  Plane coordinates correspond to the
    frame (T, N) of the space curve at the starting parameter.
    """

    def __init__(self, curve: Curve, rtol: float = 1e-11, panels: int = 64):
        self.curve = curve
        a, b = curve.domain

        def kv(ts):
            fe = FrenetEval(curve, ts, order=2)
            return fe.k[0] * fe.v[0]

        def speed(ts):
            d1 = curve.derivatives(ts, 1)[1]
            return np.linalg.norm(d1, axis=-1)

        self._theta = CumulativeIntegral(kv, a, b, rtol=rtol, panels=panels)

        def vx(ts):
            return np.cos(self._theta(ts)) * speed(ts)

        def vy(ts):
            return np.sin(self._theta(ts)) * speed(ts)

        self._posx = CumulativeIntegral(vx, a, b, rtol=rtol, panels=panels)
        self._posy = CumulativeIntegral(vy, a, b, rtol=rtol, panels=panels)

    def angle(self, t):
        return self._theta(t)

    def point(self, t):
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(t)
        out = np.stack([self._posx(t), self._posy(t)], axis=-1)
        return out[0] if scalar else out

    def contact(self, t) -> ContactElement:
        return ContactElement(self.point(float(t)), float(self.angle(float(t))))

    def jets(self, ts, order: int):
        """Jets of the developed position and turning angle at ts."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        fe = FrenetEval(self.curve, ts, order=max(order, 1) + 1)
        kv = jet_mul(fe.k, fe.v)
        theta = antiderivative_jet(self.angle(ts), kv)[: order + 1]
        sin_j, cos_j = jet_sin_cos(theta)
        vel = np.stack([jet_mul(cos_j, fe.v[: len(cos_j)]),
                        jet_mul(sin_j, fe.v[: len(sin_j)])], axis=-1)
        pos = antiderivative_jet(self.point(ts), vel)[: order + 1]
        return pos, theta


@dataclass(frozen=True)
class PlanarIsometry:
    """Orientation-preserving plane isometry x -> R(angle) x + shift."""

    angle: float
    shift: np.ndarray

    @property
    def rotation(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        return np.array([[c, -s], [s, c]])

    @property
    def angle_mod_2pi(self) -> float:
        """Representative of the rotation angle in (-pi, pi]."""
        a = math.remainder(self.angle, 2.0 * math.pi)
        return a if a != -math.pi else math.pi

    def apply(self, pts):
        return np.asarray(pts, dtype=float) @ self.rotation.T + self.shift

    def fixed_point(self, eps: float = 1e-10) -> np.ndarray:
        """The unique fixed point of a genuine rotation."""
        if abs(self.angle_mod_2pi) <= eps:
            if np.linalg.norm(self.shift) <= eps:
                raise IdentityMonodromy("every point is fixed")
            raise PureTranslation("no fixed point: monodromy is a translation")
        eye = np.eye(2)
        return np.linalg.solve(eye - self.rotation, self.shift)


def monodromy(curve: Curve, development: Development | None = None) -> PlanarIsometry:
    """Isometry taking the initial contact element of the development to the
    terminal one; defined for closed curves."""
    a, b = curve.domain
    gap = np.linalg.norm(curve.point(a) - curve.point(b))
    scale = max(1.0, float(np.linalg.norm(curve.point(a))))
    if not curve.closed or gap > 1e-8 * scale:
        raise NotClosed(f"curve endpoints differ by {gap:.3g}")
    dev = development if development is not None else Development(curve)
    end = dev.contact(b)
    return PlanarIsometry(angle=end.angle, shift=end.point)


class TracedInvoluteCurve(Curve):
    """Trajectory of one rolling-plane point: an involute of the base curve.

    The defining field w x (P - xi) with w = tau v T is integrated once;
    derivatives of any order follow from the same field by the Leibniz
    rule, using exact jets of the base curve.
    """

    def __init__(self, base: Curve, start, rtol: float = 1e-11,
                 atol: float = 1e-11, **kw):
        super().__init__(base.domain, **kw)
        self.base = base
        self.start = np.asarray(start, dtype=float)
        self._integrate(rtol, atol)

    def _field(self, t, P):
        fe = FrenetEval(self.base, t, order=3)
        w = fe.tau[0, 0] * fe.v[0, 0] * fe.T[0, 0]
        return np.cross(w, P - fe.x[0, 0])

    def _integrate(self, rtol, atol):
        from scipy.integrate import DOP853

        a, b = self.domain
        solver = DOP853(self._field, a, self.start.copy(), b,
                        rtol=rtol, atol=atol)
        segments, ends = [], []
        while solver.status == "running":
            if solver.step() is not None or solver.status == "failed":
                raise IntegrationFailure(
                    f"involute integration failed near t={solver.t:.9g}")
            segments.append(solver.dense_output())
            ends.append(solver.t)
        self._segments = segments
        self._ends = np.asarray(ends)

    def _position(self, t: np.ndarray) -> np.ndarray:
        idx = np.clip(np.searchsorted(self._ends, t, side="left"),
                      0, len(self._segments) - 1)
        out = np.empty((len(t), 3))
        for j in np.unique(idx):
            mask = idx == j
            out[mask] = self._segments[j](t[mask]).T
        return out

    def derivatives(self, t, order: int) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        a, b = self.domain
        fe = FrenetEval(self.base, np.clip(t, a, b), order=max(order, 1) + 2)
        w = jet_mul(jet_mul(fe.tau, fe.v), fe.T)
        out = np.empty((order + 1, len(t), 3))
        out[0] = self._position(np.clip(t, a, b))
        for m in range(order):
            acc = np.zeros((len(t), 3))
            for j in range(m + 1):
                c = math.comb(m, j)
                acc += c * np.cross(w[j], out[m - j] - fe.x[m - j])
            out[m + 1] = acc
        return out

    def __repr__(self):
        return f"TracedInvoluteCurve({self.base!r}, start={self.start.tolist()})"


def trace_involute(curve: Curve, start, **kw) -> TracedInvoluteCurve:
    """Involute through the given space point, which must lie on the initial
    osculating plane."""
    fe = FrenetEval(curve, curve.domain[0], order=3)
    offset = np.asarray(start, dtype=float) - fe.x[0, 0]
    normal_part = abs(float(offset @ fe.B[0, 0]))
    if normal_part > 1e-8 * max(1.0, float(np.linalg.norm(offset))):
        raise ValueError("start point is not on the initial osculating plane")
    return TracedInvoluteCurve(curve, start, **kw)


def closed_involute(curve: Curve, development: Development | None = None,
                    **kw) -> TracedInvoluteCurve:
    """The involute seeded at the monodromy fixed point.

    For a generic closed curve this is the unique closed involute; the
    caller can check the residual gap between its endpoints.
    """
    dev = development if development is not None else Development(curve)
    iso = monodromy(curve, dev)
    p = iso.fixed_point()
    fe = FrenetEval(curve, curve.domain[0], order=3)
    start = fe.x[0, 0] + p[0] * fe.T[0, 0] + p[1] * fe.N[0, 0]
    return TracedInvoluteCurve(curve, start, closed=True, **kw)
