"""Monge evolutes and involutes: the taut-string constructions.

Wrapping a taut string of length l around a curve eta traces the Monge
involute xi = eta + (l - s) T.  Conversely the Monge evolutes of xi form a
one-parameter family

    eta = xi + r n - r tan(alpha) b,      d(alpha)/ds = tau,

indexed by the starting angle alpha0.  They foliate the normal developable
of xi (each point sits on a polar line), satisfy the string identities

    |eta - xi| = 1 / (k |cos alpha|),     |d eta/ds| = | d/ds |eta - xi| |,

have cusps at critical points of k cos(alpha), escape to infinity where
cos(alpha) or k vanishes, and touch the evolute of xi where the binormal
coefficients agree, i.e. at zeros of dr/ds + r tau tan(alpha).  For a
closed curve the evolutes close up exactly when the total torsion is an
integer multiple of pi; involutes of a closed (cusped) curve close exactly
when its signed length vanishes, the sign flipping at every cusp.
"""

from __future__ import annotations

import math

import numpy as np

from .curves import ArclengthMap, Curve
from .errors import DegenerateCurvature, InfinityEscape
from .frenet import FrenetEval, jet_sum, total_torsion
from .quadrature import CumulativeIntegral
from .roots import find_roots
from .taylor import (antiderivative_jet, arclength_derivative, jet_div,
                     jet_dot, jet_mul, jet_sin_cos, jet_sqrt)

__all__ = [
    "MongeEvoluteCurve", "monge_evolute_point", "monge_evolute_cusps",
    "monge_escapes", "monge_evolutes_closed", "MongeInvoluteCurve",
    "string_residual", "distance_identity_residual", "polar_line_residual",
    "offset_angles", "envelope_meetings", "signed_length",
]


class MongeEvoluteCurve(Curve):
    """One Monge evolute of the base curve, selected by the start angle."""

    def __init__(self, base: Curve, alpha0: float = 0.0, **kw):
        closed = kw.pop("closed", False)
        super().__init__(base.domain, closed=closed, **kw)
        self.base = base
        self.alpha0 = float(alpha0)
        a, b = base.domain

        def tau_v(ts):
            fe = FrenetEval(base, ts, order=3)
            return fe.tau[0] * fe.v[0]

        self._alpha = CumulativeIntegral(tau_v, a, b, c0=self.alpha0)

    def alpha(self, t):
        """Torsion angle alpha(t) = alpha0 + integral of tau ds."""
        return self._alpha(t)

    def _alpha_jets(self, fe: FrenetEval, ts, order: int):
        tau_v = jet_mul(fe.tau, fe.v)
        return antiderivative_jet(self._alpha(ts), tau_v)[: order + 1]

    def derivatives(self, t, order: int) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        fe = FrenetEval(self.base, t, order=order + 3)
        alpha = self._alpha_jets(fe, t, order + 1)
        sin_j, cos_j = jet_sin_cos(alpha)
        with np.errstate(all="ignore"):
            tan_j = jet_div(sin_j, cos_j)
            m = order + 1
            eta = jet_sum(fe.x[:m], jet_mul(fe.r, fe.N)[:m])
            return jet_sum(eta, -jet_mul(jet_mul(fe.r, tan_j), fe.B)[:m])

    def __repr__(self):
        return f"MongeEvoluteCurve({self.base!r}, alpha0={self.alpha0})"


def monge_evolute_point(evolute: MongeEvoluteCurve, t: float) -> np.ndarray:
    """Point of the Monge evolute at t; raises where it is at infinity."""
    fe = FrenetEval(evolute.base, t, order=2)
    if not fe.k[0, 0] > evolute.base.eps_k:
        raise DegenerateCurvature("curvature vanishes", t=t)
    if abs(math.cos(float(evolute.alpha(t)))) <= 1e-12:
        raise InfinityEscape("string direction is binormal", t=t)
    return evolute.derivatives(t, 0)[0, 0].copy()


def _k_cos_alpha_rate(evolute: MongeEvoluteCurve, ts) -> np.ndarray:
    fe = FrenetEval(evolute.base, ts, order=4)
    alpha = evolute._alpha_jets(fe, np.atleast_1d(np.asarray(ts, float)), 3)
    _, cos_j = jet_sin_cos(alpha)
    with np.errstate(all="ignore"):
        return arclength_derivative(jet_mul(fe.k, cos_j), fe.v)[0]


def monge_evolute_cusps(evolute: MongeEvoluteCurve,
                        samples: int = 2048) -> np.ndarray:
    """Cusp parameters: critical points of k cos(alpha)."""
    a, b = evolute.base.domain
    return find_roots(lambda ts: _k_cos_alpha_rate(evolute, ts),
                      a, b, samples, closed=evolute.base.closed)


def monge_escapes(evolute: MongeEvoluteCurve,
                  samples: int = 2048) -> np.ndarray:
    """Parameters where cos(alpha) vanishes and the evolute diverges."""
    a, b = evolute.base.domain
    return find_roots(lambda ts: np.cos(evolute.alpha(np.atleast_1d(ts))),
                      a, b, samples, closed=evolute.base.closed)


def monge_evolutes_closed(curve: Curve, tol: float = 1e-9) -> bool:
    """Monge evolutes of a closed curve close up iff the total torsion is an
    integer multiple of pi."""
    return abs(math.remainder(total_torsion(curve), math.pi)) <= tol


class MongeInvoluteCurve(Curve):
    """Taut-string involute xi = eta + (l - s) T of the base curve.

    With ``signed`` the length element flips sign after every declared cusp
    of the base, which is the right notion for involutes of closed curves
    with cusps: they close up exactly when the signed length vanishes.
    """

    def __init__(self, base: Curve, length: float, signed: bool = False, **kw):
        super().__init__(base.domain, **kw)
        self.base = base
        self.length = float(length)
        self.signed = bool(signed)
        self._smap = ArclengthMap(base)
        cusps = np.asarray(base.cusps, dtype=float)
        self._cusp_params = np.sort(cusps)
        if signed and len(self._cusp_params):
            s_at = np.array([self._smap(c) for c in self._cusp_params])
            anchors = [0.0]
            total = 0.0
            prev_s = 0.0
            for i, sc in enumerate(s_at):
                total += (sc - prev_s) * (1.0 if i % 2 == 0 else -1.0)
                anchors.append(total)
                prev_s = sc
            self._cusp_s = s_at
            self._arc_anchor = np.asarray(anchors)

    def _signed_s_and_sign(self, t: np.ndarray):
        s = np.atleast_1d(self._smap(t))
        if not (self.signed and len(self._cusp_params)):
            return s, np.ones_like(s)
        arc = np.searchsorted(self._cusp_params, t, side="right")
        sign = np.where(arc % 2 == 0, 1.0, -1.0)
        base_s = np.concatenate([[0.0], self._cusp_s])[arc]
        return self._arc_anchor[arc] + sign * (s - base_s), sign

    def derivatives(self, t, order: int) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        fe = FrenetEval(self.base, t, order=order + 2)
        s, sign = self._signed_s_and_sign(t)
        # string offset sign(l - s) T stays continuous through base cusps:
        # the tangent and the length element flip together
        ls = np.empty((order + 2,) + fe.v.shape[1:])
        ls[0] = sign * (self.length - s)
        ls[1:] = -fe.v[: order + 1]
        with np.errstate(all="ignore"):
            m = order + 1
            return jet_sum(fe.x[:m], jet_mul(ls, fe.T)[:m])

    def __repr__(self):
        return (f"MongeInvoluteCurve({self.base!r}, length={self.length}"
                + (", signed=True)" if self.signed else ")"))


def signed_length(curve: Curve) -> float:
    """Arc length with the sign flipping at every declared cusp."""
    smap = ArclengthMap(curve)
    cusps = np.sort(np.asarray(curve.cusps, dtype=float))
    marks = np.concatenate([[0.0],
                            np.atleast_1d(smap(cusps)) if len(cusps) else [],
                            [smap.total]])
    spans = np.diff(marks)
    signs = (-1.0) ** np.arange(len(spans))
    return float(np.sum(spans * signs))


def _monge_offsets(evolute: MongeEvoluteCurve, ts, order: int):
    """Jets of eta - xi to the given order."""
    t = np.atleast_1d(np.asarray(ts, dtype=float))
    eta = evolute.derivatives(t, order)
    xi = evolute.base.derivatives(t, order)
    return eta - xi, eta, xi


def string_residual(evolute: MongeEvoluteCurve, ts) -> np.ndarray:
    """| d/ds |eta - xi| | - |d eta/ds|, pointwise; zero wherever the taut
    string description is valid."""
    diff, eta, _ = _monge_offsets(evolute, ts, 1)
    fe = FrenetEval(evolute.base, ts, order=2)
    with np.errstate(all="ignore"):
        dist = jet_sqrt(jet_dot(diff, diff))
        lhs = np.abs(dist[1] / fe.v[0])
        rhs = np.linalg.norm(eta[1], axis=-1) / fe.v[0]
    return np.abs(lhs - rhs)


def distance_identity_residual(evolute: MongeEvoluteCurve, ts) -> np.ndarray:
    """|eta - xi| - 1/(k |cos alpha|), pointwise."""
    diff, _, _ = _monge_offsets(evolute, ts, 0)
    fe = FrenetEval(evolute.base, ts, order=2)
    alpha = evolute.alpha(np.atleast_1d(np.asarray(ts, dtype=float)))
    with np.errstate(all="ignore"):
        rhs = 1.0 / (fe.k[0] * np.abs(np.cos(alpha)))
    return np.linalg.norm(diff[0], axis=-1) - rhs


def polar_line_residual(evolute: MongeEvoluteCurve, ts) -> np.ndarray:
    """Distance from the Monge evolute to the polar line of the base curve:
    the component of eta - (xi + r n) orthogonal to the binormal."""
    diff, _, _ = _monge_offsets(evolute, ts, 0)
    fe = FrenetEval(evolute.base, ts, order=2)
    rest = diff[0] - fe.r[0][:, None] * fe.N[0]
    rest -= np.sum(rest * fe.B[0], axis=-1, keepdims=True) * fe.B[0]
    return np.linalg.norm(rest, axis=-1)


def offset_angles(e1: MongeEvoluteCurve, e2: MongeEvoluteCurve,
                  ts) -> np.ndarray:
    """Angle under which two Monge evolutes are seen from the curve.

    Measured between unoriented lines (the offset direction reverses at
    every escape), so it is constant, the difference of the start angles
    folded into [0, pi/2]."""
    d1, _, _ = _monge_offsets(e1, ts, 0)
    d2, _, _ = _monge_offsets(e2, ts, 0)
    u1 = d1[0] / np.linalg.norm(d1[0], axis=-1, keepdims=True)
    u2 = d2[0] / np.linalg.norm(d2[0], axis=-1, keepdims=True)
    return np.arccos(np.clip(np.abs(np.sum(u1 * u2, axis=-1)), 0.0, 1.0))


def envelope_meetings(evolute: MongeEvoluteCurve,
                      samples: int = 2048) -> np.ndarray:
    """Parameters where the Monge evolute touches the evolute of the base:
    zeros of dr/ds + r tau tan(alpha)."""
    base = evolute.base

    def gap(ts):
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        fe = FrenetEval(base, ts, order=4)
        alpha = evolute.alpha(ts)
        with np.errstate(all="ignore"):
            return fe.r_s[0] + fe.r[0] * fe.tau[0] * np.tan(alpha)

    a, b = base.domain
    return find_roots(gap, a, b, samples, closed=base.closed)
