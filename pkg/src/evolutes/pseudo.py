"""Pseudo-evolutes: regression edges of rectifying developables.

The rectifying planes of a curve envelope a developable surface on which
the curve is a geodesic; the regression edge of that surface is the
pseudo-evolute.  In arclength terms

    eps = xi + k / (k' tau - k tau') (tau T + k B),

but the implementation clears every radical first.  With t-derivatives and

    u = x'.x',  C = x' x x'',  q = C.C,  p = C.x''',
    E = 3 u p q' - 3 u' p q - 2 u q p',

the same point is

    eps = xi + 2 q (u p x' + q C) / E,

a ratio of polynomials in the curve derivatives.  That makes the formula
usable at parameters where speed, curvature, and torsion all degenerate
simultaneously: when numerator and denominator vanish to matching order the
limit is recovered by comparing leading jet coefficients, which is how the
pseudo-evolute of a cusped curve is evaluated straight through the cusp.

Escapes to infinity happen where (tau/k)' = 0 and cusps where (tau/k)'' = 0
(arclength derivatives).  A curve with constant tau/k has a cylindrical
rectifying developable and no pseudo-evolute at all.
"""

from __future__ import annotations

import numpy as np

from .curves import Curve
from .errors import InfinityEscape
from .frenet import FrenetEval, jet_sum
from .roots import find_roots
from .taylor import arclength_derivative, jet_div, jet_mul

__all__ = [
    "pseudo_evolute_point", "pseudo_evolute_points", "PseudoEvoluteCurve",
    "pseudo_escapes", "pseudo_cusps", "is_cylindrical", "geodesic_residual",
    "PseudoInvoluteCurve", "pseudo_involute",
]


def _numerator_denominator(fe: FrenetEval):
    """Jets of 2q(u p x' + q C) and E; the pseudo-evolute offset is their ratio."""
    u, q, p = fe.u, fe.q, fe.p
    up = jet_mul(u, p)
    terms = (jet_mul(up, q[1:]), jet_mul(jet_mul(u[1:], p), q),
             jet_mul(jet_mul(u, q), p[1:]))
    m = min(len(term) for term in terms)
    E = 3.0 * terms[0][:m] - 3.0 * terms[1][:m] - 2.0 * terms[2][:m]
    V = jet_sum(jet_mul(up, fe.d1), jet_mul(q, fe.cross12))
    W = 2.0 * jet_mul(q, V)
    return W, E


def _escape_threshold(fe: FrenetEval):
    # matches |k' tau - k tau'| <= 1e-12 k |tau| in arclength terms
    return 2e-12 * fe.u[0] * fe.q[0] * np.abs(fe.p[0])


def pseudo_evolute_point(curve: Curve, t: float,
                         limit_order: int = 10) -> np.ndarray:
    """Pseudo-evolute point at t, taking the limit at removable 0/0 points.

    Raises InfinityEscape where the rectifying developable has no edge
    point: at zeros of (tau/k)' and wherever the numerator fails to vanish
    to the same order as the denominator.
    """
    fe = FrenetEval(curve, t, order=4)
    W, E = _numerator_denominator(fe)
    if abs(E[0, 0]) > _escape_threshold(fe)[0]:
        return (fe.x[0, 0] + W[0, 0] / E[0, 0]).copy()
    fe = FrenetEval(curve, t, order=limit_order + 4)
    W, E = _numerator_denominator(fe)
    e_col, w_col = E[:, 0], W[:, 0]
    scale_e = np.max(np.abs(e_col))
    scale_w = np.max(np.abs(w_col))
    if scale_e == 0.0:
        raise InfinityEscape("rectifying planes are stationary", t=t)
    lead = np.nonzero(np.abs(e_col) > 1e-6 * scale_e)[0]
    if lead.size == 0:
        raise InfinityEscape("rectifying planes are stationary", t=t)
    j = int(lead[0])
    clean_below = (np.all(np.abs(e_col[:j]) <= 1e-9 * scale_e)
                   and np.all(np.abs(w_col[:j]) <= 1e-9 * scale_w))
    if not clean_below:
        raise InfinityEscape("pseudo-evolute escapes to infinity", t=t)
    return (fe.x[0, 0] + w_col[j] / e_col[j]).copy()


def pseudo_evolute_points(curve: Curve, ts) -> np.ndarray:
    """Vectorized pseudo-evolute; escape parameters give non-finite rows."""
    fe = FrenetEval(curve, ts, order=4)
    with np.errstate(all="ignore"):
        W, E = _numerator_denominator(fe)
        out = fe.x[0] + W[0] / E[0][:, None]
        out[np.abs(E[0]) <= _escape_threshold(fe)] = np.nan
    return out


class PseudoEvoluteCurve(Curve):
    """The pseudo-evolute as a differentiable curve."""

    def __init__(self, base: Curve, cusps=(), **kw):
        closed = kw.pop("closed", base.closed)
        super().__init__(base.domain, closed=closed, cusps=cusps, **kw)
        self.base = base

    def derivatives(self, t, order: int) -> np.ndarray:
        fe = FrenetEval(self.base, t, order=order + 4)
        with np.errstate(all="ignore"):
            W, E = _numerator_denominator(fe)
            m = order + 1
            return jet_sum(fe.x[:m], jet_div(W, E)[:m])

    def __repr__(self):
        return f"PseudoEvoluteCurve({self.base!r})"


def _ratio_s_derivative(curve: Curve, ts, depth: int) -> np.ndarray:
    fe = FrenetEval(curve, ts, order=3 + depth)
    with np.errstate(all="ignore"):
        jet = jet_div(fe.tau, fe.k)
        for _ in range(depth):
            jet = arclength_derivative(jet, fe.v)
        return jet[0]


def pseudo_escapes(curve: Curve, samples: int = 2048) -> np.ndarray:
    """Zeros of (tau/k)': parameters where the pseudo-evolute diverges."""
    a, b = curve.domain
    return find_roots(lambda ts: _ratio_s_derivative(curve, ts, 1),
                      a, b, samples, closed=curve.closed)


def pseudo_cusps(curve: Curve, samples: int = 2048) -> np.ndarray:
    """Zeros of (tau/k)'': cusp parameters of the pseudo-evolute."""
    a, b = curve.domain
    return find_roots(lambda ts: _ratio_s_derivative(curve, ts, 2),
                      a, b, samples, closed=curve.closed)


def is_cylindrical(curve: Curve, samples: int = 512,
                   rtol: float = 1e-9) -> bool:
    """True when tau/k is constant, so the rectifying developable is a
    cylinder and the pseudo-evolute is everywhere at infinity."""
    ts = curve.grid(samples + 1)[:-1] if curve.closed else curve.grid(samples)
    fe = FrenetEval(curve, ts, order=3)
    with np.errstate(all="ignore"):
        ratio = fe.tau[0] / fe.k[0]
    ratio = ratio[np.isfinite(ratio)]
    if ratio.size == 0:
        return False
    scale = max(float(np.max(np.abs(ratio))), 1e-30)
    return float(np.max(ratio) - np.min(ratio)) <= rtol * scale


def geodesic_residual(curve: Curve, ts) -> np.ndarray:
    """Sine of the angle between the principal normal and the rectifying
    plane normal; identically zero because the curve is a geodesic of its
    rectifying developable."""
    from .envelope import PlaneFamily

    n, _ = PlaneFamily(curve, "rectifying").jets(ts, 0)
    fe = FrenetEval(curve, ts, order=2)
    unit = n[0] / np.linalg.norm(n[0], axis=-1, keepdims=True)
    return np.linalg.norm(np.cross(unit, fe.N[0]), axis=-1)


class PseudoInvoluteCurve(Curve):
    """Geodesic of the tangent developable of the base curve.

    Straight lines in the unrolled surface are exactly its geodesics;
    pulled back to space they are the curves whose pseudo-evolute is the
    base curve.  The line lives in the development plane of the base, where
    the base unrolls starting at the origin heading along +x.
    """

    def __init__(self, base: Curve, line_point, line_direction, **kw):
        from .rolling import Development

        super().__init__(base.domain, **kw)
        self.base = base
        self.line_point = np.asarray(line_point, dtype=float)
        d = np.asarray(line_direction, dtype=float)
        self.line_direction = d / np.linalg.norm(d)
        self.development = Development(base)

    def derivatives(self, t, order: int) -> np.ndarray:
        from .taylor import jet_sin_cos

        t = np.atleast_1d(np.asarray(t, dtype=float))
        pos, theta = self.development.jets(t, order)
        sin_j, cos_j = jet_sin_cos(theta)
        dx, dy = self.line_direction
        rel = -pos
        rel[0] += self.line_point
        num = rel[..., 0] * dy - rel[..., 1] * dx
        den = cos_j * dy - sin_j * dx
        with np.errstate(all="ignore"):
            lam = jet_div(num, den)
        fe = FrenetEval(self.base, t, order=order + 2)
        m = order + 1
        return jet_sum(fe.x[:m], jet_mul(lam, fe.T)[:m])

    def __repr__(self):
        return (f"PseudoInvoluteCurve({self.base!r}, "
                f"point={self.line_point.tolist()}, "
                f"direction={self.line_direction.tolist()})")


def pseudo_involute(base: Curve, line_point, line_direction,
                    samples: int = 512) -> PseudoInvoluteCurve:
    """Pseudo-involute of the base curve cut out by a development line.

    Warns when the line passes through the developed base curve: the
    involute then touches the regression edge and has a cusp there.
    """
    import warnings

    from .errors import LineThroughEdge

    curve = PseudoInvoluteCurve(base, line_point, line_direction)
    ts = curve.grid(samples)
    dev_pts = curve.development.point(ts)
    d = curve.line_direction
    offsets = ((curve.line_point - dev_pts)[:, 0] * d[1]
               - (curve.line_point - dev_pts)[:, 1] * d[0])
    scale = max(1.0, float(np.max(np.abs(dev_pts))))
    if float(np.min(np.abs(offsets))) <= 1e-6 * scale:
        warnings.warn("development line meets the developed edge; "
                      "the involute has a cusp there", LineThroughEdge)
    return curve
