"""Curve sources.

Every curve exposes ``derivatives(t, order)`` returning the stack of plain
parameter derivatives with shape (order+1, N, 3).  That one contract feeds
the whole package: Frenet data, singularity scans, and the derived curves
(evolutes and involutes of all three kinds) all propagate truncated Taylor
jets through it, so no finite differencing happens anywhere.

Two concrete sources live here: curves given by coordinate expressions in t,
and curves reconstructed from prescribed curvature/torsion by integrating
the frame equations at unit speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import expr as ex
from .errors import IntegrationFailure
from .quadrature import CumulativeIntegral

__all__ = ["Curve", "ExprCurve", "FrenetODECurve", "ArclengthMap",
           "branch_grids"]


class Curve:
    """Base: a parametric space curve on a fixed domain."""

    def __init__(self, domain, closed: bool = False, cusps=(),
                 eps_k: float = 1e-9, eps_tau: float = 1e-9):
        a, b = float(domain[0]), float(domain[1])
        if not b > a:
            raise ValueError("domain must have positive length")
        self.domain = (a, b)
        self.closed = bool(closed)
        self.cusps = tuple(float(c) for c in cusps)
        self.eps_k = eps_k
        self.eps_tau = eps_tau

    def derivatives(self, t, order: int) -> np.ndarray:
        """Derivatives 0..order at t, shape (order+1, N, 3)."""
        raise NotImplementedError

    def point(self, t) -> np.ndarray:
        scalar = np.ndim(t) == 0
        p = self.derivatives(t, 0)[0]
        return p[0] if scalar else p

    def grid(self, samples: int) -> np.ndarray:
        a, b = self.domain
        return np.linspace(a, b, samples)


def branch_grids(domain, cuts, samples: int, margin=None):
    """Sample grids for each branch of (a, b) cut at singular parameters.

    Every interval between consecutive cuts is shrunk by margin on any side
    that touches a cut (including the domain ends, should a cut land there)
    and sampled proportionally to its share of the domain, at least two
    points per branch.  Downstream writers then never bridge a singularity.
    """
    a, b = float(domain[0]), float(domain[1])
    if margin is None:
        margin = (b - a) * 1e-3
    cuts = sorted({float(c) for c in cuts if a <= c <= b})
    edges = [a] + [c for c in cuts if a < c < b] + [b]
    singular = set(cuts)
    grids = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        lo_cut = lo + margin if lo in singular else lo
        hi_cut = hi - margin if hi in singular else hi
        if hi_cut <= lo_cut:
            continue
        count = max(2, round(samples * (hi_cut - lo_cut) / (b - a)))
        grids.append(np.linspace(lo_cut, hi_cut, count))
    return grids


class ExprCurve(Curve):
    """Curve whose coordinates are closed-form expressions in t."""

    def __init__(self, components, domain, closed=False, cusps=(), **kw):
        super().__init__(domain, closed, cusps, **kw)
        if isinstance(components, str):
            components = ex.parse_curve(components)
        self.components = tuple(components)
        if len(self.components) != 3:
            raise ValueError("need exactly 3 components")
        self._derivs = [[c] for c in self.components]

    def _component(self, i: int, m: int) -> ex.Expr:
        chain = self._derivs[i]
        while len(chain) <= m:
            chain.append(ex.differentiate(chain[-1]))
        return chain[m]

    def derivatives(self, t, order: int) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty((order + 1, len(t), 3))
        for m in range(order + 1):
            for i in range(3):
                out[m, :, i] = ex.evaluate(self._component(i, m), t)
        return out

    def __repr__(self):
        parts = ", ".join(ex.to_source(c) for c in self.components)
        return f"ExprCurve({parts!r}, domain={self.domain})"


class FrenetODECurve(Curve):
    """Unit-speed curve built from curvature and torsion expressions.

    The frame system (T' = kN, N' = -kT + tB, B' = -tN, xi' = T) is
    integrated once with a high-order Runge-Kutta scheme; dense-output
    segments are kept for evaluation anywhere in the domain.  The frame is
    re-orthonormalized after every accepted step.  Higher derivatives come
    from the frame equations themselves together with exact derivatives of
    the curvature/torsion expressions, not from differentiating the solver
    output.
    """

    def __init__(self, curvature, torsion, domain, origin=(0.0, 0.0, 0.0),
                 frame=None, rtol=1e-11, atol=1e-11, **kw):
        super().__init__(domain, **kw)
        self.k_expr = ex.parse(curvature) if isinstance(curvature, str) else curvature
        self.tau_expr = ex.parse(torsion) if isinstance(torsion, str) else torsion
        self._k_chain = [self.k_expr]
        self._tau_chain = [self.tau_expr]
        if frame is None:
            frame = np.eye(3)
        y0 = np.concatenate([np.asarray(origin, dtype=float),
                             np.asarray(frame, dtype=float).ravel()])
        self._integrate(y0, rtol, atol)

    def _rhs(self, t, y):
        k = ex.evaluate(self.k_expr, t)
        tau = ex.evaluate(self.tau_expr, t)
        T, N, B = y[3:6], y[6:9], y[9:12]
        return np.concatenate([T, k * N, -k * T + tau * B, -tau * N])

    def _integrate(self, y0, rtol, atol):
        from scipy.integrate import DOP853

        a, b = self.domain
        solver = DOP853(self._rhs, a, y0, b, rtol=rtol, atol=atol)
        segments, ends = [], []
        while solver.status == "running":
            if solver.step() is not None or solver.status == "failed":
                raise IntegrationFailure(
                    f"frame integration failed near t={solver.t:.9g}")
            segments.append(solver.dense_output())
            ends.append(solver.t)
            # project the frame back onto SO(3); DOP853 reuses the stored
            # derivative as its next first stage, so refresh it too
            y = solver.y
            T = y[3:6] / np.linalg.norm(y[3:6])
            N = y[6:9] - (y[6:9] @ T) * T
            N /= np.linalg.norm(N)
            y[3:6], y[6:9], y[9:12] = T, N, np.cross(T, N)
            solver.f = solver.fun(solver.t, solver.y)
        self._segments = segments
        self._ends = np.asarray(ends)

    def _state(self, t: np.ndarray) -> np.ndarray:
        idx = np.clip(np.searchsorted(self._ends, t, side="left"),
                      0, len(self._segments) - 1)
        out = np.empty((len(t), 12))
        for j in np.unique(idx):
            mask = idx == j
            out[mask] = self._segments[j](t[mask]).T
        return out

    def _coef(self, chain, m: int):
        while len(chain) <= m:
            chain.append(ex.differentiate(chain[-1]))
        return chain[m]

    def derivatives(self, t, order: int) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        a, b = self.domain
        state = self._state(np.clip(t, a, b))
        n = len(t)
        depth = max(order, 1)
        T = np.empty((depth, n, 3))
        N = np.empty((depth, n, 3))
        B = np.empty((depth, n, 3))
        T[0], N[0], B[0] = state[:, 3:6], state[:, 6:9], state[:, 9:12]
        kj = np.empty((depth, n))
        tj = np.empty((depth, n))
        for j in range(depth - 1):
            kj[j] = ex.evaluate(self._coef(self._k_chain, j), t)
            tj[j] = ex.evaluate(self._coef(self._tau_chain, j), t)
        for m in range(depth - 1):
            accT = np.zeros((n, 3))
            accN = np.zeros((n, 3))
            accB = np.zeros((n, 3))
            for j in range(m + 1):
                c = math.comb(m, j)
                accT += c * kj[j, :, None] * N[m - j]
                accN += c * (-kj[j, :, None] * T[m - j] + tj[j, :, None] * B[m - j])
                accB += -c * tj[j, :, None] * N[m - j]
            T[m + 1], N[m + 1], B[m + 1] = accT, accN, accB
        out = np.empty((order + 1, n, 3))
        out[0] = state[:, 0:3]
        out[1:] = T[:order]
        return out

    def __repr__(self):
        return (f"FrenetODECurve(k={ex.to_source(self.k_expr)!r}, "
                f"tau={ex.to_source(self.tau_expr)!r}, domain={self.domain})")


@dataclass
class ArclengthMap:
    """Cumulative arc length s(t) with a monotone inverse t(s)."""

    curve: Curve
    panels: int = 64

    def __post_init__(self):
        a, b = self.curve.domain

        def speed(ts):
            d1 = self.curve.derivatives(ts, 1)[1]
            return np.linalg.norm(d1, axis=-1)

        self._speed = speed
        self._cumulative = CumulativeIntegral(speed, a, b, panels=self.panels)

    @property
    def total(self) -> float:
        return self._cumulative.total

    def __call__(self, t):
        return self._cumulative(t)

    def inverse(self, s):
        return self._cumulative.inverse(s)
