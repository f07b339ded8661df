"""Aggregated numeric report for a curve: invariants, singularities, residuals.

The report is a plain dict ready for JSON serialization.  Blocks that cannot
be computed for a given curve (a plane curve has no evolute, an open curve has
no monodromy) are recorded with the reason instead of failing the entire run.
"""
from __future__ import annotations

import math

import numpy as np

from .curves import Curve
from .errors import GeometryError
from .evolute import (EvoluteCurve, evolute_cusps, evolute_escapes,
                      osculating_circles_disjoint)
from .frenet import (FrenetEval, arclength, total_absolute_torsion,
                     total_curvature, total_torsion)
from .monge import monge_evolutes_closed
from .pseudo import is_cylindrical, pseudo_cusps, pseudo_escapes
from .rolling import monodromy
from .taylor import arclength_derivative, jet_mul

__all__ = ["curve_report", "identity_residuals"]

_SPHERICAL_SIGMA = 1e-6


def _listed(values) -> list:
    return [float(v) for v in np.asarray(values, dtype=float)]


def _finite(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float).ravel()
    return values[np.isfinite(values)]


def identity_residuals(curve: Curve, ts) -> dict:
    """Worst-case residuals of the structural identities along the curve.

    tangent_alignment: the evolute velocity against the binormal direction,
    away from evolute cusps.  sphere_rate: d(R^2)/ds against 2 (dr/ds / tau)
    sigma.  determinant_identity: det(t, t'', t''') against
    k^3 tau^2 sigma + k^4 tau, arclength derivatives of the unit tangent.
    """
    ts = np.asarray(ts, dtype=float)
    fe = FrenetEval(curve, ts, order=5)
    out = {}
    with np.errstate(all="ignore"):
        sigma = fe.sigma[0]
        good = np.isfinite(sigma) & (np.abs(sigma) > 1e-3)
        if good.any():
            dev = EvoluteCurve(curve).derivatives(ts[good], 1)[1]
            cross = np.cross(dev, fe.B[0][good])
            align = np.linalg.norm(cross, axis=-1) / np.linalg.norm(dev, axis=-1)
            out["tangent_alignment"] = float(np.max(_finite(align), initial=0.0))

        radius2 = jet_mul(fe.r, fe.r)[:2] + jet_mul(fe.rr, fe.rr)[:2]
        rate = arclength_derivative(radius2, fe.v)[0]
        sphere = np.abs(rate - 2.0 * fe.rr[0] * sigma) / (1.0 + np.abs(radius2[0]))
        out["sphere_rate"] = float(np.max(_finite(sphere), initial=0.0))

        d1 = arclength_derivative(fe.T, fe.v)
        d2 = arclength_derivative(d1, fe.v)
        d3 = arclength_derivative(d2, fe.v)
        det = np.linalg.det(np.stack([fe.T[0], d2[0], d3[0]], axis=-2))
        k, tau = fe.k[0], fe.tau[0]
        target = k ** 3 * tau ** 2 * sigma + k ** 4 * tau
        rel = np.abs(det - target) / (k ** 4 * np.abs(tau) + 1.0)
        out["determinant_identity"] = float(np.max(_finite(rel), initial=0.0))
    return out


def _evolute_block(curve: Curve, sigma_peak: float) -> dict:
    if sigma_peak <= _SPHERICAL_SIGMA:
        return {"defined": True, "spherical": True, "cusps": []}
    escapes = evolute_escapes(curve)
    if len(escapes):
        t0 = float(escapes[0])
        return {"defined": False,
                "reason": f"torsion vanishes at t≈{t0:.6g}",
                "escapes": _listed(escapes)}
    return {"defined": True, "spherical": False,
            "cusps": _listed(evolute_cusps(curve))}


def _pseudo_block(curve: Curve) -> dict:
    if is_cylindrical(curve):
        return {"cylindrical": True}
    return {"cylindrical": False,
            "escapes": _listed(pseudo_escapes(curve)),
            "cusps": _listed(pseudo_cusps(curve))}


def _monodromy_block(curve: Curve) -> dict:
    iso = monodromy(curve)
    block = {"angle": iso.angle, "angle_mod_2pi": iso.angle_mod_2pi,
             "shift": _listed(iso.shift)}
    try:
        block["fixed_point"] = _listed(iso.fixed_point())
    except GeometryError as exc:
        block["fixed_point"] = None
        block["degeneracy"] = str(exc)
    return block


def _circles_block(curve: Curve, delta: float, checks: int = 32) -> dict:
    a, b = curve.domain
    probes = np.linspace(a, b, checks, endpoint=False)[1:]
    flags = [osculating_circles_disjoint(curve, float(t0), delta)
             for t0 in probes]
    return {"delta": float(delta), "checked": len(flags),
            "all_disjoint": bool(all(flags))}


def curve_report(curve: Curve, samples: int = 1024,
                 circle_delta: float | None = None) -> dict:
    """Full numeric report; see README for the key-by-key schema."""
    ts = curve.grid(samples)
    if curve.cusps:
        keep = np.min(np.abs(ts[:, None] - np.array(curve.cusps)), axis=1) > 1e-6
        ts = ts[keep]
    fe = FrenetEval(curve, ts, order=4)
    with np.errstate(all="ignore"):
        k, tau, sigma = _finite(fe.k[0]), _finite(fe.tau[0]), fe.sigma[0]
    sigma_peak = float(np.max(np.abs(_finite(sigma)), initial=0.0))

    report = {
        "domain": [curve.domain[0], curve.domain[1]],
        "closed": curve.closed,
        "samples": int(samples),
        "curvature_range": [float(k.min()), float(k.max())],
        "torsion_range": [float(tau.min()), float(tau.max())],
        "sigma_peak": sigma_peak,
    }

    def attempt(key, fn):
        try:
            value = fn()
        except (GeometryError, ValueError) as exc:
            report[key] = {"error": str(exc)}
            return
        report[key] = value if value is None or not isinstance(value, float) \
            or math.isfinite(value) else None

    attempt("arclength", lambda: float(arclength(curve)))
    attempt("total_curvature", lambda: float(total_curvature(curve)))
    attempt("total_torsion", lambda: float(total_torsion(curve)))
    attempt("total_absolute_torsion",
            lambda: float(total_absolute_torsion(curve)))
    attempt("evolute", lambda: _evolute_block(curve, sigma_peak))
    attempt("pseudo_evolute", lambda: _pseudo_block(curve))
    if curve.closed:
        attempt("monge_evolutes_closed",
                lambda: bool(monge_evolutes_closed(curve)))
        attempt("monodromy", lambda: _monodromy_block(curve))
    if circle_delta is not None:
        attempt("osculating_circles",
                lambda: _circles_block(curve, circle_delta))
    attempt("residuals", lambda: identity_residuals(curve, ts))
    return report
