"""Grid-scan root isolation with bisection refinement.

Scans a uniform parameter grid for sign changes and exact zeros, bisects
each bracket, then discards refined points whose residual stays large
relative to the sampled scale (those are poles, not roots; curvature-based
quantities blow up where torsion vanishes).  For closed curves the scan is
repeated on a half-period rotation of the parameter so a root sitting
exactly on the domain seam is still caught.
"""

from __future__ import annotations

import numpy as np

__all__ = ["find_roots"]


def _bisect(f, lo, hi, iterations=48):
    flo = np.asarray(f(lo), dtype=float)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        fm = np.asarray(f(mid), dtype=float)
        bad = ~np.isfinite(fm)
        if np.any(bad):
            nudged = mid + (hi - lo) * 1e-3
            fm = np.where(bad, np.asarray(f(nudged), dtype=float), fm)
            mid = np.where(bad, nudged, mid)
        same = (fm > 0) == (flo > 0)
        lo = np.where(same, mid, lo)
        flo = np.where(same, fm, flo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def _scan(f, a, b, samples):
    ts = np.linspace(a, b, samples + 1)
    fv = np.asarray(f(ts), dtype=float)
    finite = np.isfinite(fv)
    roots = list(ts[finite & (fv == 0.0)])
    sign = np.sign(fv)
    ok = finite[:-1] & finite[1:]
    crossing = ok & (sign[:-1] * sign[1:] < 0)
    idx = np.nonzero(crossing)[0]
    if idx.size:
        refined = _bisect(f, ts[idx], ts[idx + 1])
        scale = np.median(np.abs(fv[finite])) if finite.any() else 0.0
        residual = np.abs(np.asarray(f(refined), dtype=float))
        keep = residual <= max(1e-4 * scale, 1e-300)
        roots.extend(refined[keep])
    return roots


def find_roots(f, a: float, b: float, samples: int = 2048,
               closed: bool = False) -> np.ndarray:
    """Simple roots of f on [a, b], sorted.  f maps ndarray to ndarray."""
    roots = _scan(f, a, b, samples)
    if closed:
        period = b - a

        def rotated(u):
            return f(a + np.mod(np.asarray(u) - a + 0.5 * period, period))

        for u in _scan(rotated, a, b, samples):
            t = a + (u - a + 0.5 * period) % period
            roots.append(t)
    if not roots:
        return np.empty(0)
    roots = np.sort(np.asarray(roots, dtype=float))
    merge_tol = max(1e-9, 1e-12 * (b - a))
    keep = [roots[0]]
    for t in roots[1:]:
        if t - keep[-1] > merge_tol:
            keep.append(t)
    out = np.asarray(keep)
    if closed and len(out) > 1 and (out[0] - a) + (b - out[-1]) <= merge_tol:
        out = out[:-1]
    return out
