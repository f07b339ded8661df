"""Command line front end.

Subcommands sample a curve (preset, expression triple, or curvature/torsion
pair), run one geometric construction, and write the result as CSV, OBJ, SVG,
or JSON.  Exit codes: 0 success, 2 usage error, 3 geometric degeneracy with
the degeneracy named on standard error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .catalog import preset, preset_names
from .curves import Curve, ExprCurve, FrenetODECurve, branch_grids
from .errors import (DomainError, GeometryError, InfinityEscape, ParseError,
                     TorsionVanishes)
from .envelope import developable_patch
from .evolute import EvoluteCurve, evolute_cusps, evolute_escapes, \
    evolute_points
from .exporters import atomic_write, render_csv, render_json, render_obj, \
    render_svg
from .frenet import FrenetEval, frenet_at, total_curvature
from .monge import (MongeEvoluteCurve, MongeInvoluteCurve, monge_escapes,
                    monge_evolute_cusps)
from .pseudo import PseudoEvoluteCurve, is_cylindrical, pseudo_cusps, \
    pseudo_escapes
from .report import curve_report
from .rolling import Development, closed_involute, monodromy, trace_involute

__all__ = ["RunConfig", "build_curve", "entry"]

_FORMATS = ("csv", "obj", "svg", "json")


@dataclass
class RunConfig:
    """Validated bundle of everything one invocation needs."""

    source: tuple
    domain: tuple | None = None
    samples: int = 1024
    tol: float = 1e-9
    alpha0: float = 0.0
    length: float | None = None
    delta: float | None = None
    extent: float | tuple = 1.0
    kind: str = "tangent"
    point: tuple | None = None
    signed: bool = False
    svg_scale: float = 100.0
    out: str | None = None
    fmt: str | None = None

    def __post_init__(self):
        if self.samples < 16:
            raise ValueError("--samples must be at least 16")
        if self.domain is not None and not self.domain[1] > self.domain[0]:
            raise ValueError("--range must satisfy a < b")
        if self.tol <= 0:
            raise ValueError("--tol must be positive")


def build_curve(cfg: RunConfig) -> Curve:
    mode, value = cfg.source
    if mode == "preset":
        curve = preset(value)
        if cfg.domain is not None:
            a, b = cfg.domain
            kept = tuple(c for c in curve.cusps if a <= c <= b)
            curve = ExprCurve(curve.components, cfg.domain, cusps=kept)
        return curve
    if cfg.domain is None:
        raise ValueError(f"--{mode} requires --range")
    if mode == "expr":
        return ExprCurve(value, cfg.domain)
    k_expr, _, tau_expr = value.partition(";")
    if not tau_expr:
        raise ValueError('--ktau takes "k_expr;tau_expr"')
    return FrenetODECurve(k_expr, tau_expr, cfg.domain)


# ---------------------------------------------------------------- emission

def _choose_format(cfg: RunConfig, default: str, offered) -> str:
    fmt = cfg.fmt
    if fmt is None and cfg.out and "." in cfg.out:
        suffix = cfg.out.rsplit(".", 1)[1].lower()
        if suffix in _FORMATS:
            fmt = suffix
    fmt = fmt or default
    if fmt not in offered:
        raise ValueError(f"format {fmt!r} not available here;"
                         f" choose from {', '.join(offered)}")
    return fmt


def _write(cfg: RunConfig, text: str) -> int:
    if cfg.out:
        atomic_write(cfg.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _emit_polyline(cfg: RunConfig, segments) -> int:
    """segments: list of (ts, points) branches, already singularity-free."""
    fmt = _choose_format(cfg, "csv", ("csv", "svg"))
    if fmt == "csv":
        ts = np.concatenate([seg[0] for seg in segments])
        pts = np.concatenate([seg[1] for seg in segments])
        return _write(cfg, render_csv(ts, pts))
    planar = [np.asarray(p)[:, :2] for _, p in segments]
    return _write(cfg, render_svg(planar, scale=cfg.svg_scale))


def _finite_rows(ts, pts):
    good = np.isfinite(pts).all(axis=-1)
    return ts[good], pts[good]


# ------------------------------------------------------------- subcommands

def _cmd_frenet(cfg: RunConfig, curve: Curve) -> int:
    grids = branch_grids(curve.domain, curve.cusps, cfg.samples)
    ts = np.concatenate(grids)
    fe = FrenetEval(curve, ts, order=4)
    with np.errstate(all="ignore"):
        pts = fe.x[0]
        extras = [("k", fe.k[0]), ("tau", fe.tau[0])]
        sigma = fe.sigma[0]
        if np.isfinite(sigma).all():
            extras.append(("sigma", sigma))
    _choose_format(cfg, "csv", ("csv",))
    return _write(cfg, render_csv(ts, pts, extras))


def _cmd_evolute(cfg: RunConfig, curve: Curve) -> int:
    probe = curve.grid(min(cfg.samples, 512))
    if curve.cusps:
        gap = np.min(np.abs(probe[:, None] - np.array(curve.cusps)), axis=1)
        probe = probe[gap > 1e-6]
    fe = FrenetEval(curve, probe, order=4)
    with np.errstate(all="ignore"):
        sigma = fe.sigma[0]
    spherical = np.all(np.abs(sigma[np.isfinite(sigma)]) <= 1e-6)
    if not spherical:
        escapes = evolute_escapes(curve)
        if len(escapes):
            raise TorsionVanishes("torsion vanishes", t=float(escapes[0]))
    cuts = () if spherical else evolute_cusps(curve)
    grids = branch_grids(curve.domain, list(cuts) + list(curve.cusps),
                         cfg.samples)
    segments = [_finite_rows(ts, evolute_points(curve, ts)) for ts in grids]
    return _emit_polyline(cfg, segments)


def _cmd_pseudo(cfg: RunConfig, curve: Curve) -> int:
    if is_cylindrical(curve):
        raise InfinityEscape(
            "tau/k is constant (cylindrical curve): the pseudo-evolute"
            " escapes to infinity everywhere")
    cuts = (list(pseudo_escapes(curve)) + list(pseudo_cusps(curve))
            + list(curve.cusps))
    pe = PseudoEvoluteCurve(curve)
    grids = branch_grids(curve.domain, cuts, cfg.samples)
    segments = [_finite_rows(ts, pe.point(ts)) for ts in grids]
    return _emit_polyline(cfg, segments)


def _cmd_monge_evolute(cfg: RunConfig, curve: Curve) -> int:
    ev = MongeEvoluteCurve(curve, cfg.alpha0, closed=curve.closed)
    cuts = (list(monge_evolute_cusps(ev)) + list(monge_escapes(ev))
            + list(curve.cusps))
    grids = branch_grids(curve.domain, cuts, cfg.samples)
    segments = [_finite_rows(ts, ev.point(ts)) for ts in grids]
    return _emit_polyline(cfg, segments)


def _cmd_monge_involute(cfg: RunConfig, curve: Curve) -> int:
    if cfg.length is None:
        raise ValueError("monge-involute requires --length")
    inv = MongeInvoluteCurve(curve, cfg.length, signed=cfg.signed)
    grids = branch_grids(curve.domain, curve.cusps, cfg.samples)
    segments = [_finite_rows(ts, inv.point(ts)) for ts in grids]
    return _emit_polyline(cfg, segments)


def _cmd_involute(cfg: RunConfig, curve: Curve) -> int:
    if cfg.point is None:
        gamma = closed_involute(curve)
    else:
        state = frenet_at(curve, curve.domain[0])
        start = (state.point + cfg.point[0] * state.tangent
                 + cfg.point[1] * state.normal)
        gamma = trace_involute(curve, start)
    ts = gamma.grid(cfg.samples)
    return _emit_polyline(cfg, [(ts, gamma.point(ts))])


def _cmd_developable(cfg: RunConfig, curve: Curve) -> int:
    grids = branch_grids(curve.domain, curve.cusps, cfg.samples)
    _choose_format(cfg, "obj", ("obj",))
    patch = developable_patch(curve, cfg.kind, np.concatenate(grids),
                              extent=cfg.extent)
    return _write(cfg, render_obj(patch))


def _cmd_develop(cfg: RunConfig, curve: Curve) -> int:
    dev = Development(curve)
    ts = curve.grid(cfg.samples)
    flat = dev.point(ts)
    fmt = _choose_format(cfg, "svg", ("svg", "csv"))
    if fmt == "svg":
        return _write(cfg, render_svg([flat], scale=cfg.svg_scale))
    pts = np.column_stack([flat, np.zeros(len(ts))])
    return _write(cfg, render_csv(ts, pts))


def _cmd_monodromy(cfg: RunConfig, curve: Curve) -> int:
    iso = monodromy(curve)
    payload = {
        "angle": iso.angle,
        "angle_mod_2pi": iso.angle_mod_2pi,
        "shift": [float(v) for v in iso.shift],
        "total_curvature": float(total_curvature(curve)),
    }
    try:
        payload["fixed_point"] = [float(v) for v in iso.fixed_point()]
    except GeometryError as exc:
        payload["fixed_point"] = None
        payload["degeneracy"] = str(exc)
    _choose_format(cfg, "json", ("json",))
    return _write(cfg, render_json(payload))


def _cmd_report(cfg: RunConfig, curve: Curve) -> int:
    payload = curve_report(curve, cfg.samples, circle_delta=cfg.delta)
    _choose_format(cfg, "json", ("json",))
    return _write(cfg, render_json(payload))


_DISPATCH = {
    "frenet": _cmd_frenet,
    "evolute": _cmd_evolute,
    "pseudo-evolute": _cmd_pseudo,
    "monge-evolute": _cmd_monge_evolute,
    "monge-involute": _cmd_monge_involute,
    "involute": _cmd_involute,
    "developable": _cmd_developable,
    "develop": _cmd_develop,
    "monodromy": _cmd_monodromy,
    "report": _cmd_report,
}


# ------------------------------------------------------------------ parser

def _pair(text: str, sep: str = ":"):
    left, _, right = text.partition(sep)
    if not right:
        raise ValueError(f"expected two values separated by {sep!r}")
    return float(left), float(right)


def _extent(text: str):
    if ":" in text:
        return _pair(text)
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=preset_names())
    source.add_argument("--expr", metavar='"x,y,z"')
    source.add_argument("--ktau", metavar='"k;tau"')
    common.add_argument("--range", dest="range_", metavar="a:b", type=_pair)
    common.add_argument("--samples", type=int, default=1024)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", dest="fmt", choices=_FORMATS)
    common.add_argument("--svg-scale", type=float, default=100.0,
                        help="pixels per unit in SVG output")

    parser = argparse.ArgumentParser(
        prog="evolutes",
        description="Evolutes, involutes, and developables of space curves.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("frenet", parents=[common],
                   help="sample position, curvature, torsion, sigma")
    sub.add_parser("evolute", parents=[common],
                   help="osculating-sphere centers")
    sub.add_parser("pseudo-evolute", parents=[common],
                   help="regression edge of the rectifying developable")
    p = sub.add_parser("monge-evolute", parents=[common],
                       help="taut-string evolute for a start angle")
    p.add_argument("--alpha0", type=float, default=0.0)
    p = sub.add_parser("monge-involute", parents=[common],
                       help="taut-string involute for a string length")
    p.add_argument("--length", type=float)
    p.add_argument("--signed", action="store_true",
                   help="flip the length element at declared cusps")
    p = sub.add_parser("involute", parents=[common],
                       help="involute traced by rolling the osculating plane")
    p.add_argument("--point", type=_pair, metavar="x:y",
                   help="start offset in the initial (tangent, normal) frame;"
                        " default: the closed involute through the"
                        " monodromy fixed point")
    p = sub.add_parser("developable", parents=[common],
                       help="ruled patch as an OBJ mesh")
    p.add_argument("--kind", choices=("tangent", "rectifying", "polar"),
                   default="tangent")
    p.add_argument("--ruling-extent", dest="extent", type=_extent,
                   default=1.0, metavar="R|lo:hi")
    sub.add_parser("develop", parents=[common],
                   help="planar development of the curve")
    sub.add_parser("monodromy", parents=[common],
                   help="plane isometry after one rolling circuit")
    p = sub.add_parser("report", parents=[common],
                       help="invariants, singularities, residuals as JSON")
    p.add_argument("--delta", type=float,
                   help="also check osculating-circle disjointness at"
                        " parameter offset delta")
    return parser


_NEGATIVE_OK = {"--range", "--point", "--alpha0", "--length", "--delta",
                "--ruling-extent", "--svg-scale", "--tol"}


def _absorb_negatives(argv):
    """Let values like -1:1 follow their flag without '=' syntax."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if (tok in _NEGATIVE_OK and nxt.startswith("-") and len(nxt) > 1
                and (nxt[1].isdigit() or nxt[1] == ".")):
            out.append(tok + "=" + nxt)
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _config_from(ns: argparse.Namespace) -> RunConfig:
    for mode in ("preset", "expr", "ktau"):
        value = getattr(ns, mode)
        if value is not None:
            source = (mode, value)
            break
    return RunConfig(source=source, domain=ns.range_, samples=ns.samples,
                     tol=ns.tol, alpha0=getattr(ns, "alpha0", 0.0),
                     length=getattr(ns, "length", None),
                     delta=getattr(ns, "delta", None),
                     extent=getattr(ns, "extent", 1.0),
                     kind=getattr(ns, "kind", "tangent"),
                     point=getattr(ns, "point", None),
                     signed=getattr(ns, "signed", False),
                     svg_scale=ns.svg_scale, out=ns.out, fmt=ns.fmt)


def entry(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_absorb_negatives(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from(ns)
        curve = build_curve(cfg)
        return _DISPATCH[ns.command](cfg, curve)
    except (ParseError, DomainError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"degenerate geometry: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(entry())
