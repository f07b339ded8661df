"""Built-in example curves.

Each preset is stored as expression text and parsed on construction, so the
catalog doubles as an exercise of the expression layer.  Angles in radians;
the closed presets have period-matching derivatives at the domain seam.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import ExprCurve

__all__ = ["CurveSpec", "CATALOG", "preset", "preset_names"]

_TWO_PI = 6.283185307179586
_PI_3 = 1.0471975511965976


@dataclass(frozen=True)
class CurveSpec:
    name: str
    components: str
    domain: tuple
    closed: bool = False
    cusps: tuple = field(default_factory=tuple)
    note: str = ""

    def build(self) -> ExprCurve:
        return ExprCurve(self.components, self.domain,
                         closed=self.closed, cusps=self.cusps)


CATALOG = (
    CurveSpec(
        name="helix",
        components="cos(t), sin(t), t",
        domain=(0.0, _TWO_PI),
        note="constant curvature and torsion 1/2",
    ),
    CurveSpec(
        name="elliptical-helix",
        components="2*cos(t), sin(t), t/2",
        domain=(0.0, _TWO_PI),
        note="four evolute cusps per turn",
    ),
    CurveSpec(
        name="torus-knot",
        components="(1 + 0.15*cos(5*t))*cos(t), (1 + 0.15*cos(5*t))*sin(t),"
                   " -0.15*sin(5*t)",
        domain=(0.0, _TWO_PI),
        closed=True,
        note="closed, nonvanishing torsion, evolute free of cusps",
    ),
    CurveSpec(
        name="cusp-curve",
        components="t^2, t^3, t^4",
        domain=(-1.0, 1.0),
        cusps=(0.0,),
        note="ordinary cusp at t=0 with closed-form evolutes",
    ),
    CurveSpec(
        name="fig8",
        components="cos(t), sin(t), 0.5*sin(2*t)",
        domain=(0.0, _TWO_PI),
        closed=True,
        note="figure-eight with four torsion zeros per period",
    ),
    CurveSpec(
        name="spherical",
        components=f"sin({_PI_3} + 0.2*sin(t))*cos(t),"
                   f" sin({_PI_3} + 0.2*sin(t))*sin(t),"
                   f" cos({_PI_3} + 0.2*sin(t))",
        domain=(0.0, _TWO_PI),
        closed=True,
        note="lies on the unit sphere, so the evolute degenerates to a point",
    ),
)

_BY_NAME = {spec.name: spec for spec in CATALOG}


def preset_names():
    return tuple(spec.name for spec in CATALOG)


def preset(name: str) -> ExprCurve:
    try:
        spec = _BY_NAME[name]
    except KeyError:
        known = ", ".join(preset_names())
        raise ValueError(f"unknown preset {name!r}; choose from {known}") from None
    return spec.build()
