"""Evolutes, involutes, and developable surfaces of space curves.

Three evolute constructions (osculating-sphere centers, the regression edge
of the rectifying developable, and the taut-string family), their involutes,
the associated developable surfaces and singularities, and the rolling-plane
monodromy of closed curves.
"""

from .catalog import CATALOG, CurveSpec, preset, preset_names
from .curves import ArclengthMap, Curve, ExprCurve, FrenetODECurve, \
    branch_grids
from .envelope import (Line3, PlaneFamily, RuledPatch, developable_patch,
                       edge_cusps, edge_point, edge_points, polar_line,
                       ruling_directions)
from .errors import (CuspPoint, DegenerateCurvature, DomainError, EvoluteCusp,
                     GeometryError, IdentityMonodromy, Indeterminate,
                     InfinityEscape, IntegrationFailure, LengthMismatch,
                     LineThroughEdge, NotClosed, ParseError, PureTranslation,
                     SingularSystem, TorsionVanishes)
from .evolute import (EvoluteCurve, conformal_torsion, evolute_curvature_torsion,
                      evolute_cusps, evolute_escapes, evolute_point,
                      evolute_points, interior_sign, osculating_circle,
                      osculating_circles_disjoint, osculating_sphere,
                      second_evolute_residual)
from .expr import Expr, differentiate, evaluate, parse, parse_curve, to_source
from .frenet import (CongruenceReport, FrenetEval, FrenetState, arclength,
                     frenet_at, indicatrix_geodesic_curvature, is_congruent,
                     sigma_values, total_absolute_torsion, total_curvature,
                     total_torsion)
from .monge import (MongeEvoluteCurve, MongeInvoluteCurve, envelope_meetings,
                    monge_escapes, monge_evolute_cusps, monge_evolute_point,
                    monge_evolutes_closed, offset_angles, signed_length,
                    string_residual)
from .pseudo import (PseudoEvoluteCurve, PseudoInvoluteCurve, geodesic_residual,
                     is_cylindrical, pseudo_cusps, pseudo_escapes,
                     pseudo_evolute_point, pseudo_evolute_points,
                     pseudo_involute)
from .report import curve_report, identity_residuals
from .rolling import (ContactElement, Development, PlanarIsometry,
                      TracedInvoluteCurve, closed_involute, monodromy,
                      trace_involute)

__version__ = "0.1.0"

import types as _types

__all__ = [name for name, value in list(globals().items())
           if not name.startswith("_")
           and not isinstance(value, _types.ModuleType)]
