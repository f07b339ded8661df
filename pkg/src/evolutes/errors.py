"""Exception taxonomy shared across the package.

Parse and evaluation failures are ValueErrors; geometric degeneracies all
derive from GeometryError so the CLI can map them to a single exit code.
"""


class ParseError(ValueError):
    """Raised on malformed expression text; carries a byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class DomainError(ValueError):
    """Evaluation left the real domain (log of a non-positive value, ...)."""


class GeometryError(Exception):
    """Base class for geometric degeneracies; may carry the parameter."""

    def __init__(self, message, t=None):
        if t is not None:
            message = f"{message} at t≈{t:.9g}"
        super().__init__(message)
        self.t = t


class CuspPoint(GeometryError):
    """The curve's speed vanishes at the requested parameter."""


class DegenerateCurvature(GeometryError):
    """Curvature fell below the genericity threshold eps_k."""


class TorsionVanishes(GeometryError):
    """Torsion fell below the genericity threshold eps_tau."""


class EvoluteCusp(GeometryError):
    """The evolute is singular (sigma = 0) at the requested parameter."""


class InfinityEscape(GeometryError):
    """The requested point escapes to infinity (denominator vanishes)."""


class Indeterminate(GeometryError):
    """Classification is undecidable inside tolerance."""


class SingularSystem(GeometryError):
    """A linear envelope system is numerically singular."""


class IntegrationFailure(GeometryError):
    """The ODE integrator could not reach the requested tolerance."""


class NotClosed(GeometryError):
    """An operation requiring a closed curve received an open one."""


class LengthMismatch(GeometryError):
    """Congruence test on curves whose arclengths differ beyond tolerance."""


class IdentityMonodromy(GeometryError):
    """The rolling monodromy is the identity; every involute closes."""


class PureTranslation(GeometryError):
    """The rolling monodromy is a nontrivial translation; no fixed point."""


class LineThroughEdge(UserWarning):
    """A development line crosses the developed edge curve (cusp warning)."""
