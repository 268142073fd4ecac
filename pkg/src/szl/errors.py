"""Exception vocabulary shared by all szl modules."""


class SzlError(Exception):
    """Base class for all errors raised by this package."""


class PoleAtNonPositiveInteger(SzlError):
    """Gamma-type function evaluated at a non-positive integer."""


class PoleAtOne(SzlError):
    """Riemann zeta evaluated at its pole s = 1."""


class PoleHit(SzlError):
    """Evaluation point coincides with (or is too close to) a pole of the target."""


class NonConvergence(SzlError):
    """Successive refinements of a numerical scheme disagree beyond tolerance."""


class DivergentTail(SzlError):
    """Truncated series tail estimate exceeds the requested tolerance."""


class CutoffTooSmall(SzlError):
    """Requested argument lies beyond the data cutoff (census, series, ...)."""


class InvalidSignature(SzlError):
    """Group signature produces a non-positive hyperbolic volume."""


class UnsupportedKind(SzlError):
    """Operation needs a matrix model the group descriptor does not have."""


class UnsupportedGroup(SzlError):
    """Operation is not available for this group (no closed form / no census)."""


class UnknownGroup(SzlError):
    """Group id does not resolve in the catalog."""


class NoHyperbolicFound(SzlError):
    """Systole search ceiling too small: no hyperbolic element below it."""


class ZeroACoefficient(SzlError):
    """Leading Dirichlet coefficient a_M vanishes; log|a_M| predictors undefined."""


class UnitA(SzlError):
    """log A_M = 0 with derivative order k >= 2; the k-th order term is undefined."""


class NonUnitLeading(SzlError):
    """Logarithmic derivative requested for a series whose leading term is not (1, 1)."""


class InsufficientTerms(SzlError):
    """Scattering source does not resolve the constants the decomposition needs."""


class BoundaryTooClose(SzlError):
    """Contour passes too close to a zero/pole; caller must perturb the rectangle."""


class WrongTrichotomy(SzlError):
    """Comparison identity requires the geodesic-smaller case A = exp(l0)."""
