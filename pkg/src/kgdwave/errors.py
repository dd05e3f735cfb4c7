"""Exception taxonomy shared by all kgdwave modules."""


class KgdError(Exception):
    """Base class for all kgdwave errors."""


class BranchPointHit(KgdError):
    """Evaluation point coincides with a branch point or lies on the cut."""


class OriginPole(KgdError):
    """Refraction index requested at s = 0, where n(s) has a pole."""


class DegenerateRegime(KgdError):
    """Operation undefined for the zero-discriminant medium."""


class FrontTooClose(KgdError):
    """mu exceeds 1 - front margin; saddle-point geometry diverges."""


class WrongRegime(KgdError):
    """Path parametrization requested for the other discriminant sign."""


class OutOfRange(KgdError):
    """Path parameter outside the admissible ordinate interval."""


class PathAuditFailure(KgdError):
    """A built path violates the constant-imaginary-part tolerance."""


class NonFiniteIntegrand(KgdError):
    """Integrand returned NaN/Inf; carries the offending abscissa."""

    def __init__(self, abscissa, message=None):
        self.abscissa = abscissa
        super().__init__(message or f"non-finite integrand value at u = {abscissa!r}")


class Overflow(KgdError):
    """Unscaled modified Bessel value exceeds the representable range."""


class NonFiniteTransform(KgdError):
    """Laplace transform returned a non-finite value at a contour node."""


class UnsupportedPulse(KgdError):
    """Input pulse table is malformed (empty or non-increasing grid)."""
