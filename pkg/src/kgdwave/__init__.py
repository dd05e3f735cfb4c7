"""Transient waves in damped Klein-Gordon media via steepest-descent
Laplace inversion.

The package trades the Bromwich contour of the inverse Laplace transform
for the analytically parametrized steepest descent path of the phase
function F_mu(s) = s - mu*sqrt((s+a/2)^2 + delta), turning each response
evaluation into a short real-line integral of a non-oscillatory integrand.
Closed-form Bessel solutions and an independent fixed-Talbot inversion
serve as oracles for every computed value.
"""

from .errors import (
    BranchPointHit,
    DegenerateRegime,
    FrontTooClose,
    KgdError,
    NonFiniteIntegrand,
    NonFiniteTransform,
    OriginPole,
    OutOfRange,
    Overflow,
    PathAuditFailure,
    UnsupportedPulse,
    WrongRegime,
)
from .geometry import (
    ClosedPath,
    OpenBranch,
    OpenPathPair,
    SaddleData,
    SdpPath,
    branch_points,
    build_path,
    ellipse_path,
    open_branch_path,
    saddle_points,
)
from .inversion import (
    CallablePulse,
    DiracDelta,
    Kind,
    Method,
    ResponseSample,
    TabulatedPulse,
    UnitStep,
    convolve,
    integrand_delta,
    integrand_n,
    response_sdp,
)
from .medium import (
    EPS_FRONT,
    MediumParams,
    ObsPoint,
    Regime,
    branch_sqrt,
    phase_function,
    refraction_index,
)
from .oracle import (
    ExactResponse,
    bessel_i0,
    bessel_i1,
    bessel_j0,
    bessel_j1,
    exact_r_delta,
    exact_r_n,
    laplace_transform,
    recommended_talbot_nodes,
    talbot_invert,
)
from .quadrature import QuadratureSettings, QuadResult, integrate, integrate_path

__version__ = "0.1.0"

__all__ = [
    "BranchPointHit", "DegenerateRegime", "FrontTooClose", "KgdError",
    "NonFiniteIntegrand", "NonFiniteTransform", "OriginPole", "OutOfRange",
    "Overflow", "PathAuditFailure", "UnsupportedPulse", "WrongRegime",
    "ClosedPath", "OpenBranch", "OpenPathPair", "SaddleData", "SdpPath",
    "branch_points", "build_path", "ellipse_path", "open_branch_path",
    "saddle_points",
    "CallablePulse", "DiracDelta", "Kind", "Method", "ResponseSample",
    "TabulatedPulse", "UnitStep", "convolve", "integrand_delta",
    "integrand_n", "response_sdp",
    "EPS_FRONT", "MediumParams", "ObsPoint", "Regime", "branch_sqrt",
    "phase_function", "refraction_index",
    "ExactResponse", "bessel_i0", "bessel_i1", "bessel_j0", "bessel_j1",
    "exact_r_delta", "exact_r_n", "laplace_transform",
    "recommended_talbot_nodes", "talbot_invert",
    "QuadratureSettings", "QuadResult", "integrate", "integrate_path",
    "__version__",
]
