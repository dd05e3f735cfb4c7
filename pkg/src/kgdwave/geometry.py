"""Steepest descent path geometry for the damped Klein-Gordon phase function.

For F_mu(s) = s - mu*w(s) the stationary points satisfy (s + a/2)^2 (1 -
mu^2) = -delta, giving

* delta < 0: two real saddles p_{1,2} = -a/2 -+ sqrt(-delta/(1-mu^2)); the
  constant-Im-F level curve through them is the ellipse with semi-axes
  alpha = sqrt(-delta/(1-mu^2)), beta = mu*alpha, traversed
  counter-clockwise.  Along it w reduces to beta*cos(u) + i*alpha*sin(u).

* delta > 0: two conjugate saddles p_{1,2} = -a/2 -+ i*sqrt(delta/(1-mu^2));
  the path is a pair of open branches, each a graph xi = g_k(eta) over the
  ordinate window (u_minus, u_plus) bounded by horizontal asymptotes
  u_{-+} = sqrt(delta*(1-+mu)/(1+-mu)).  The textbook radical form of g_k
  hides a perfect square: with omega_k = Im F(p_k) and the signed saddle
  ordinate u_s,k the curve is simply

      g_k(u) = -a/2 - sqrt(1-mu^2) (u - omega_k)(u - u_s,k) / (mu sqrt(D)),
      D(u)   = (omega_k - (1-mu) u) ((1+mu) u - omega_k),

  smooth across its two crossings of the vertical line Re s = -a/2.  The
  crossing at u = omega_k lies ON the branch cut: there the curve passes to
  the adjacent sheet, and the correct integrand value uses the analytic
  continuation of w.  Along the path that continuation also has a closed
  form,

      w(u) = -sqrt(1-mu^2) u (u - u_s,k)/sqrt(D)  +  i (u - omega_k)/mu,

  which equals +branch_sqrt on the outer piece and -branch_sqrt between the
  cut crossing and the inner asymptote.  Path evaluation returns this w so
  callers never juggle sheets.

Every built path is audited on a Chebyshev-spaced grid: Im F must be
constant to 1e-9*(1 + |Re F|), Re F must be maximal at the saddle and
monotone toward the ends, and the saddle must be stationary under numerical
differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import medium as med
from .errors import (
    DegenerateRegime,
    FrontTooClose,
    OutOfRange,
    PathAuditFailure,
    WrongRegime,
)
from .medium import EPS_FRONT, MediumParams, Regime, branch_sqrt, phase_function

__all__ = [
    "SaddleData",
    "PathAudit",
    "SdpPath",
    "ClosedPath",
    "OpenBranch",
    "OpenPathPair",
    "saddle_points",
    "branch_points",
    "ellipse_path",
    "open_branch_path",
    "build_path",
    "saddle_residual",
]

#: Pointwise tolerance factor for |Im F - omega| along audited paths.
IMF_TOL = 1e-9
#: Open branches are never evaluated closer to an asymptote than this
#: fraction of the ordinate window.
ASYMPTOTE_GUARD = 1e-12
#: Re F drop from the saddle bounding the audit window on open branches
#: (equals the integration window for t = 1; windows shrink like 1/t).
AUDIT_DROP = -math.log(1e-16)
#: Default number of audit points per path section.
AUDIT_POINTS = 257


@dataclass(frozen=True)
class SaddleData:
    """Saddle points and saddle values of F_mu.

    phi_k = F_mu(p_k) by direct evaluation on the decay sheet; omega_k is
    its imaginary part (the constant Im-F level of the branch through p_k).
    Printed closed forms for the phi_k exist but mix sheet conventions, so
    they are used only as set-valued cross-checks in the tests.
    """

    p1: complex
    p2: complex
    phi1: complex
    phi2: complex
    omega1: float
    omega2: float


def _require_sdp_regime(m: MediumParams):
    if m.regime is Regime.ZeroDelta:
        raise DegenerateRegime(
            "saddle points collide with branch points for delta = 0; "
            "use the closed-form degenerate response instead"
        )


def _require_inside_front(mu: float, front_margin: float):
    if not 0.0 < mu:
        raise ValueError(f"mu must be positive for SDP geometry, got {mu}")
    if mu >= 1.0 - front_margin:
        raise FrontTooClose(
            f"mu = {mu} reaches 1 - {front_margin:g}; saddle points diverge "
            "near the wavefront"
        )


def saddle_points(m: MediumParams, mu: float, front_margin: float = EPS_FRONT) -> SaddleData:
    """Both saddle points of F_mu with directly evaluated saddle values."""
    _require_sdp_regime(m)
    _require_inside_front(mu, front_margin)
    r = math.sqrt(abs(m.delta) / (1.0 - mu * mu))
    if m.delta < 0:
        p1 = complex(-m.half_a - r)
        p2 = complex(-m.half_a + r)
    else:
        p1 = complex(-m.half_a, -r)
        p2 = complex(-m.half_a, r)
    phi1 = phase_function(m, mu, p1)
    phi2 = phase_function(m, mu, p2)
    return SaddleData(p1, p2, phi1, phi2, phi1.imag, phi2.imag)


def branch_points(m: MediumParams) -> tuple[complex, complex]:
    """Branch points of the refraction index square root."""
    _require_sdp_regime(m)
    return m.branch_points()


def saddle_residual(m: MediumParams, mu: float, p: complex) -> float:
    """|F_mu'(p)| by Richardson-extrapolated 4th-order central differences.

    Step 1e-5*(1 + |p|); the two stencils combine to 6th order, keeping
    truncation negligible even where higher derivatives blow up near the
    branch points (small mu).
    """
    h0 = 1e-5 * (1.0 + abs(p))

    def d4(h: float) -> complex:
        f = lambda z: phase_function(m, mu, z)
        return (f(p - 2 * h) - 8 * f(p - h) + 8 * f(p + h) - f(p + 2 * h)) / (12 * h)

    d_h, d_h2 = d4(h0), d4(h0 / 2)
    return abs((16 * d_h2 - d_h) / 15)


# ---------------------------------------------------------------------------
# path parametrizations


@dataclass(frozen=True)
class PathAudit:
    """Audit-grid diagnostics attached to every built path.

    Sections follow path order; each row is one audit point with the
    sheet-aware F value and the residual |Im F - omega| / (1 + |Re F|).
    """

    u: np.ndarray
    s: np.ndarray
    F: np.ndarray
    imf_residual: np.ndarray
    max_imf_residual: float
    saddle_residuals: tuple[float, float]
    descent_ok: bool


@dataclass(frozen=True)
class ClosedPath:
    """Closed elliptic steepest descent path (delta < 0).

    gamma(u) = -a/2 + alpha*cos(u) + i*beta*sin(u), u in [0, 2pi),
    counter-clockwise; u = 0 is the dominant saddle p2, u = pi is p1.
    """

    medium: MediumParams
    mu: float
    center: float
    alpha: float
    beta: float
    saddles: SaddleData
    b1: complex
    b2: complex
    audit: PathAudit = field(repr=False, default=None)

    @property
    def is_closed(self) -> bool:
        return True

    def evaluate(self, u):
        """Vectorized (point, tangent, w) along the ellipse.

        w is the exact on-path value of branch_sqrt: beta*cos u +
        i*alpha*sin u (conjugate ellipse), avoiding any cut bookkeeping.
        """
        u = np.asarray(u, dtype=float)
        cu, su = np.cos(u), np.sin(u)
        s = self.center + self.alpha * cu + 1j * self.beta * su
        ds = -self.alpha * su + 1j * self.beta * cu
        w = self.beta * cu + 1j * self.alpha * su
        return s, ds, w

    def phase(self, u):
        s, _, w = self.evaluate(u)
        return s - self.mu * w

    def segments(self, half: bool = False):
        """Parameter intervals to integrate over (with interior seed splits)."""
        if half:
            return [(0.0, math.pi / 2), (math.pi / 2, math.pi)]
        return [
            (0.0, math.pi / 2),
            (math.pi / 2, math.pi),
            (math.pi, 3 * math.pi / 2),
            (3 * math.pi / 2, 2 * math.pi),
        ]


@dataclass(frozen=True)
class OpenBranch:
    """One branch of the open steepest descent pair (delta > 0).

    The branch through the upper saddle (k = 2) runs over ordinates
    (u_minus, u_plus); the conjugate branch (k = 1) over
    (-u_plus, -u_minus).  ``omega`` is the branch's Im-F level and also the
    ordinate where the curve crosses the branch cut (the formula's sign
    switch); ``u_saddle`` is the signed saddle ordinate where the radical
    factor vanishes.
    """

    k: int
    mu: float
    half_a: float
    omega: float
    u_saddle: float
    lo: float          # signed lower ordinate (asymptote)
    hi: float          # signed upper ordinate (asymptote)

    def _window(self) -> float:
        return self.hi - self.lo

    def _D(self, u):
        # factored form of mu^2 u^2 - (u - omega)^2: positive strictly inside
        return (self.omega - (1 - self.mu) * u) * ((1 + self.mu) * u - self.omega)

    def evaluate(self, u):
        """Vectorized (point, tangent, w) with w continued across the cut.

        The returned w equals +branch_sqrt outside the cut crossing at
        u = omega and -branch_sqrt between the crossing and the inner
        asymptote; the composite is the smooth on-path continuation.
        """
        u = np.asarray(u, dtype=float)
        mu = self.mu
        q = math.sqrt(1.0 - mu * mu) / mu
        D = self._D(u)
        sqD = np.sqrt(D)
        r1 = u - self.omega
        r2 = u - self.u_saddle
        g = -self.half_a - q * r1 * r2 / sqD
        dD = 2 * mu * mu * u - 2 * r1
        dg = -q * ((2 * u - self.omega - self.u_saddle) / sqD
                   - r1 * r2 * dD / (2 * D * sqD))
        w = -q * mu * u * r2 / sqD + 1j * (r1 / mu)
        return g + 1j * u, dg + 1j * np.ones_like(u), w

    def phase(self, u):
        s, _, w = self.evaluate(u)
        return s - self.mu * w

    def guard(self) -> float:
        return ASYMPTOTE_GUARD * self._window()

    def contains(self, u, slack: float = 0.0) -> bool:
        eps = self.guard() - slack
        return bool(np.all((u > self.lo + eps) & (u < self.hi - eps)))

    def clipped_interval(self, drop: float) -> tuple[float, float]:
        """Ordinate window where Re F stays within ``drop`` of the saddle.

        Re F is monotone on each side of the saddle ordinate, so bisection
        on Re F - (phi_saddle - drop) locates the two ends.  The result is
        capped at the asymptote guard.
        """
        phi_re = float(self.phase(self.u_saddle).real)
        target = phi_re - drop

        def cut(side_end: float) -> float:
            a, b = self.u_saddle, side_end
            fa = 0.0  # ReF - target at saddle is +drop > 0
            fb = float(self.phase(b).real) - target
            if fb > 0:      # window reaches the guard before dropping enough
                return b
            for _ in range(200):
                mid = 0.5 * (a + b)
                if float(self.phase(mid).real) - target > 0:
                    a = mid
                else:
                    b = mid
                if abs(b - a) < 1e-15 * self._window():
                    break
            return b

        g = self.guard()
        return cut(self.lo + g), cut(self.hi - g)

    def seed_breakpoints(self, lo: float, hi: float):
        """Interior seed splits (cut crossing, saddle) for the quadrature."""
        pts = [p for p in (self.omega, self.u_saddle) if lo < p < hi]
        return [lo] + sorted(pts) + [hi]


@dataclass(frozen=True)
class OpenPathPair:
    """Conjugate pair of open steepest descent branches (delta > 0)."""

    medium: MediumParams
    mu: float
    u_minus: float
    u_plus: float
    u_s: float
    branches: tuple[OpenBranch, OpenBranch]
    saddles: SaddleData
    b1: complex
    b2: complex
    audit: PathAudit = field(repr=False, default=None)

    @property
    def is_closed(self) -> bool:
        return False

    def branch(self, k: int) -> OpenBranch:
        if k not in (1, 2):
            raise ValueError(f"branch index must be 1 or 2, got {k}")
        return self.branches[k - 1]


SdpPath = ClosedPath | OpenPathPair


def ellipse_path(m: MediumParams, mu: float, u, front_margin: float = EPS_FRONT):
    """Point and tangent of the closed path at angle u (delta < 0 only)."""
    if m.regime is not Regime.NegativeDelta:
        raise WrongRegime("closed elliptic path exists only for delta < 0")
    _require_inside_front(mu, front_margin)
    alpha = math.sqrt(-m.delta / (1.0 - mu * mu))
    beta = mu * alpha
    u = np.asarray(u, dtype=float)
    point = -m.half_a + alpha * np.cos(u) + 1j * beta * np.sin(u)
    tangent = -alpha * np.sin(u) + 1j * beta * np.cos(u)
    if point.shape == ():
        return complex(point), complex(tangent)
    return point, tangent


def _make_branches(m: MediumParams, mu: float):
    sad = saddle_points(m, mu)
    u_s = math.sqrt(m.delta / (1.0 - mu * mu))
    u_minus = math.sqrt(m.delta * (1.0 - mu) / (1.0 + mu))
    u_plus = math.sqrt(m.delta * (1.0 + mu) / (1.0 - mu))
    lower = OpenBranch(k=1, mu=mu, half_a=m.half_a, omega=sad.omega1,
                       u_saddle=-u_s, lo=-u_plus, hi=-u_minus)
    upper = OpenBranch(k=2, mu=mu, half_a=m.half_a, omega=sad.omega2,
                       u_saddle=u_s, lo=u_minus, hi=u_plus)
    return sad, u_minus, u_plus, u_s, (lower, upper)


def open_branch_path(m: MediumParams, mu: float, k: int, u,
                     front_margin: float = EPS_FRONT):
    """Point and tangent of open branch k at ordinate u (delta > 0 only)."""
    if m.regime is not Regime.PositiveDelta:
        raise WrongRegime("open branch pair exists only for delta > 0")
    _require_inside_front(mu, front_margin)
    _, _, _, _, branches = _make_branches(m, mu)
    if k not in (1, 2):
        raise ValueError(f"branch index must be 1 or 2, got {k}")
    br = branches[k - 1]
    u_arr = np.asarray(u, dtype=float)
    if not br.contains(u_arr):
        raise OutOfRange(
            f"ordinate {u} outside branch {k} window ({br.lo:g}, {br.hi:g})"
        )
    s, ds, _ = br.evaluate(u_arr)
    if s.shape == ():
        return complex(s), complex(ds)
    return s, ds


def _chebyshev_grid(lo: float, hi: float, n: int) -> np.ndarray:
    # second-kind Chebyshev points: cluster near both ends
    j = np.arange(n, dtype=float)
    return lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * j / (n - 1)))


def _descent_ok(re_f: np.ndarray, tol: float) -> bool:
    # non-increasing within rounding slack
    return bool(np.all(np.diff(re_f) <= tol))


def _audit_closed(path: ClosedPath, n: int):
    sections = []
    for lo, hi in [(0.0, math.pi), (math.pi, 2 * math.pi)]:
        u = _chebyshev_grid(lo, hi, n)
        s, _, w = path.evaluate(u)
        F = s - path.mu * w
        sections.append((u, s, F))
    u = np.concatenate([sec[0] for sec in sections])
    s = np.concatenate([sec[1] for sec in sections])
    F = np.concatenate([sec[2] for sec in sections])
    resid = np.abs(F.imag) / (1.0 + np.abs(F.real))
    # Re F falls from p2 (u=0) to p1 (u=pi), then rises back to p2
    slack = 64 * np.finfo(float).eps * (1.0 + np.abs(F.real).max())
    down, up = sections
    descent = (_descent_ok(down[2].real, slack)
               and _descent_ok(up[2].real[::-1], slack))
    return u, s, F, resid, descent


def _audit_open(path: OpenPathPair, n: int):
    out_u, out_s, out_F, descent = [], [], [], True
    for br in path.branches:
        lo, hi = br.clipped_interval(AUDIT_DROP)
        u = _chebyshev_grid(lo, hi, n)
        s, _, w = br.evaluate(u)
        F = s - path.mu * w
        out_u.append(u)
        out_s.append(s)
        out_F.append(F)
        slack = 64 * np.finfo(float).eps * (1.0 + np.abs(F.real).max())
        left = F.real[u <= br.u_saddle]
        right = F.real[u >= br.u_saddle]
        descent &= _descent_ok(left[::-1], slack) and _descent_ok(right, slack)
    u = np.concatenate(out_u)
    s = np.concatenate(out_s)
    F = np.concatenate(out_F)
    omegas = np.concatenate([
        np.full(out_u[i].shape, path.branches[i].omega) for i in range(2)
    ])
    resid = np.abs(F.imag - omegas) / (1.0 + np.abs(F.real))
    return u, s, F, resid, descent


def build_path(m: MediumParams, mu: float, front_margin: float = EPS_FRONT,
               audit_points: int = AUDIT_POINTS) -> SdpPath:
    """Construct and audit the full steepest descent path for (m, mu).

    Raises
    ------
    DegenerateRegime, FrontTooClose
        Preconditions on regime and mu.
    PathAuditFailure
        If any audit point violates |Im F - omega| <= 1e-9*(1 + |Re F|),
        which would indicate a branch or sign resolution bug.
    """
    _require_sdp_regime(m)
    _require_inside_front(mu, front_margin)
    b1, b2 = m.branch_points()
    if m.regime is Regime.NegativeDelta:
        sad = saddle_points(m, mu)
        alpha = math.sqrt(-m.delta / (1.0 - mu * mu))
        path = ClosedPath(medium=m, mu=mu, center=-m.half_a, alpha=alpha,
                          beta=mu * alpha, saddles=sad, b1=b1, b2=b2)
        u, s, F, resid, descent = _audit_closed(path, audit_points)
    else:
        sad, u_minus, u_plus, u_s, branches = _make_branches(m, mu)
        path = OpenPathPair(medium=m, mu=mu, u_minus=u_minus, u_plus=u_plus,
                            u_s=u_s, branches=branches, saddles=sad,
                            b1=b1, b2=b2)
        u, s, F, resid, descent = _audit_open(path, audit_points)
    max_resid = float(resid.max())
    if max_resid > IMF_TOL:
        raise PathAuditFailure(
            f"Im F drifts by {max_resid:.3e} (relative) along the path for "
            f"mu = {mu}; branch/sign resolution is inconsistent"
        )
    res = (saddle_residual(m, mu, sad.p1), saddle_residual(m, mu, sad.p2))
    audit = PathAudit(u=u, s=s, F=F, imf_residual=resid,
                      max_imf_residual=max_resid, saddle_residuals=res,
                      descent_ok=descent)
    kwargs = dict(path.__dict__)
    kwargs["audit"] = audit
    return type(path)(**kwargs)
