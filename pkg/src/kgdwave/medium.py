"""Damped Klein-Gordon medium model.

The medium is the constant-coefficient hyperbolic model

    r_tt + a r_t + b r - c^2 r_xx = 0,        a, b >= 0, c > 0,

whose Laplace-domain refraction index is

    n(s) = sqrt((s + a/2)^2 + delta) / s,     delta = b - a^2/4.

The sign of the discriminant ``delta`` selects everything downstream: the
location of the branch points of the square root (real pair for delta < 0,
conjugate imaginary pair for delta > 0), the topology of the steepest
descent path, and the Bessel family appearing in the closed-form responses.

This module provides:

* :class:`MediumParams` and :class:`ObsPoint` value types,
* ``branch_sqrt``  -- the branch of w(s) = sqrt((s+a/2)^2 + delta) on the
  sheet where w(s) ~ s + a/2 as \|s\| -> oo, with the cut confined to the
  segment joining the two branch points,
* ``refraction_index`` and ``phase_function`` built on top of it.

All functions accept scalars or numpy arrays of complex values and are pure
(no interior mutation), hence freely shareable between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import BranchPointHit, OriginPole

__all__ = [
    "Regime",
    "MediumParams",
    "ObsPoint",
    "EPS_FRONT",
    "branch_sqrt",
    "refraction_index",
    "phase_function",
]

#: Default front margin: steepest-descent evaluation requires mu <= 1 - EPS_FRONT.
EPS_FRONT = 1e-6

# Relative slack used to classify delta == 0 (in units of max(b, a^2/4)).
_ZERO_DELTA_RTOL = 8 * np.finfo(float).eps


class Regime(Enum):
    """Sign class of the discriminant delta = b - a^2/4."""

    NegativeDelta = -1
    ZeroDelta = 0
    PositiveDelta = 1


@dataclass(frozen=True)
class MediumParams:
    """Constants of the damped Klein-Gordon medium.

    Parameters
    ----------
    a : float
        Damping coefficient, 1/time, >= 0.
    b : float
        Restoring coefficient, 1/time^2, >= 0.
    c : float
        Wavefront speed, length/time, > 0.

    Attributes
    ----------
    delta : float
        Discriminant b - a^2/4.
    regime : Regime
        Sign class of ``delta``; ``ZeroDelta`` when \|delta\| is at the
        rounding floor relative to max(b, a^2/4).
    """

    a: float
    b: float
    c: float
    delta: float = field(init=False)
    regime: Regime = field(init=False)

    def __post_init__(self):
        if not (self.a >= 0 and math.isfinite(self.a)):
            raise ValueError(f"damping coefficient a must be >= 0, got {self.a}")
        if not (self.b >= 0 and math.isfinite(self.b)):
            raise ValueError(f"restoring coefficient b must be >= 0, got {self.b}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"wavefront speed c must be > 0, got {self.c}")
        delta = self.b - self.a * self.a / 4.0
        scale = max(self.b, self.a * self.a / 4.0)
        if abs(delta) <= _ZERO_DELTA_RTOL * scale:
            regime = Regime.ZeroDelta
        elif delta > 0:
            regime = Regime.PositiveDelta
        else:
            regime = Regime.NegativeDelta
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "regime", regime)

    @property
    def half_a(self) -> float:
        return self.a / 2.0

    def branch_points(self) -> tuple[complex, complex]:
        """Zeros b1, b2 of (s + a/2)^2 + delta, ordered b1 before b2.

        Real pair -a/2 -+ sqrt(-delta) for negative delta, conjugate pair
        -a/2 -+ i sqrt(delta) for positive delta.  For the degenerate medium
        both collapse onto -a/2.
        """
        if self.delta < 0:
            r = math.sqrt(-self.delta)
            return complex(-self.half_a - r), complex(-self.half_a + r)
        r = math.sqrt(max(self.delta, 0.0))
        return complex(-self.half_a, -r), complex(-self.half_a, r)

    def cut_tolerance(self) -> float:
        """Exclusion distance around the branch cut for branch_sqrt."""
        return 1e-12 * (1.0 + math.sqrt(abs(self.delta)))


@dataclass(frozen=True)
class ObsPoint:
    """A space-time evaluation point with its similarity parameter.

    ``mu = x/(c t)`` fixes the steepest-descent geometry; ``theta = 1/mu``
    is the reciprocal parametrization (defined only for mu > 0).  Points
    outside the causal cone (mu > 1) are rejected at construction.
    """

    x: float
    t: float
    mu: float = field(init=False)

    def __init__(self, m: MediumParams, x: float, t: float):
        if not (x >= 0 and math.isfinite(x)):
            raise ValueError(f"position x must be >= 0, got {x}")
        if not (t > 0 and math.isfinite(t)):
            raise ValueError(f"time t must be > 0, got {t}")
        mu = x / (m.c * t)
        if mu > 1.0:
            raise ValueError(f"point lies outside the cone: mu = {mu} > 1")
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "t", float(t))
        object.__setattr__(self, "mu", mu)

    @property
    def theta(self) -> float:
        if self.mu == 0.0:
            raise ValueError("theta undefined for mu = 0 (x = 0)")
        return 1.0 / self.mu


def _cut_distance(m: MediumParams, s: np.ndarray) -> np.ndarray:
    """Distance from s to the branch-cut segment joining b1 and b2."""
    if m.regime is Regime.ZeroDelta:
        return np.full_like(np.real(s), np.inf, dtype=float)
    half = math.sqrt(abs(m.delta))
    if m.delta < 0:
        # horizontal segment [-a/2 - half, -a/2 + half]
        along = np.real(s) + m.half_a
        perp = np.imag(s)
    else:
        # vertical segment [-a/2 - i half, -a/2 + i half]
        along = np.imag(s)
        perp = np.real(s) + m.half_a
    overshoot = np.maximum(np.abs(along) - half, 0.0)
    return np.hypot(perp, overshoot)


def branch_sqrt(m: MediumParams, s, *, check_cut: bool = True):
    """w(s) = sqrt((s + a/2)^2 + delta) on the decay sheet.

    The sheet is fixed by two requirements forced by convergence of the
    Laplace-domain responses: w(s) ~ s + a/2 as \|s\| -> oo in every
    direction, and Re w(s) > 0 for Re s > 0.  The branch cut is confined to
    the segment joining the two branch points; w is continuous everywhere
    else, in particular across the vertical line through -a/2 away from the
    cut (where the principal square root of the radicand would jump).

    Implemented as a product of square-root factors anchored at the branch
    points, with the factor cuts oriented so they cancel off the segment:
    principal factors for the real pair, quarter-turn rotated factors
    (cut rays pointing downward) for the imaginary pair.

    Parameters
    ----------
    m : MediumParams
    s : complex scalar or ndarray
    check_cut : bool
        When true (default) raise :class:`BranchPointHit` for points within
        ``m.cut_tolerance()`` of the cut.  Internal path code that crosses
        the cut deliberately disables the check.

    Raises
    ------
    BranchPointHit
        If any evaluation point is within tolerance of the cut (which
        includes both branch points).
    """
    s_arr = np.asarray(s, dtype=complex)
    if check_cut and m.regime is not Regime.ZeroDelta:
        dist = _cut_distance(m, s_arr)
        if np.any(dist < m.cut_tolerance()):
            bad = np.asarray(s_arr)[np.unravel_index(int(np.argmin(dist)), s_arr.shape)] \
                if s_arr.shape else complex(s_arr)
            raise BranchPointHit(f"s = {bad} lies on or near the branch cut")
    if m.regime is Regime.ZeroDelta:
        w = s_arr + m.half_a
    else:
        b1, b2 = m.branch_points()
        if m.delta < 0:
            w = np.sqrt(s_arr - b1) * np.sqrt(s_arr - b2)
        else:
            # arg in (-pi/2, 3pi/2] for both factors: cut rays point down,
            # overlap cancels below b1, net cut is the vertical segment.
            w = 1j * np.sqrt(-1j * (s_arr - b1)) * np.sqrt(-1j * (s_arr - b2))
    if np.isscalar(s) or np.asarray(s).shape == ():
        return complex(w)
    return w


def refraction_index(m: MediumParams, s):
    """n(s) = branch_sqrt(m, s) / s; tends to 1 as \|s\| -> oo.

    Raises
    ------
    OriginPole
        If s == 0 exactly (n has a simple pole at the origin for b > 0).
    BranchPointHit
        Propagated from branch_sqrt.
    """
    s_arr = np.asarray(s, dtype=complex)
    if np.any(s_arr == 0):
        raise OriginPole("refraction index has a pole at s = 0")
    n = branch_sqrt(m, s_arr) / s_arr
    if np.isscalar(s) or np.asarray(s).shape == ():
        return complex(n)
    return n


def phase_function(m: MediumParams, mu: float, s):
    """F_mu(s) = s - mu * w(s), the exponent shape of the line integrals.

    For s != 0 this equals s * (1 - mu * n(s)).  The steepest descent path
    is a level curve of Im F_mu through its saddle points.
    """
    if not 0.0 <= mu < 1.0:
        raise ValueError(f"mu must lie in [0, 1), got {mu}")
    s_arr = np.asarray(s, dtype=complex)
    if mu == 0.0:
        out = s_arr + 0j   # exact identity, no branch evaluation needed
    else:
        out = s_arr - mu * branch_sqrt(m, s_arr)
    if np.isscalar(s) or np.asarray(s).shape == ():
        return complex(out)
    return out
