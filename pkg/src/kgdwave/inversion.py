"""Assembly of steepest-descent line integrals into response values.

The Bromwich integral for either response collapses to a real line integral
once the contour is traded for the steepest descent path: with s = gamma(u)
the integrand becomes exp(t * F_mu(s)) * gamma'(u) / (2 pi i), times 1/w(s)
for the second response.  Position enters only through mu = x/(c t), which
is also why paths are memoized on (medium, mu).

Both halves of the closed path (and the two open branches) are complex
conjugates of each other, so the default evaluation integrates one half and
returns twice its real part, which cannot pick up a spurious imaginary
part.  The full-path mode is kept for the imaginary-residual diagnostic.

The wavefront delta term exp(-a x/(2c)) delta(t - x/c) of the impulse
response lives at mu = 1, outside the admissible range, and is never part
of the quadrature; callers reconstruct it from the exact coefficient.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import oracle
from .errors import FrontTooClose, UnsupportedPulse
from .geometry import build_path, ClosedPath
from .medium import EPS_FRONT, MediumParams, Regime, branch_sqrt
from .quadrature import QuadratureSettings, QuadResult, integrate

__all__ = [
    "Kind",
    "Method",
    "ResponseSample",
    "DiracDelta",
    "UnitStep",
    "TabulatedPulse",
    "CallablePulse",
    "integrand_delta",
    "integrand_n",
    "response_sdp",
    "convolve",
]


class Kind(Enum):
    Delta = "delta"
    N = "n"


class Method(Enum):
    SdpFull = "SdpFull"
    SdpHalf = "SdpHalf"
    Exact = "Exact"
    Talbot = "Talbot"
    Degenerate = "Degenerate"


@dataclass(frozen=True)
class ResponseSample:
    """One computed response value with its quality diagnostics.

    ``imag_residual`` is the magnitude of the discarded imaginary part for
    full-path evaluations and 0 by construction for the doubled-half mode.
    """

    x: float
    t: float
    value: float
    err_estimate: float
    imag_residual: float
    method: Method
    converged: bool = True


# --- input pulses -----------------------------------------------------------


@dataclass(frozen=True)
class DiracDelta:
    """Unit impulse: convolution identity."""


@dataclass(frozen=True)
class UnitStep:
    """Heaviside step switched on at t = 0."""


class TabulatedPulse:
    """Piecewise-linear pulse from a strictly increasing sample table.

    Evaluates to 0 outside the tabulated range.
    """

    def __init__(self, times, values):
        times = np.asarray(times, dtype=float)
        values = np.asarray(values, dtype=float)
        if times.ndim != 1 or times.size == 0 or times.shape != values.shape:
            raise UnsupportedPulse("pulse table must be two equal-length columns")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise UnsupportedPulse("pulse time grid must be strictly increasing")
        if times[0] < 0:
            raise UnsupportedPulse("pulse must be supported on t >= 0")
        self.times = times
        self.values = values

    def __call__(self, tau):
        return np.interp(tau, self.times, self.values, left=0.0, right=0.0)


class CallablePulse:
    """Wraps an arbitrary r0(t) callable (vectorized over ndarray)."""

    def __init__(self, fn):
        self.fn = fn

    def __call__(self, tau):
        return np.asarray(self.fn(tau), dtype=float)


# --- integrands -------------------------------------------------------------

_TWO_PI_I = 2j * math.pi


def integrand_delta(m: MediumParams, x: float, t: float, s):
    """f_delta(x, t; s) = exp(s t - (x/c) w(s)) / (2 pi i) on the decay sheet."""
    s_arr = np.asarray(s, dtype=complex)
    val = np.exp(s_arr * t - (x / m.c) * branch_sqrt(m, s_arr)) / _TWO_PI_I
    if np.isscalar(s) or np.asarray(s).shape == ():
        return complex(val)
    return val


def integrand_n(m: MediumParams, x: float, t: float, s):
    """integrand_delta divided by w(s)."""
    s_arr = np.asarray(s, dtype=complex)
    w = branch_sqrt(m, s_arr)
    val = np.exp(s_arr * t - (x / m.c) * w) / (_TWO_PI_I * w)
    if np.isscalar(s) or np.asarray(s).shape == ():
        return complex(val)
    return val


# --- path cache -------------------------------------------------------------

_MU_GRAIN = 1e-12
_path_cache: dict = {}
_path_lock = threading.Lock()


def _get_path(m: MediumParams, mu: float, front_margin: float):
    key = (m.a, m.b, m.c, round(mu / _MU_GRAIN), front_margin)
    path = _path_cache.get(key)
    if path is None:
        path = build_path(m, mu, front_margin=front_margin)
        with _path_lock:   # insert-only publication
            _path_cache.setdefault(key, path)
    return path


# --- response evaluation ----------------------------------------------------


def _coerce_kind(kind) -> Kind:
    if isinstance(kind, Kind):
        return kind
    return Kind(str(kind).lower())


def _path_quadrature(path, mu: float, t: float, kind: Kind,
                     settings: QuadratureSettings, half: bool) -> QuadResult:
    """Sum the line-integral segments for one response evaluation."""

    def make_f(eval_fn):
        if kind is Kind.Delta:
            def f(u):
                s, ds, w = eval_fn(u)
                return np.exp(t * (s - mu * w)) * ds / _TWO_PI_I
        else:
            def f(u):
                s, ds, w = eval_fn(u)
                return np.exp(t * (s - mu * w)) * ds / (_TWO_PI_I * w)
        return f

    total = QuadResult(0j, 0.0, 0, True)
    if isinstance(path, ClosedPath):
        f = make_f(path.evaluate)
        for lo, hi in path.segments(half=half):
            total = total + integrate(f, lo, hi, settings)
        return total
    drop = -math.log(1e-16) / t
    branches = (path.branch(2),) if half else path.branches
    for br in branches:
        lo, hi = br.clipped_interval(drop)
        f = make_f(br.evaluate)
        pts = br.seed_breakpoints(lo, hi)
        for a_, b_ in zip(pts[:-1], pts[1:]):
            total = total + integrate(f, a_, b_, settings)
    return total


def response_sdp(m: MediumParams, kind, x: float, t: float,
                 settings: QuadratureSettings | None = None,
                 use_half: bool = True,
                 front_margin: float = EPS_FRONT) -> ResponseSample:
    """Smooth response value at (x, t) by steepest-descent quadrature.

    Degenerate situations bypass the geometry: x = 0 and the zero-
    discriminant medium are answered from the closed forms (methods
    ``Exact`` and ``Degenerate``).  The wavefront delta term is never part
    of the returned value; see the module docstring.

    Raises
    ------
    FrontTooClose
        If mu = x/(ct) exceeds 1 - front_margin (or lies outside the cone).
    """
    kind = _coerce_kind(kind)
    if settings is None:
        settings = QuadratureSettings()
    if not (x >= 0 and t > 0):
        raise ValueError(f"need x >= 0 and t > 0, got x={x}, t={t}")
    mu = x / (m.c * t)
    if mu == 0.0:
        value = 0.0 if kind is Kind.Delta else oracle.exact_r_n(m, x, t).smooth_part
        return ResponseSample(x, t, value, 0.0, 0.0, Method.Exact)
    if m.regime is Regime.ZeroDelta:
        value = 0.0 if kind is Kind.Delta else math.exp(-m.a * t / 2)
        return ResponseSample(x, t, value, 0.0, 0.0, Method.Degenerate)
    if mu >= 1.0 - front_margin:
        raise FrontTooClose(
            f"mu = {mu} is outside the admissible range (< {1.0 - front_margin})"
        )
    path = _get_path(m, mu, front_margin)
    q = _path_quadrature(path, mu, t, kind, settings, half=use_half)
    if use_half:
        return ResponseSample(x, t, 2.0 * q.value.real, 2.0 * q.err_estimate,
                              0.0, Method.SdpHalf, q.converged)
    return ResponseSample(x, t, q.value.real, q.err_estimate,
                          abs(q.value.imag), Method.SdpFull, q.converged)


# --- convolution ------------------------------------------------------------


def _smooth_response(m: MediumParams, kind: Kind, x: float, t: float,
                     settings: QuadratureSettings, source: str,
                     front_margin: float) -> float:
    if source == "exact":
        fn = oracle.exact_r_delta if kind is Kind.Delta else oracle.exact_r_n
        return fn(m, x, t).smooth_part
    return response_sdp(m, kind, x, t, settings, use_half=True,
                        front_margin=front_margin).value


def convolve(m: MediumParams, pulse, kind, x: float, t: float,
             settings: QuadratureSettings | None = None,
             source: str = "sdp",
             front_margin: float = EPS_FRONT) -> float:
    """Response to an arbitrary input pulse by convolution with r_delta/r_n.

    ``pulse`` is one of :class:`DiracDelta`, :class:`UnitStep`,
    :class:`TabulatedPulse` or :class:`CallablePulse`.  For the impulse
    response the wavefront delta term contributes analytically
    (exp(-a x/(2c)) times the pulse value at the retarded time); the smooth
    part is integrated adaptively with the response evaluated either by
    steepest descent (``source="sdp"``, default) or from the closed forms
    (``source="exact"``).

    With the SDP source the integration starts at mu = 1 - front_margin
    rather than exactly at the wavefront; the skipped sliver is O(1e-6) of
    the front time and far below the quadrature tolerance.
    """
    kind = _coerce_kind(kind)
    if source not in ("sdp", "exact"):
        raise ValueError(f"source must be 'sdp' or 'exact', got {source!r}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if settings is None:
        settings = QuadratureSettings(abs_tol=1e-8, rel_tol=1e-8, max_intervals=500)
    if isinstance(pulse, DiracDelta):
        return _smooth_response(m, kind, x, t, settings, source, front_margin)

    front = x / m.c
    if t <= front:
        return 0.0
    lo = front
    if source == "sdp" and x > 0:
        lo = front / (1.0 - front_margin)
        if lo >= t:
            return 0.0

    if isinstance(pulse, UnitStep):
        def f(u):
            return np.array([
                _smooth_response(m, kind, x, float(tp), settings, source,
                                 front_margin) for tp in u
            ], dtype=complex)

        smooth = integrate(f, lo, t, settings).value.real
        if kind is Kind.Delta:
            smooth += math.exp(-m.a * x / (2 * m.c))
        return smooth

    if isinstance(pulse, (TabulatedPulse, CallablePulse)):
        def f(u):
            r0 = np.asarray(pulse(t - u), dtype=float)
            resp = np.array([
                _smooth_response(m, kind, x, float(tp), settings, source,
                                 front_margin) for tp in u
            ])
            return (r0 * resp).astype(complex)

        smooth = integrate(f, lo, t, settings).value.real
        if kind is Kind.Delta:
            smooth += math.exp(-m.a * x / (2 * m.c)) * float(pulse(t - front))
        return smooth

    raise UnsupportedPulse(f"unknown pulse type {type(pulse).__name__}")
