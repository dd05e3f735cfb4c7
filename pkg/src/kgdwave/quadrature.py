"""Adaptive Gauss-Kronrod quadrature for complex-valued integrands.

The 7-point Gauss / 15-point Kronrod pair is embedded as 25-significant-
digit constants (the standard published values); a self-check run at import
verifies exactness on monomials through the rule's algebraic degrees, so no
external quadrature dependency carries correctness-critical numbers.

Real and imaginary parts share one subdivision tree: each interval's error
is the Euclidean norm of the component Gauss/Kronrod differences, keeping
the two components consistent for conjugate-symmetry checks downstream.
Subdivision is by a priority queue keyed on interval error, leftmost
interval winning ties, so results are deterministic.

Integrands are evaluated on node arrays (ndarray in, ndarray out); every
function in this package follows that contract.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteIntegrand

__all__ = [
    "QuadratureSettings",
    "QuadResult",
    "integrate",
    "integrate_path",
    "rule_self_check",
]

# Kronrod-15 nonnegative nodes and weights (symmetric; 25 significant digits).
_KRONROD = [
    ("0.0", "0.2094821410847278280129992"),
    ("0.2077849550078984676006894", "0.204432940075298892414162"),
    ("0.4058451513773971669066064", "0.1903505780647854099132564"),
    ("0.5860872354676911302941448", "0.1690047266392679028265834"),
    ("0.7415311855993944398638648", "0.1406532597155259187451896"),
    ("0.8648644233597690727897128", "0.1047900103222501838398763"),
    ("0.9491079123427585245261897", "0.06309209262997855329070066"),
    ("0.9914553711208126392068547", "0.02293532201052922496373201"),
]
# Gauss-7 nonnegative nodes and weights.
_GAUSS = [
    ("0.0", "0.417959183673469387755102"),
    ("0.4058451513773971669066064", "0.3818300505051189449503698"),
    ("0.7415311855993944398638648", "0.2797053914892766679014678"),
    ("0.9491079123427585245261897", "0.1294849661688696932706114"),
]


def _expand(pairs):
    xs, ws = [], []
    for x, w in pairs:
        xs.append(float(x))
        ws.append(float(w))
    nodes = np.array([-x for x in xs[:0:-1]] + xs)
    weights = np.array(ws[:0:-1] + ws)
    return nodes, weights


_XK, _WK = _expand(_KRONROD)            # 15 nodes on [-1, 1]
_XG_nonneg, _WG_nonneg = _expand(_GAUSS)  # expanded to 7 below
_XG, _WG = _XG_nonneg, _WG_nonneg
# Gauss nodes sit at Kronrod positions 1, 3, ..., 13
_G_IN_K = np.array([1, 3, 5, 7, 9, 11, 13])
assert np.allclose(_XK[_G_IN_K], _XG, rtol=0, atol=1e-24)


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and limits for adaptive integration."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_intervals: int = 2000
    rule: tuple[int, int] = (7, 15)

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.rel_tol >= 0:
            raise ValueError("rel_tol must be non-negative")
        if not self.max_intervals >= 1:
            raise ValueError("max_intervals must be >= 1")
        if tuple(self.rule) != (7, 15):
            raise ValueError("only the Gauss-7/Kronrod-15 rule is embedded")


@dataclass(frozen=True)
class QuadResult:
    """Value, error estimate and bookkeeping of one integration."""

    value: complex
    err_estimate: float
    intervals_used: int
    converged: bool

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value,
                          self.err_estimate + other.err_estimate,
                          self.intervals_used + other.intervals_used,
                          self.converged and other.converged)


def _apply_rule(f, lo: float, hi: float):
    """One GK15 application: (kronrod value, error estimate)."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid + half * _XK
    y = np.asarray(f(x), dtype=complex)
    if y.shape != x.shape:
        raise ValueError("integrand must return one value per abscissa")
    bad = ~np.isfinite(y.real) | ~np.isfinite(y.imag)
    if np.any(bad):
        raise NonFiniteIntegrand(float(x[np.argmax(bad)]))
    k = half * np.sum(_WK * y)
    g = half * np.sum(_WG * y[_G_IN_K])
    d = k - g
    err = math.hypot(abs(d.real), abs(d.imag))
    return complex(k), err


def integrate(f, lo: float, hi: float,
              settings: QuadratureSettings | None = None) -> QuadResult:
    """Adaptively integrate f over [lo, hi].

    ``f`` maps an ndarray of abscissae to an equal-shaped array of complex
    values.  The worst interval (by error estimate) is bisected until the
    summed estimate meets max(abs_tol, rel_tol*|value|) or the interval
    budget runs out, in which case the best value is returned with
    ``converged=False``.

    Raises
    ------
    NonFiniteIntegrand
        If f produces NaN/Inf anywhere; carries the offending abscissa.
    """
    if settings is None:
        settings = QuadratureSettings()
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    val, err = _apply_rule(f, lo, hi)
    heap = [(-err, lo, hi, val, err)]
    count = 1
    total_val, total_err = val, err
    while count < settings.max_intervals:
        if total_err <= max(settings.abs_tol,
                            settings.rel_tol * abs(total_val)):
            return QuadResult(total_val, total_err, count, True)
        neg_err, a, b, v, e = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:        # interval at rounding floor
            heapq.heappush(heap, (0.0, a, b, v, e))
            total_err = sum(item[4] for item in heap)
            if all(item[0] == 0.0 for item in heap):
                break
            continue
        v1, e1 = _apply_rule(f, a, mid)
        v2, e2 = _apply_rule(f, mid, b)
        total_val += (v1 + v2) - v
        total_err += (e1 + e2) - e
        heapq.heappush(heap, (-e1, a, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, b, v2, e2))
        count += 1
    converged = total_err <= max(settings.abs_tol,
                                 settings.rel_tol * abs(total_val))
    return QuadResult(total_val, total_err, count, converged)


def integrate_path(path, g, settings: QuadratureSettings | None = None) -> QuadResult:
    """Integrate g(s) ds along a built steepest descent path.

    For the closed ellipse this is the full counter-clockwise loop; for the
    open pair the two branch integrals are summed in ascending-ordinate
    orientation (lower branch from its outer tail up, then the upper
    branch), which absorbs the (-1)^k bookkeeping of the split form.
    ``g`` maps complex path points to complex values (array in, array out).
    """
    if settings is None:
        settings = QuadratureSettings()
    total = QuadResult(0j, 0.0, 0, True)
    if path.is_closed:
        def f(u):
            s, ds, _ = path.evaluate(u)
            return np.asarray(g(s), dtype=complex) * ds

        for lo, hi in path.segments(half=False):
            total = total + integrate(f, lo, hi, settings)
        return total
    for br in path.branches:
        lo, hi = br.clipped_interval(AUDIT_DROP_FOR_PATH)

        def f(u, _br=br):
            s, ds, _ = _br.evaluate(u)
            return np.asarray(g(s), dtype=complex) * ds

        for a, b in zip(br.seed_breakpoints(lo, hi)[:-1],
                        br.seed_breakpoints(lo, hi)[1:]):
            total = total + integrate(f, a, b, settings)
    return total


# matches geometry.AUDIT_DROP without importing it (avoids a cycle)
AUDIT_DROP_FOR_PATH = -math.log(1e-16)


def rule_self_check():
    """Assert embedded constants integrate monomials exactly.

    Gauss-7 must be exact through degree 13 and Kronrod-15 through degree
    22 on [-1, 1]; failure means the tables were corrupted.
    """
    for j in range(23):
        exact = 2.0 / (j + 1) if j % 2 == 0 else 0.0
        k = float(np.sum(_WK * _XK**j))
        if abs(k - exact) > 1e-14 * (1 + abs(exact)):
            raise AssertionError(f"Kronrod-15 fails on x^{j}: {k} vs {exact}")
        if j < 14:
            g = float(np.sum(_WG * _XG**j))
            if abs(g - exact) > 1e-14 * (1 + abs(exact)):
                raise AssertionError(f"Gauss-7 fails on x^{j}: {g} vs {exact}")
    return True


rule_self_check()
