"""Independent oracles shared by the test modules.

Everything here is deliberately primitive: exact rational arithmetic,
brute-force sums, textbook formulas.  These are the reference routes the
library implementations are judged against, so they must not share code
with the package.
"""

import math
from fractions import Fraction

import numpy as np


def bessel_series_exact(nu: int, z: float, signed: bool, terms: int = 200) -> float:
    """Ascending Bessel series in exact rational arithmetic.

    Returns J_nu(z) for signed=True, I_nu(z) otherwise.  ``z`` is taken at
    its exact binary-float value; the 200-term tail is below 1e-60 for
    z <= 40, so the only rounding is the final conversion to float.
    """
    zq = Fraction(z)
    q = zq * zq / 4
    term = Fraction(1, math.factorial(nu))
    acc = term
    for k in range(1, terms + 1):
        term = term * q / (k * (k + nu))
        acc += -term if (signed and k % 2 == 1) else term
    return float(acc * (zq / 2) ** nu)


def j0_exact(z):
    return bessel_series_exact(0, z, signed=True)


def j1_exact(z):
    return bessel_series_exact(1, z, signed=True)


def i0_exact(z):
    return bessel_series_exact(0, z, signed=False)


def i1_exact(z):
    return bessel_series_exact(1, z, signed=False)


def exact_smooth_delta(m, x, t) -> float:
    """Closed-form smooth part of the impulse response, series-oracle route."""
    if t * m.c < x:
        return 0.0
    tau = math.sqrt(t * t - (x / m.c) ** 2)
    if m.delta > 0:
        w = math.sqrt(m.delta) * tau
        jz = 0.5 if w == 0 else j1_exact(w) / w
        return -(x / m.c) * m.delta * math.exp(-m.a * t / 2) * jz
    if m.delta < 0:
        w = math.sqrt(-m.delta) * tau
        iz = 0.5 if w == 0 else i1_exact(w) / w
        return (x / m.c) * (-m.delta) * math.exp(-m.a * t / 2) * iz
    return 0.0


def exact_smooth_n(m, x, t) -> float:
    """Closed-form second response, series-oracle route."""
    if t * m.c < x:
        return 0.0
    tau = math.sqrt(t * t - (x / m.c) ** 2)
    if m.delta > 0:
        return math.exp(-m.a * t / 2) * j0_exact(math.sqrt(m.delta) * tau)
    if m.delta < 0:
        return math.exp(-m.a * t / 2) * i0_exact(math.sqrt(-m.delta) * tau)
    return math.exp(-m.a * t / 2)


def riemann_convolution(pulse_fn, resp_fn, lo: float, t: float, n: int = 10_000) -> float:
    """Midpoint-rule convolution integral of pulse(t - u) * resp(u) on [lo, t]."""
    u = lo + (np.arange(n) + 0.5) * (t - lo) / n
    vals = np.array([pulse_fn(t - ui) * resp_fn(ui) for ui in u])
    return float(vals.sum() * (t - lo) / n)


def bisect_root(f, lo: float, hi: float, iters: int = 200) -> float:
    """Plain bisection for a sign change of f on [lo, hi]."""
    flo = f(lo)
    assert flo * f(hi) < 0, "no sign change on the bracket"
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if flo * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
            flo = f(lo)
    return 0.5 * (lo + hi)
