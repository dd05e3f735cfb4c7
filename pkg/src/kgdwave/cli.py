"""Command-line front end: response sweeps, path dumps, convolution, selftest.

Commands
--------
solve     compute a response curve over an x- or t-grid and write CSV
path      dump the audited steepest-descent path geometry for one mu
convolve  convolve the response with a built-in or tabulated pulse
selftest  run the embedded quadrature/Bessel/branch self-checks

Exit codes: 0 success, 2 configuration error, 3 at least one sample failed
to converge (the file is still written, with a diagnostic footer).

All numeric output uses 17 significant digits and '\n' line endings, and a
commented header echoes the effective configuration, so identical
configurations reproduce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import oracle, quadrature
from .errors import KgdError
from .geometry import build_path
from .inversion import (
    CallablePulse,
    DiracDelta,
    Kind,
    Method,
    TabulatedPulse,
    UnitStep,
    convolve,
    response_sdp,
)
from .medium import EPS_FRONT, MediumParams, Regime, branch_sqrt
from .quadrature import QuadratureSettings

_FMT = "{:.17g}"


def _fmt(v: float) -> str:
    return _FMT.format(float(v))


def _num(text: str) -> float:
    """Parse a number, accepting fractions like 5/4."""
    try:
        return float(text)
    except ValueError:
        return float(Fraction(text))


def _grid(text: str) -> np.ndarray:
    """Parse lo:hi:count into an inclusive linspace."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be lo:hi:count, got {text!r}")
    lo, hi = _num(parts[0]), _num(parts[1])
    count = int(parts[2])
    if count < 2:
        raise ValueError(f"grid resolution must be >= 2, got {count}")
    if not hi > lo:
        raise ValueError(f"grid needs hi > lo, got {text!r}")
    return np.linspace(lo, hi, count)


_DEFAULTS = {
    "kind": "delta",
    "mode": "sdp-half",
    "abs_tol": 1e-10,
    "rel_tol": 1e-10,
    "out": "-",
    "pulse": "delta",
}

_CONFIG_KEYS = ("a", "b", "c", "kind", "mode", "t", "x", "x_grid", "t_grid",
                "abs_tol", "rel_tol", "out", "pulse", "mu")


class ConfigError(Exception):
    pass


def _merge_config(args: argparse.Namespace) -> dict:
    """Built-in defaults < config file < command-line flags."""
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}")
        for key, val in raw.items():
            cfg[key.replace("-", "_")] = val
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _medium(cfg: dict) -> MediumParams:
    for key in ("a", "b", "c"):
        if key not in cfg:
            raise ConfigError(f"missing medium parameter --{key}")
    try:
        return MediumParams(_as_float(cfg["a"]), _as_float(cfg["b"]),
                            _as_float(cfg["c"]))
    except ValueError as exc:
        raise ConfigError(str(exc))


def _as_float(v) -> float:
    return _num(v) if isinstance(v, str) else float(v)


def _settings(cfg: dict) -> QuadratureSettings:
    try:
        return QuadratureSettings(abs_tol=_as_float(cfg["abs_tol"]),
                                  rel_tol=_as_float(cfg["rel_tol"]))
    except ValueError as exc:
        raise ConfigError(str(exc))


def _sweep(cfg: dict, m: MediumParams, front_margin: float = EPS_FRONT):
    """Resolve the sweep into a list of (x, t) pairs in sweep order."""
    has_x_grid = cfg.get("x_grid") is not None
    has_t_grid = cfg.get("t_grid") is not None
    if has_x_grid == has_t_grid:
        raise ConfigError("specify exactly one of --x-grid (with --t) "
                          "or --t-grid (with --x)")
    if has_x_grid:
        if cfg.get("t") is None:
            raise ConfigError("--x-grid requires a fixed --t")
        t = _as_float(cfg["t"])
        if not t > 0:
            raise ConfigError(f"need t > 0, got {t}")
        xs = _grid(cfg["x_grid"]) if isinstance(cfg["x_grid"], str) \
            else np.asarray(cfg["x_grid"], dtype=float)
        if xs[0] < 0 or xs[-1] > m.c * t:
            raise ConfigError(
                f"x-grid must stay inside 0 <= x <= c*t = {m.c * t}")
        # the wavefront endpoint is pulled strictly inside the cone
        xs = np.minimum(xs, m.c * t * (1.0 - front_margin - 1e-9))
        return [(float(x), t) for x in xs]
    if cfg.get("x") is None:
        raise ConfigError("--t-grid requires a fixed --x")
    x = _as_float(cfg["x"])
    if x < 0:
        raise ConfigError(f"need x >= 0, got {x}")
    ts = _grid(cfg["t_grid"]) if isinstance(cfg["t_grid"], str) \
        else np.asarray(cfg["t_grid"], dtype=float)
    if ts[0] <= 0 or (x > 0 and ts[0] < x / m.c):
        raise ConfigError(f"t-grid must stay inside t >= x/c = {x / m.c}")
    if x > 0:
        ts = np.maximum(ts, x / (m.c * (1.0 - front_margin - 1e-9)))
    return [(x, float(t)) for t in ts]


def _config_header(cfg: dict, command: str) -> list[str]:
    lines = [f"# kgdwave {command}"]
    for key in sorted(cfg):
        val = cfg[key]
        if isinstance(val, float):
            val = _fmt(val)
        lines.append(f"# {key} = {val}")
    return lines


def _write(out: str, lines: list[str]):
    text = "\n".join(lines) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _eval_sample(m, kind, mode, x, t, settings):
    """One (value row, converged flag) for the requested mode."""
    if mode in ("sdp-half", "sdp-full"):
        r = response_sdp(m, kind, x, t, settings, use_half=(mode == "sdp-half"))
        return r, r.converged
    if mode == "exact":
        fn = oracle.exact_r_delta if kind is Kind.Delta else oracle.exact_r_n
        val = fn(m, x, t).smooth_part
        from .inversion import ResponseSample
        return ResponseSample(x, t, val, 0.0, 0.0, Method.Exact), True
    if mode == "talbot":
        nodes = oracle.recommended_talbot_nodes(m, t)
        val = oracle.talbot_invert(oracle.laplace_transform(m, x, kind.value),
                                   t, nodes)
        from .inversion import ResponseSample
        return ResponseSample(x, t, val, 0.0, 0.0, Method.Talbot), True
    raise ConfigError(f"unknown mode {mode!r}")


def cmd_solve(cfg: dict) -> int:
    m = _medium(cfg)
    settings = _settings(cfg)
    kind = Kind(cfg["kind"])
    mode = cfg["mode"]
    if mode not in ("sdp-half", "sdp-full", "exact", "talbot", "compare"):
        raise ConfigError(f"unknown mode {mode!r}")
    pairs = _sweep(cfg, m)
    lines = _config_header(cfg, "solve")
    if mode == "compare":
        lines.append("x,t,value,err_estimate,imag_residual,method,exact,abs_diff")
    else:
        lines.append("x,t,value,err_estimate,imag_residual,method")
    if kind is Kind.Delta:
        lines.insert(1, "# wavefront: the impulse response additionally "
                        "carries exp(-a*x/(2*c))*delta(t - x/c), not "
                        "included in the smooth values below")
    bad = 0
    for x, t in pairs:
        if mode == "compare":
            r, ok = _eval_sample(m, kind, "sdp-half", x, t, settings)
            fn = oracle.exact_r_delta if kind is Kind.Delta else oracle.exact_r_n
            exact = fn(m, x, t).smooth_part
            row = [_fmt(x), _fmt(t), _fmt(r.value), _fmt(r.err_estimate),
                   _fmt(r.imag_residual), r.method.value, _fmt(exact),
                   _fmt(abs(r.value - exact))]
        else:
            r, ok = _eval_sample(m, kind, mode, x, t, settings)
            row = [_fmt(x), _fmt(t), _fmt(r.value), _fmt(r.err_estimate),
                   _fmt(r.imag_residual), r.method.value]
        bad += 0 if ok else 1
        lines.append(",".join(row))
    if bad:
        lines.append(f"# WARNING: {bad} sample(s) did not converge")
    _write(cfg["out"], lines)
    return 3 if bad else 0


def cmd_path(cfg: dict) -> int:
    m = _medium(cfg)
    if cfg.get("mu") is None:
        raise ConfigError("path requires --mu")
    mu = _as_float(cfg["mu"])
    if not 0.0 < mu < 1.0 - EPS_FRONT:
        raise ConfigError(f"mu must lie in (0, {1 - EPS_FRONT}), got {mu}")
    if m.regime is Regime.ZeroDelta:
        raise ConfigError("the degenerate medium (delta = 0) has no SDP")
    try:
        path = build_path(m, mu)
    except KgdError as exc:
        raise ConfigError(str(exc))
    lines = _config_header(cfg, "path")
    lines.append("u,re_s,im_s,re_F,im_F")
    audit = path.audit
    for u, s, F in zip(audit.u, audit.s, audit.F):
        lines.append(",".join([_fmt(u), _fmt(s.real), _fmt(s.imag),
                               _fmt(F.real), _fmt(F.imag)]))
    sad = path.saddles
    lines.append("# section: geometry")
    lines.append(f"# regime = {m.regime.name}")
    lines.append(f"# delta = {_fmt(m.delta)}")
    for name, z in (("p1", sad.p1), ("p2", sad.p2), ("b1", path.b1),
                    ("b2", path.b2), ("phi1", sad.phi1), ("phi2", sad.phi2)):
        lines.append(f"# {name} = {_fmt(z.real)} {_fmt(z.imag)}")
    lines.append(f"# omega1 = {_fmt(sad.omega1)}")
    lines.append(f"# omega2 = {_fmt(sad.omega2)}")
    if path.is_closed:
        lines.append(f"# alpha = {_fmt(path.alpha)}")
        lines.append(f"# beta = {_fmt(path.beta)}")
    else:
        lines.append(f"# u_minus = {_fmt(path.u_minus)}")
        lines.append(f"# u_plus = {_fmt(path.u_plus)}")
        lines.append(f"# u_s = {_fmt(path.u_s)}")
    lines.append(f"# max_imf_residual = {_fmt(audit.max_imf_residual)}")
    lines.append(f"# saddle_residuals = {_fmt(audit.saddle_residuals[0])} "
                 f"{_fmt(audit.saddle_residuals[1])}")
    lines.append(f"# descent_ok = {audit.descent_ok}")
    _write(cfg["out"], lines)
    return 0


def _load_pulse(spec: str):
    if spec == "delta":
        return DiracDelta()
    if spec == "step":
        return UnitStep()
    try:
        rows = []
        with open(spec) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split(",")
                if len(parts) != 2:
                    raise ConfigError(
                        f"pulse file must have two columns, got {line!r}")
                rows.append((float(parts[0]), float(parts[1])))
    except OSError as exc:
        raise ConfigError(f"cannot read pulse file: {exc}")
    except ValueError as exc:
        raise ConfigError(f"malformed pulse file: {exc}")
    if not rows:
        raise ConfigError("pulse file is empty")
    times, values = zip(*rows)
    try:
        return TabulatedPulse(np.array(times), np.array(values))
    except KgdError as exc:
        raise ConfigError(str(exc))


def cmd_convolve(cfg: dict) -> int:
    m = _medium(cfg)
    settings = _settings(cfg)
    kind = Kind(cfg["kind"])
    pulse = _load_pulse(cfg["pulse"])
    pairs = _sweep(cfg, m)
    lines = _config_header(cfg, "convolve")
    lines.append("x,t,value,err_estimate,imag_residual,method")
    for x, t in pairs:
        val = convolve(m, pulse, kind, x, t)
        lines.append(",".join([_fmt(x), _fmt(t), _fmt(val), _fmt(0.0),
                               _fmt(0.0), Method.SdpHalf.value]))
    _write(cfg["out"], lines)
    return 0


def cmd_selftest(_cfg: dict) -> int:
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception as exc:       # noqa: BLE001 - report, don't crash
            checks.append((name, False, str(exc)))
            return
        checks.append((name, ok, ""))

    check("quadrature rule exactness", quadrature.rule_self_check)
    check("bessel series constants", lambda: (
        oracle.bessel_j0(0.0) == 1.0 and oracle.bessel_j1(0.0) == 0.0
        and oracle.bessel_i0(0.0) == 1.0 and oracle.bessel_i1(0.0) == 0.0))
    check("bessel first zero of J0", lambda: (
        abs(oracle.bessel_j0(2.404825557695773)) < 1e-12))
    m_neg = MediumParams(1.0, 0.0, 1.0)
    m_pos = MediumParams(1.0, 1.25, 1.0)
    check("branch asymptotics", lambda: (
        abs(branch_sqrt(m_neg, 1e6 + 0j) - (1e6 + 0.5)) < 1e-3
        and abs(branch_sqrt(m_pos, 1e6 + 0j) - (1e6 + 0.5)) < 1e-3))
    check("talbot ramp", lambda: (
        abs(oracle.talbot_invert(lambda s: 1 / s**2, 2.5) - 2.5) < 1e-8))
    failed = [name for name, ok, _ in checks if not ok]
    for name, ok, msg in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({msg})" if msg else ""))
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgdwave",
        description="Transient responses of damped Klein-Gordon media via "
                    "steepest-descent Laplace inversion")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--a", type=_num, help="damping coefficient")
        p.add_argument("--b", type=_num, help="restoring coefficient")
        p.add_argument("--c", type=_num, help="wavefront speed")
        p.add_argument("--config", help="JSON config file (flags override)")
        p.add_argument("--out", help="output CSV path ('-' for stdout)")

    p_solve = sub.add_parser("solve", help="compute a response curve")
    common(p_solve)
    p_solve.add_argument("--kind", choices=["delta", "n"])
    p_solve.add_argument("--mode", choices=["sdp-half", "sdp-full", "exact",
                                            "talbot", "compare"])
    p_solve.add_argument("--t", type=_num, help="fixed time for --x-grid")
    p_solve.add_argument("--x", type=_num, help="fixed position for --t-grid")
    p_solve.add_argument("--x-grid", dest="x_grid", help="lo:hi:count")
    p_solve.add_argument("--t-grid", dest="t_grid", help="lo:hi:count")
    p_solve.add_argument("--abs-tol", dest="abs_tol", type=_num)
    p_solve.add_argument("--rel-tol", dest="rel_tol", type=_num)

    p_path = sub.add_parser("path", help="dump the SDP geometry for one mu")
    common(p_path)
    p_path.add_argument("--mu", type=_num, help="similarity parameter x/(c t)")

    p_conv = sub.add_parser("convolve", help="convolve with an input pulse")
    common(p_conv)
    p_conv.add_argument("--kind", choices=["delta", "n"])
    p_conv.add_argument("--pulse", help="'delta', 'step' or a time,value CSV")
    p_conv.add_argument("--t", type=_num)
    p_conv.add_argument("--x", type=_num)
    p_conv.add_argument("--x-grid", dest="x_grid")
    p_conv.add_argument("--t-grid", dest="t_grid")
    p_conv.add_argument("--abs-tol", dest="abs_tol", type=_num)
    p_conv.add_argument("--rel-tol", dest="rel_tol", type=_num)

    sub.add_parser("selftest", help="run embedded self-checks")
    return parser


_COMMANDS = {
    "solve": cmd_solve,
    "path": cmd_path,
    "convolve": cmd_convolve,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KgdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
