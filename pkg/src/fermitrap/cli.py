"""Command-line front end: ``fermitrap <command> --n N [options]``.

Every command samples one observable (or runs one analysis) and writes a
table as CSV or JSON.  Computation happens in dimensionless units; only the
emitted axes are rescaled by ``--alpha`` or, with ``--omega-hz`` and
``--mass-amu``, converted to SI.

Exit codes: 0 success, 2 usage error, 3 numerical or domain failure,
4 a requested diagnostic (hump, spectral peak, envelope fit) was not found.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np
from scipy import constants

from . import __version__, analysis, density, expansion, momentum, spectral
from .exceptions import FermiTrapError, InsufficientDataError
from .model import fermi_root
from .validation import check_alpha, check_grid, check_particle_number, check_time

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_NOT_FOUND = 4

COMMANDS = ("density", "fourier", "momentum", "expand", "extrema", "envelope", "friedel")
EXPAND_METHODS = ("closed-form", "numeric")
DEFAULT_POINTS = {"density": 401, "fourier": spectral.DEFAULT_K_POINTS, "momentum": 401, "expand": 401}
AUTO_SPAN = 1.2


class UsageError(Exception):
    pass


class DiagnosticNotFound(Exception):
    """Raised after the data is assembled; the emission is still written."""

    def __init__(self, message, emission):
        super().__init__(message)
        self.emission = emission


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    alpha: float = 1.0
    grid_min: float | None = None
    grid_max: float | None = None
    points: int | None = None
    method: str | None = None
    quantity: str = "density"
    t: float = 0.0
    fmt: str = "csv"
    output: str | None = None
    omega_hz: float | None = None
    mass_amu: float | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        try:
            check_particle_number(self.n, "--n")
            check_alpha(self.alpha)
            check_time(self.t)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if self.points is not None and self.points < 2:
            raise UsageError("--points must be >= 2")
        if (self.grid_min is None) != (self.grid_max is None):
            raise UsageError("--min and --max must be given together")
        if self.grid_min is not None and not self.grid_min < self.grid_max:
            raise UsageError("--min must be smaller than --max")
        if self.fmt not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        if self.mass_amu is not None and self.omega_hz is None:
            raise UsageError("--mass-amu needs --omega-hz")
        for name in ("omega_hz", "mass_amu"):
            val = getattr(self, name)
            if val is not None and not (val > 0 and math.isfinite(val)):
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.mass_amu is not None and self.alpha != 1.0:
            raise UsageError("--alpha cannot be combined with --mass-amu (alpha follows from the SI values)")
        allowed = {
            "density": tuple(density.METHODS),
            "fourier": tuple(spectral.METHODS),
            "expand": EXPAND_METHODS,
        }
        if self.method is not None:
            if self.command not in allowed:
                raise UsageError(f"command {self.command!r} takes no --method")
            if self.method not in allowed[self.command]:
                raise UsageError(f"--method for {self.command} must be one of {', '.join(allowed[self.command])}")
        if self.quantity not in ("density", "correlator", "step"):
            raise UsageError("--quantity must be density, correlator or step")

    @property
    def length_scale(self):
        """alpha in the emitted units: 1/m with SI flags, else ``--alpha``."""
        if self.mass_amu is not None:
            mass = self.mass_amu * constants.atomic_mass
            omega = 2.0 * math.pi * self.omega_hz
            return math.sqrt(mass * omega / constants.hbar)
        return self.alpha

    @property
    def reduced_time(self):
        """``omega t``; ``--t`` is in seconds when ``--omega-hz`` is given."""
        if self.omega_hz is not None:
            return 2.0 * math.pi * self.omega_hz * self.t
        return self.t


@dataclass
class Emission:
    grid: np.ndarray
    columns: dict  # name -> array; the first entry is the primary value column
    meta: dict


def _axis(cfg, lo, hi, to_dimless):
    """Dimensionless sample points: ``[lo, hi]`` by default, else the user's
    physical ``--min/--max`` times ``to_dimless``."""
    points = cfg.points or DEFAULT_POINTS.get(cfg.command, 401)
    if cfg.grid_min is not None:
        return check_grid(cfg.grid_min, cfg.grid_max, points) * to_dimless
    return check_grid(lo, hi, points)


def _base_meta(cfg, method):
    echo = {k: v for k, v in asdict(cfg).items() if v is not None}
    meta = {
        "tool": "fermitrap",
        "version": __version__,
        "command": cfg.command,
        "N": cfg.n,
        "alpha": cfg.length_scale,
        "method": method,
        "config": echo,
    }
    if cfg.mass_amu is not None:
        meta["length_unit"] = "m"
    elif cfg.omega_hz is not None:
        meta["time_unit"] = "s"
    return meta


def _positions(cfg, lo, hi):
    return _axis(cfg, lo, hi, cfg.length_scale)


def cmd_density(cfg):
    n, a = cfg.n, cfg.length_scale
    method = cfg.method or "exact"
    root = fermi_root(n)
    window = density.method_window(method, n)
    if method == "edge":
        lo, hi = window
    elif window is not None:
        lo, hi = -window[1], window[1]
    else:
        lo, hi = -AUTO_SPAN * root, AUTO_SPAN * root
    x = _positions(cfg, lo, hi)
    if window is not None:
        ax = np.abs(x)
        if np.any(ax > window[1] * (1 + 1e-12)) or (method == "edge" and np.any(ax < window[0] - 1e-12)):
            raise UsageError(f"grid leaves the validity window of method {method!r}: |x| in [{window[0]:.6g}, {window[1]:.6g}]/alpha")
    columns = {"value": a * np.asarray(density.METHODS[method](x, n), dtype=float)}
    if method != "exact":
        columns["exact"] = a * np.asarray(density.density_exact(x, n))
    meta = _base_meta(cfg, method)
    meta["domain"] = "position"
    return Emission(x / a, columns, meta)


def cmd_fourier(cfg):
    n, a = cfg.n, cfg.length_scale
    root = fermi_root(n)
    k = _axis(cfg, 0.0, spectral.DEFAULT_K_SPAN * root, 1.0 / a)
    exact = np.asarray(spectral.ft_exact(k, n))
    semi = np.asarray(spectral.ft_semiclassical(k, n))
    method = cfg.method or "exact"
    if method == "exact":
        columns = {"value": exact, "semiclassical": semi, "difference": exact - semi}
    else:
        columns = {"value": semi, "exact": exact, "difference": exact - semi}
    meta = _base_meta(cfg, method)
    meta["domain"] = "wavenumber"
    meta["ft_zero_exact"] = spectral.ft_exact(0.0, n)
    meta["ft_zero_semiclassical"] = spectral.ft_semiclassical(0.0, n)
    meta["two_k_fermi"] = 2.0 * root * a
    meta["sum_rule_exact"] = spectral.ft_sum_rule(n, "exact") * a
    meta["sum_rule_semiclassical"] = spectral.ft_sum_rule(n, "semiclassical") * a
    emission = Emission(k * a, columns, meta)
    if n >= 10:
        k_hump, ratio = spectral.hump_locate(n)
        meta["k_hump"] = k_hump * a
        meta["hump_height_ratio"] = ratio
        if math.isnan(k_hump):
            raise DiagnosticNotFound("no Friedel hump found in (k_F, 2.5 k_F)", emission)
    return emission


def cmd_momentum(cfg):
    n, a = cfg.n, cfg.length_scale
    root = fermi_root(n)
    meta = _base_meta(cfg, cfg.quantity)
    if cfg.quantity == "step":
        levels = np.arange(max(2 * n, cfg.points or 0))
        k = a * np.sqrt(2.0 * levels + 1.0)
        if cfg.grid_min is not None:
            k = k[(k >= cfg.grid_min) & (k <= cfg.grid_max)]
            if k.size == 0:
                raise UsageError("no oscillator wavenumber k_n inside [--min, --max]")
        meta["domain"] = "wavenumber"
        return Emission(k, {"value": np.asarray(momentum.momentum_step(k, n, a), dtype=float)}, meta)
    if cfg.quantity == "density":
        phys = a * _axis(cfg, -AUTO_SPAN * root, AUTO_SPAN * root, 1.0 / a)
        meta["domain"] = "wavenumber"
        return Emission(phys, {"value": np.asarray(momentum.momentum_density(phys, n, a))}, meta)
    x = _positions(cfg, -AUTO_SPAN * root, AUTO_SPAN * root)
    columns = {"value": a * np.asarray(momentum.correlator_centered(x, n))}
    if n >= momentum.ASYMPTOTIC_MIN_N:
        columns["asymptotic"] = a * np.asarray(momentum.correlator_asymptotic(x, n))
    meta["domain"] = "position"
    return Emission(x / a, columns, meta)


def cmd_expand(cfg):
    n, a = cfg.n, cfg.length_scale
    t = cfg.reduced_time
    b = expansion.scale_factor(t)
    method = cfg.method or "closed-form"
    reach = AUTO_SPAN * fermi_root(n) * b
    x = _positions(cfg, -reach, reach)
    closed = np.asarray(expansion.density_expanded(x, t, n))
    meta = _base_meta(cfg, method)
    meta.update(domain="position", t=t, b=b)
    if method == "numeric":
        prof = expansion.propagate_numeric(x, t, n)
        meta["oracle_error_estimate"] = prof.meta["error_estimate"]
        columns = {"value": a * prof.values, "closed_form": a * closed}
    else:
        columns = {"value": a * closed}
    return Emission(x / a, columns, meta)


def cmd_extrema(cfg):
    n, a = cfg.n, cfg.length_scale
    rep = analysis.find_extrema(n)
    pos = np.concatenate([rep.max_positions, rep.min_positions])
    height = np.concatenate([rep.maxima[:, 1], rep.minima[:, 1]])
    kind = np.concatenate([np.ones(rep.maxima.shape[0]), np.zeros(rep.minima.shape[0])])
    order = np.argsort(pos)
    meta = _base_meta(cfg, "exact")
    meta.update(domain="position", n_maxima=int(rep.maxima.shape[0]), n_minima=int(rep.minima.shape[0]))
    return Emission(pos[order] / a, {"value": a * height[order], "is_maximum": kind[order]}, meta)


def cmd_envelope(cfg):
    n, a = cfg.n, cfg.length_scale
    fit = analysis.envelope_fit(n)
    pos, amp = fit.samples[:, 0], fit.samples[:, 1]
    meta = _base_meta(cfg, "exact")
    meta.update(
        domain="position",
        delta=fit.delta,
        residual=fit.residual,
        prefactor=fit.prefactor * a,
        fit_window_min=fit.fit_window[0] / a,
        fit_window_max=fit.fit_window[1] / a,
        n_points=fit.n_points,
    )
    return Emission(pos / a, {"value": a * amp}, meta)


def cmd_friedel(cfg):
    n, a = cfg.n, cfg.length_scale
    peak = analysis.friedel_peak(n)
    meta = _base_meta(cfg, "exact")
    meta.update(
        domain="wavenumber",
        k_peak=peak.k_peak * a,
        two_k_fermi=2.0 * fermi_root(n) * a,
        bin_width=peak.bin_width * a,
        phase_sign=peak.phase_sign,
        expected_phase_sign=-1 if n % 2 == 0 else 1,
    )
    emission = Emission(peak.k_grid * a, {"value": peak.spectrum}, meta)
    if math.isnan(peak.k_peak):
        raise DiagnosticNotFound("no clear spectral peak in the central density", emission)
    return emission


HANDLERS = {
    "density": cmd_density,
    "fourier": cmd_fourier,
    "momentum": cmd_momentum,
    "expand": cmd_expand,
    "extrema": cmd_extrema,
    "envelope": cmd_envelope,
    "friedel": cmd_friedel,
}


def _num(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _json_value(v):
    if isinstance(v, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_json_value(v[k])}" for k in sorted(v))
        return "{" + items + "}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, str):
        return json.dumps(v)
    if v is None:
        return "null"
    if isinstance(v, (float, np.floating)) and not math.isfinite(v):
        return "null"
    return _num(v)


def format_json(em):
    extra = {k: v for k, v in list(em.columns.items())[1:]}
    doc = {"grid": em.grid, "values": em.columns["value"], "extra": extra, "meta": em.meta}
    return _json_value(doc) + "\n"


def format_csv(em):
    lines = []
    for key in sorted(em.meta):
        val = em.meta[key]
        text = _json_value(val) if isinstance(val, dict) else (val if isinstance(val, str) else _num(val))
        lines.append(f"# {key}: {text}")
    names = list(em.columns)
    lines.append(",".join(["x"] + names))
    cols = [em.columns[n] for n in names]
    for i, g in enumerate(em.grid):
        lines.append(",".join([_num(g)] + [_num(c[i]) for c in cols]))
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fermitrap",
        description="Observables of N ideal fermions in a 1D harmonic trap.",
    )
    parser.add_argument("--version", action="version", version=f"fermitrap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=True):
        p.add_argument("--n", type=int, required=True, help="particle number N")
        p.add_argument("--alpha", type=float, default=1.0, help="inverse oscillator length (default 1)")
        if grid:
            p.add_argument("--min", dest="grid_min", type=float, help="grid start (physical units)")
            p.add_argument("--max", dest="grid_max", type=float, help="grid end (physical units)")
            p.add_argument("--points", type=int, help="number of grid points")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--omega-hz", type=float, help="trap frequency in Hz; --t is then in seconds")
        p.add_argument("--mass-amu", type=float, help="particle mass in u; axes are then in SI units")

    p = sub.add_parser("density", help="position density profile")
    common(p)
    p.add_argument("--method", choices=tuple(density.METHODS), default=None)

    p = sub.add_parser("fourier", help="Fourier-transformed density with sum rules and hump")
    common(p)
    p.add_argument("--method", choices=tuple(spectral.METHODS), default=None)

    p = sub.add_parser("momentum", help="momentum density, occupation step or correlator")
    common(p)
    p.add_argument("--quantity", choices=("density", "correlator", "step"), default="density")

    p = sub.add_parser("expand", help="density after free expansion for time t")
    common(p)
    p.add_argument("--t", type=float, default=0.0, help="time in 1/omega (seconds with --omega-hz)")
    p.add_argument("--method", choices=EXPAND_METHODS, default=None)

    for name, text in (
        ("extrema", "positions and heights of all maxima and minima"),
        ("envelope", "fit of the oscillation envelope exponent"),
        ("friedel", "central Friedel wavenumber from a spectral peak"),
    ):
        common(sub.add_parser(name, help=text), grid=False)
    return parser


def _config(args):
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    return RunConfig(**fields)


def run(cfg):
    """Execute a configuration; returns ``(emission, exit_code, message)``."""
    try:
        return HANDLERS[cfg.command](cfg), EXIT_OK, None
    except DiagnosticNotFound as exc:
        return exc.emission, EXIT_NOT_FOUND, str(exc)
    except InsufficientDataError as exc:
        return None, EXIT_NOT_FOUND, str(exc)
    except UsageError as exc:
        return None, EXIT_USAGE, str(exc)
    except FermiTrapError as exc:
        return None, EXIT_NUMERIC, f"{type(exc).__name__}: {exc}"
    except ValueError as exc:
        return None, EXIT_USAGE, str(exc)
    except ArithmeticError as exc:
        return None, EXIT_NUMERIC, f"{type(exc).__name__}: {exc}"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    emission, code, message = run(cfg)
    if message:
        print(f"fermitrap: {message}", file=sys.stderr)
    if emission is not None:
        text = format_json(emission) if cfg.fmt == "json" else format_csv(emission)
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
