"""Brute-force validators shared by the test suite and the analyses.

Nothing here calls the closed forms it is meant to check: quadrature
integrates whatever callable it is handed, the Fourier transform is a
literal quadrature of its definition, and the extended-precision references
run their own recurrences in :mod:`mpmath`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from .exceptions import DomainError, NonConvergenceError
from .profiles import Profile, SpectralProfile
from .specfun import psi_levels


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings for :func:`quad_integrate`.

    ``panels`` is the initial number of equal panels between consecutive
    breakpoints; each panel is refined by bisection until the difference
    between the ``order``- and ``2*order``-point Gauss-Legendre rules meets
    the tolerance.
    """

    lo: float
    hi: float
    panels: int = 8
    order: int = 20
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_panels: int = 20000
    breakpoints: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValueError("quadrature domain must satisfy lo < hi")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerance targets must be positive")
        if self.panels < 1 or self.order < 2:
            raise ValueError("need at least one panel and order >= 2")


@dataclass(frozen=True)
class QuadResult:
    value: object
    error: float
    panels: int

    def __iter__(self):
        # allows ``value, err = quad_integrate(...)``
        yield self.value
        yield self.error


_EPS = np.finfo(float).eps


@lru_cache(maxsize=32)
def _gauss_legendre(order):
    return np.polynomial.legendre.leggauss(order)


def _panel_rule(order, a, b):
    x, w = _gauss_legendre(order)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    return mid[:, None] + half[:, None] * x[None, :], half[:, None] * w[None, :]


def quad_integrate(f, spec):
    """Adaptive Gauss-Legendre integral of a vectorized callable.

    ``f`` maps a 1-D array of nodes to values of shape ``(n,)`` or ``(n, m)``
    (several integrands sharing the nodes).  Returns a :class:`QuadResult`
    whose ``error`` is the sum of per-panel estimates ``|G_2n - G_n|``.

    Raises
    ------
    NonConvergenceError
        If the tolerance is not met within ``spec.max_panels`` panels; the
        best estimate is attached.
    """
    cuts = sorted({spec.lo, spec.hi, *[b for b in spec.breakpoints if spec.lo < b < spec.hi]})
    edges = np.concatenate(
        [np.linspace(a, b, spec.panels + 1)[:-1] for a, b in zip(cuts[:-1], cuts[1:])] + [[cuts[-1]]]
    )
    active_a, active_b = edges[:-1], edges[1:]
    parent_err = np.full(active_a.size, np.inf)
    width = spec.hi - spec.lo
    done = []  # (left edge, value, err)
    total_guess = None
    n_low, n_high = spec.order, 2 * spec.order
    while active_a.size:
        xl, wl = _panel_rule(n_low, active_a, active_b)
        xh, wh = _panel_rule(n_high, active_a, active_b)
        nodes = np.concatenate([xl.ravel(), xh.ravel()])
        vals = np.asarray(f(nodes), dtype=float)
        extra_shape = vals.shape[1:]
        vl = vals[: xl.size].reshape(xl.shape + extra_shape)
        vh = vals[xl.size :].reshape(xh.shape + extra_shape)
        wl_b = wl.reshape(wl.shape + (1,) * len(extra_shape))
        wh_b = wh.reshape(wh.shape + (1,) * len(extra_shape))
        g_low = (wl_b * vl).sum(axis=1)
        g_high = (wh_b * vh).sum(axis=1)
        diff = np.abs(g_high - g_low)
        mass = (wh_b * np.abs(vh)).sum(axis=1)
        err = diff.reshape(diff.shape[0], -1).max(axis=1) if extra_shape else diff
        # rounding-limited panels: rules agree to machine level, or halving stopped helping
        floor = 64.0 * _EPS * (mass.reshape(mass.shape[0], -1).max(axis=1) if extra_shape else mass)
        stalled = err > 0.9 * parent_err
        if total_guess is None:
            total_guess = np.abs(g_high.sum(axis=0)).max() if extra_shape else abs(g_high.sum())
        target = max(spec.abs_tol, spec.rel_tol * total_guess)
        local = target * (active_b - active_a) / width
        ok = (err <= local) | (err <= floor) | stalled
        for a, v, e in zip(active_a[ok], g_high[ok], err[ok]):
            done.append((a, v, e))
        bad_a, bad_b = active_a[~ok], active_b[~ok]
        if len(done) + 2 * bad_a.size > spec.max_panels:
            for a, v, e in zip(bad_a, g_high[~ok], err[~ok]):
                done.append((a, v, e))
            value, error = _collect(done, extra_shape)
            raise NonConvergenceError(
                "adaptive quadrature exceeded its panel budget",
                estimate=value,
                error=error,
                diagnostics={"panels": len(done), "target": target},
            )
        mid = 0.5 * (bad_a + bad_b)
        bad_err = err[~ok]
        active_a = np.concatenate([bad_a, mid])
        active_b = np.concatenate([mid, bad_b])
        parent_err = np.concatenate([bad_err, bad_err])
        order = np.argsort(active_a, kind="stable")
        active_a, active_b, parent_err = active_a[order], active_b[order], parent_err[order]
    value, error = _collect(done, extra_shape)
    return QuadResult(value=value, error=error, panels=len(done))


def _collect(done, extra_shape):
    done.sort(key=lambda item: item[0])
    error = math.fsum(float(e) for _, _, e in done)
    if extra_shape:
        stacked = np.array([v for _, v, _ in done])
        value = np.array([math.fsum(col) for col in stacked.reshape(len(done), -1).T]).reshape(extra_shape)
    else:
        value = math.fsum(float(v) for _, v, _ in done)
    return value, error


def integrate(f, lo, hi, **kwargs):
    """Shorthand for :func:`quad_integrate` with keyword settings."""
    return quad_integrate(f, QuadratureSpec(lo=lo, hi=hi, **kwargs))


def numeric_ft(profile, k_grid, tol=None):
    """Literal quadrature ``int dx cos(k x) n(x)`` of a sampled even profile.

    The profile must be sampled on a uniform grid and decay at both ends; the
    trapezoid rule is then spectrally accurate.  The error estimate compares
    against the rule on every other sample.
    """
    x, y = profile.grid, profile.values
    if x.size < 5:
        raise ValueError("profile too short for a transform")
    h = np.diff(x)
    if not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
        raise ValueError("numeric_ft needs a uniform grid")
    scale = np.abs(y).max()
    if max(abs(y[0]), abs(y[-1])) > 1e-10 * scale:
        raise DomainError("profile does not decay at the ends of its grid")
    k = np.asarray(k_grid, dtype=float)
    fine = _trapezoid_cos(x, y, k, h[0])
    odd = x.size if x.size % 2 else x.size - 1
    coarse = _trapezoid_cos(x[:odd:2], y[:odd:2], k, 2.0 * h[0])
    err = np.abs(fine - coarse)
    if tol is not None and err.max() > tol:
        raise NonConvergenceError(
            "sampled Fourier transform did not reach tolerance",
            estimate=fine,
            error=float(err.max()),
        )
    meta = dict(profile.meta)
    meta.update(method="numeric-oracle", error_estimate=float(err.max()))
    return SpectralProfile(k, fine, meta=meta)


def _trapezoid_cos(x, y, k, h):
    w = np.full(x.size, h)
    w[0] = w[-1] = 0.5 * h
    out = np.empty(k.size)
    for i in range(0, k.size, 256):
        chunk = k[i : i + 256]
        out[i : i + 256] = np.cos(np.outer(chunk, x)) @ (w * y)
    return out


def numeric_ft_function(f, k_grid, lo, hi, breakpoints=(), abs_tol=1e-10, **kwargs):
    """Fourier cosine transform of a callable by adaptive quadrature."""
    k = np.asarray(k_grid, dtype=float).ravel()

    def integrand(x):
        return f(x)[:, None] * np.cos(np.outer(x, k))

    spec = QuadratureSpec(lo=lo, hi=hi, abs_tol=abs_tol, breakpoints=tuple(breakpoints), **kwargs)
    return quad_integrate(integrand, spec)


def finite_diff(f, x, order=1, h=1e-3):
    """Centered difference of order 1 or 2 with one Richardson step."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")

    def stencil(step):
        if order == 1:
            return (f(x + step) - f(x - step)) / (2.0 * step)
        return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step)

    return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0


def christoffel_darboux(z1, z2, n):
    """Kernel ``sum_{m <= n} psi_m(z1) psi_m(z2)`` in two-term quotient form.

    Pairs closer than ``1e-8`` use the diagonal limit
    ``(n+1) psi_{n+1}^2 - sqrt((n+1)(n+2)) psi_{n+2} psi_n``.
    """
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    z1, z2 = np.broadcast_arrays(z1, z2)
    a_n, a_n1 = psi_levels([n, n + 1], z1)
    b_n, b_n1 = psi_levels([n, n + 1], z2)
    delta = z1 - z2
    near = np.abs(delta) < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        quotient = math.sqrt(0.5 * (n + 1)) * (a_n1 * b_n - a_n * b_n1) / delta
    if np.any(near):
        d_n, d_n1, d_n2 = psi_levels([n, n + 1, n + 2], z1)
        diag = (n + 1) * d_n1**2 - math.sqrt((n + 1) * (n + 2)) * d_n2 * d_n
        quotient = np.where(near, diag, quotient)
    return float(quotient) if quotient.ndim == 0 else quotient


def psi_reference(n, x, dps=40):
    """Extended-precision ``psi_n(x)`` from an :mod:`mpmath` recurrence."""
    import mpmath

    with mpmath.workdps(dps + int(math.log10(n + 10))):
        xm = mpmath.mpf(x)
        prev = mpmath.mpf(0)
        cur = mpmath.pi ** mpmath.mpf(-0.25) * mpmath.exp(-xm * xm / 2)
        s2x = mpmath.sqrt(2) * xm
        for k in range(n):
            prev, cur = cur, (s2x * cur - mpmath.sqrt(k) * prev) / mpmath.sqrt(k + 1)
        return cur


def brute_kernel(z1, z2, n):
    """Literal sum ``sum_{m <= n} psi_m(z1) psi_m(z2)``."""
    vals1 = psi_levels(range(n + 1), z1)
    vals2 = psi_levels(range(n + 1), z2)
    return (vals1 * vals2).sum(axis=0)


CORPUS_FILE = "reference_values.txt"


def load_reference_corpus():
    """Rows of the frozen extended-precision table shipped with the package.

    Each row is a dict with keys ``function``, ``args`` (tuple of floats),
    ``value`` (float), ``precision`` (digits carried) and ``generator``.
    """
    text = resources.files("fermitrap").joinpath("data", CORPUS_FILE).read_text()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        func, args, value, precision, generator = line.split("\t")
        rows.append(
            {
                "function": func,
                "args": tuple(float(a) for a in args.split(",")),
                "value": float(value),
                "precision": int(precision),
                "generator": generator,
            }
        )
    return rows


def profile_integral(profile):
    """Trapezoid integral of a sampled profile (for quick norm checks)."""
    return float(np.trapezoid(profile.values, profile.grid))


__all__ = [
    "QuadratureSpec",
    "QuadResult",
    "quad_integrate",
    "integrate",
    "numeric_ft",
    "numeric_ft_function",
    "finite_diff",
    "christoffel_darboux",
    "brute_kernel",
    "psi_reference",
    "load_reference_corpus",
    "profile_integral",
    "Profile",
]
