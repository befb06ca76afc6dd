"""Position-space density of N trapped fermions (dimensionless units).

All functions take ``x = alpha * z`` and return the density in units of
``alpha``.  Besides the exact closed form there are the semiclassical
profile, the uniform Airy approximant, the edge and bulk asymptotics, the
smooth/oscillating split, and the hard-wall box reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .model import fermi_root
from .profiles import Profile
from .specfun import airy_ai, airy_ai_prime, airy_variables, psi_levels, psi_square_sum

AIRY_MIN_N = 20
DIRECT_SUM_MAX_N = 100_000


@dataclass(frozen=True)
class WindowConfig:
    """Validity windows of the asymptotic formulas.

    bulk_fraction
        ``density_bulk`` accepts ``|x| <= bulk_fraction * L_F``.
    edge_f_max
        ``density_edge`` accepts ``0 <= (L_F - |x|) N^{1/6} <= edge_f_max``.
    split_f_min
        ``density_oscillation_split`` needs ``(L_F - |x|) N^{1/6} >= split_f_min``.
    """

    bulk_fraction: float = 0.2
    edge_f_max: float = 10.0
    split_f_min: float = 10.0


DEFAULT_WINDOWS = WindowConfig()


def _check_n(n_particles):
    if isinstance(n_particles, bool) or int(n_particles) != n_particles or n_particles < 1:
        raise ValueError(f"particle number must be an integer >= 1, got {n_particles!r}")
    return int(n_particles)


def _out(val):
    return float(val) if np.ndim(val) == 0 else val


def density_exact(x, n_particles):
    """Exact density from the two-term Christoffel-Darboux form.

    ``n0 = N psi_{N-1}^2 - sqrt(N(N-1)) psi_N psi_{N-2}``; for ``N = 1`` this
    reduces to ``psi_0^2``.
    """
    n = _check_n(n_particles)
    x = np.asarray(x, dtype=float)
    lower2, lower1, top = psi_levels([n - 2, n - 1, n], x)
    val = n * lower1 * lower1 - math.sqrt(n * (n - 1.0)) * top * lower2
    return _out(val)


def density_exact_upper(x, n_particles):
    """Same density written with ``psi_{N+1}``, ``psi_N`` and ``psi_{N-1}``."""
    n = _check_n(n_particles)
    x = np.asarray(x, dtype=float)
    lower, mid, upper = psi_levels([n - 1, n, n + 1], x)
    val = n * mid * mid - math.sqrt(n * (n + 1.0)) * upper * lower
    return _out(val)


def density_direct_sum(x, n_particles):
    """Literal partial sum of ``psi_n(x)**2`` over the occupied levels."""
    n = _check_n(n_particles)
    if n > DIRECT_SUM_MAX_N:
        raise ValueError(f"direct sum limited to N <= {DIRECT_SUM_MAX_N}")
    return _out(psi_square_sum(n, np.asarray(x, dtype=float)))


def density_gradient(x, n_particles):
    """``d n0 / dx = -sqrt(2N) psi_N psi_{N-1}``."""
    n = _check_n(n_particles)
    lower, top = psi_levels([n - 1, n], np.asarray(x, dtype=float))
    return _out(-math.sqrt(2.0 * n) * top * lower)


def density_curvature(x, n_particles):
    """``d^2 n0 / dx^2 = 2N (psi_N^2 - psi_{N-1}^2)``."""
    n = _check_n(n_particles)
    lower, top = psi_levels([n - 1, n], np.asarray(x, dtype=float))
    return _out(2.0 * n * (top * top - lower * lower))


def density_semiclassical(x, n_particles):
    """Local-density profile ``(k_F/pi) sqrt(1 - (x/L_F)^2)``, zero outside."""
    n = _check_n(n_particles)
    root = fermi_root(n)
    u = np.asarray(x, dtype=float) / root
    val = root / math.pi * np.sqrt(np.clip(1.0 - u * u, 0.0, None))
    return _out(val)


def density_airy_uniform(x, n_particles):
    """Uniform Airy approximant built from levels N-2, N-1 and N.

    Valid for ``N >= 20`` and ``|x| <= L_{N-2}``; the prefactors
    ``1 + 3/(4N)`` and ``1 + 1/(4N)`` are kept as derived.
    """
    n = _check_n(n_particles)
    if n < AIRY_MIN_N:
        raise DomainError(f"Airy-uniform density needs N >= {AIRY_MIN_N}")
    ax = np.abs(np.asarray(x, dtype=float))
    limit = math.sqrt(2.0 * n - 3.0)
    if np.any(ax > limit):
        raise DomainError(f"Airy-uniform density needs |x| <= L_(N-2) = {limit:.6g}")
    t_lo, _, r_lo = airy_variables(n - 2, ax)
    t_mid, _, r_mid = airy_variables(n - 1, ax)
    t_hi, _, r_hi = airy_variables(n, ax)
    ai_mid = airy_ai(t_mid)
    first = (1.0 + 0.75 / n) * r_mid**2 * ai_mid * ai_mid
    second = (1.0 + 0.25 / n) * r_hi * r_lo * airy_ai(t_hi) * airy_ai(t_lo)
    return _out(fermi_root(n) * (first - second))


def edge_window(n_particles, windows=DEFAULT_WINDOWS):
    """``(x_lo, x_hi)`` of the edge region on the positive side."""
    root = fermi_root(n_particles)
    return root - windows.edge_f_max / n_particles ** (1.0 / 6.0), root


def density_edge(x, n_particles, windows=DEFAULT_WINDOWS):
    """Edge-region density ``sqrt(2) N^{1/6} [Ai'(t)^2 - t Ai(t)^2]``.

    ``t = t_{N-1}(x)``; only defined within ``edge_f_max / N^{1/6}`` of the
    classical turning point.
    """
    n = _check_n(n_particles)
    ax = np.abs(np.asarray(x, dtype=float))
    lo, hi = edge_window(n, windows)
    if np.any(ax < lo - 1e-12) or np.any(ax > hi):
        raise DomainError(f"edge density needs {lo:.6g} <= |x| <= {hi:.6g}")
    t, _, _ = airy_variables(n - 1, np.clip(ax, 0.0, hi))
    ai = airy_ai(t)
    aip = airy_ai_prime(t)
    return _out(math.sqrt(2.0) * n ** (1.0 / 6.0) * (aip * aip - t * ai * ai))


def density_bulk(x, n_particles, windows=DEFAULT_WINDOWS):
    """Central asymptotic ``k_F/pi + (1 - (-1)^N cos(2 k_F x)) / (2 pi L_F)``."""
    n = _check_n(n_particles)
    root = fermi_root(n)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > windows.bulk_fraction * root):
        raise DomainError(f"bulk density needs |x| <= {windows.bulk_fraction} L_F")
    sign = -1.0 if n % 2 else 1.0
    val = root / math.pi + (1.0 - sign * np.cos(2.0 * root * x)) / (2.0 * math.pi * root)
    return _out(val)


def density_oscillation_split(x, n_particles, windows=DEFAULT_WINDOWS):
    """Split the density into a smooth background and an oscillating part.

    Returns ``(background, oscillation)``; their sum approximates
    :func:`density_exact` away from the edges.
    """
    n = _check_n(n_particles)
    root = fermi_root(n)
    x = np.asarray(x, dtype=float)
    gap = (root - np.abs(x)) * n ** (1.0 / 6.0)
    if np.any(gap < windows.split_f_min):
        raise DomainError(
            f"oscillation split needs (L_F - |x|) N^(1/6) >= {windows.split_f_min}"
        )
    u = x / root
    s = np.sqrt(1.0 - u * u)
    background = root / math.pi * s + 1.0 / (2.0 * math.pi * root * s)
    phase = (2.0 * n - 1.0) * (s * u - np.arccos(u))
    oscillation = -np.sin(phase) / (2.0 * math.pi * root * s)
    return _out(background), _out(oscillation)


def smooth_background(x, n_particles):
    """Background part of :func:`density_oscillation_split` without the window check."""
    root = fermi_root(n_particles)
    u = np.asarray(x, dtype=float) / root
    s = np.sqrt(1.0 - u * u)
    return _out(root / math.pi * s + 1.0 / (2.0 * math.pi * root * s))


def box_density(x, n_particles, width):
    """Large-N density of N fermions between hard walls at 0 and ``width``."""
    n = _check_n(n_particles)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0) or np.any(x >= width):
        raise DomainError("box density is defined strictly inside (0, width)")
    k0 = math.pi * n / width
    val = k0 / math.pi * (1.0 - np.sin(2.0 * k0 * x) / (np.tan(math.pi * x / width) * 2.0 * n))
    return _out(val)


def box_envelope(x):
    """Peak-to-peak envelope ``1/(pi x)`` of the box density near a wall."""
    return _out(1.0 / (math.pi * np.asarray(x, dtype=float)))


METHODS = {
    "exact": density_exact,
    "direct-sum": density_direct_sum,
    "semiclassical": density_semiclassical,
    "airy-uniform": density_airy_uniform,
    "edge": density_edge,
    "bulk": density_bulk,
}


def method_window(method, n_particles, windows=DEFAULT_WINDOWS):
    """Largest symmetric ``|x|`` range (lo, hi) a method accepts, or None if unbounded."""
    root = fermi_root(n_particles)
    if method == "airy-uniform":
        return 0.0, math.sqrt(max(2.0 * n_particles - 3.0, 0.0))
    if method == "edge":
        return edge_window(n_particles, windows)
    if method == "bulk":
        return 0.0, windows.bulk_fraction * root
    return None


def sample(x_grid, n_particles, method="exact", alpha=1.0):
    """Evaluate a density method on a grid and wrap it as a :class:`Profile`."""
    if method not in METHODS:
        raise ValueError(f"unknown density method {method!r}; choose from {sorted(METHODS)}")
    x = np.asarray(x_grid, dtype=float)
    values = METHODS[method](x, n_particles)
    meta = {"N": int(n_particles), "method": method, "alpha": float(alpha), "generated-by": "fermitrap.density"}
    return Profile(x, np.asarray(values, dtype=float), meta=meta)
