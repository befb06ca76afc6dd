"""Free expansion after the trap is switched off at t = 0.

Time is measured in units of ``1/omega`` and positions in units of
``1/alpha``.  The closed form is a pure rescaling by ``b(t) = sqrt(1+t^2)``;
:func:`propagate_numeric` checks it by evolving every occupied mode through
its momentum representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import spectral_peak
from .density import density_exact, density_semiclassical
from .exceptions import NonConvergenceError
from .model import fermi_root
from .profiles import Profile
from .spectral import ft_exact
from .specfun import psi_levels

PROPAGATE_MAX_N = 50
_GL_ORDER = 24


def _check_time(t):
    t = float(t)
    if not t >= 0.0 or not math.isfinite(t):
        raise ValueError("time must be finite and >= 0")
    return t


def scale_factor(t):
    """``b(t) = sqrt(1 + t^2)``."""
    return math.hypot(1.0, _check_time(t))


def density_expanded(x, t, n_particles):
    """``n0(x/b, N) / b``.

    With ``N = 1`` this also covers the transverse spread of a single tightly
    confined mode; pass time in units of that direction's frequency.
    """
    b = scale_factor(t)
    val = np.asarray(density_exact(np.asarray(x, dtype=float) / b, n_particles)) / b
    return float(val) if val.ndim == 0 else val


def ft_expanded(k, t, n_particles):
    """Transform of the expanded density: ``ft_exact(b k, N)``."""
    b = scale_factor(t)
    return ft_exact(b * np.asarray(k, dtype=float), n_particles)


@dataclass(frozen=True)
class ExpansionSnapshot:
    t: float
    b: float
    profile: Profile


def snapshot(x_grid, t, n_particles):
    b = scale_factor(t)
    x = np.asarray(x_grid, dtype=float)
    meta = {"N": int(n_particles), "method": "exact", "t": float(t), "b": b, "generated-by": "fermitrap.expansion"}
    return ExpansionSnapshot(float(t), b, Profile(x, density_expanded(x, t, n_particles), meta=meta))


def _mode_amplitudes(x, t, n_particles, panels):
    """Free-evolved ``psi_n(x, t)`` for all occupied modes, shape ``(len(x), N)``.

    ``psi_n(x,t) = (2 pi)^{-1/2} int dk exp(i k x - i k^2 t / 2) phi_n(k)`` with
    ``phi_n(k) = (-i)^n psi_n(k)``; the constant phase drops out of
    ``|psi_n|^2`` and is omitted.
    """
    reach = math.sqrt(2.0 * n_particles + 1.0) + 12.0
    nodes, weights = np.polynomial.legendre.leggauss(_GL_ORDER)
    edges = np.linspace(-reach, reach, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    k = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    modes = psi_levels(range(n_particles), k)  # (N, nk)
    phase = np.exp(1j * (np.outer(x, k) - 0.5 * t * k * k))
    return phase @ (w[:, None] * modes.T) / math.sqrt(2.0 * math.pi)


def propagate_numeric(x_grid, t, n_particles, tol=1e-12, max_panels=4096):
    """Brute-force density at time t from mode-by-mode free propagation.

    Composite Gauss-Legendre in k, with the panel count doubled until two
    successive resolutions agree to ``tol`` (absolute, in density units).

    Raises
    ------
    NonConvergenceError
        If ``max_panels`` is reached first; the estimate and the last change
        are attached.
    """
    n = int(n_particles)
    if n < 1 or n > PROPAGATE_MAX_N:
        raise ValueError(f"propagation oracle supports 1 <= N <= {PROPAGATE_MAX_N}")
    t = _check_time(t)
    x = np.asarray(x_grid, dtype=float)
    reach = math.sqrt(2.0 * n + 1.0) + 12.0
    # phase kx - k^2 t/2 changes by at most (|x| + reach t) per unit k
    rate = float(np.max(np.abs(x), initial=0.0)) + reach * t
    panels = max(16, int(math.ceil(2.0 * reach * max(rate, 1.0) / (2.0 * math.pi) / 2.0)))
    if 2 * panels > max_panels:
        raise NonConvergenceError(
            "phase resolution needs more panels than allowed",
            diagnostics={"panels": 2 * panels, "max_panels": max_panels, "t": t, "N": n},
        )
    prev = None
    while True:
        amp = _mode_amplitudes(x, t, n, panels)
        dens = np.sum(np.abs(amp) ** 2, axis=1)
        if prev is not None:
            change = float(np.max(np.abs(dens - prev)))
            if change <= tol:
                break
            if 2 * panels > max_panels:
                raise NonConvergenceError(
                    "mode propagation did not converge",
                    estimate=dens,
                    error=change,
                    diagnostics={"panels": panels, "t": t, "N": n},
                )
        prev = dens
        panels *= 2
    meta = {
        "N": n,
        "method": "propagation-oracle",
        "t": t,
        "b": scale_factor(t),
        "panels": panels,
        "error_estimate": change,
        "generated-by": "fermitrap.expansion",
    }
    return Profile(x, dens, meta=meta)


def friedel_stretch(t, n_particles, bulk_fraction=0.2, points=1025):
    """Central Friedel wavenumber of the expanded density; about ``2 k_F / b(t)``.

    Returns nan when no clear spectral peak is found.
    """
    n = int(n_particles)
    if n < 20:
        raise ValueError("Friedel analysis needs N >= 20")
    b = scale_factor(t)
    root = fermi_root(n)
    half = bulk_fraction * root * b
    x = np.linspace(-half, half, points)
    resid = density_expanded(x, t, n) - np.asarray(density_semiclassical(x / b, n)) / b
    return spectral_peak(x, resid, k_max=4.0 * root / b).k_peak


__all__ = [
    "ExpansionSnapshot",
    "scale_factor",
    "density_expanded",
    "ft_expanded",
    "snapshot",
    "propagate_numeric",
    "friedel_stretch",
]
