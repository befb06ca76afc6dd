"""Momentum-space observables.

The momentum density of the oscillator ground state is the position
density with ``x -> k/alpha^2`` (up to the units), so it shares the
evaluation path of :func:`density_exact`.  The centered correlator
``<psi^+(x) psi(0)>`` collapses to a single damped Laguerre polynomial.
"""

from __future__ import annotations

import math

import numpy as np

from .density import density_exact
from .exceptions import DomainError
from .model import fermi_root
from .profiles import MomentumProfile
from .specfun import damped_laguerre, gauss_seed

STEP_GRID_TOL = 1e-9
ASYMPTOTIC_MIN_N = 50


def _check_n(n_particles):
    if isinstance(n_particles, bool) or int(n_particles) != n_particles or n_particles < 1:
        raise ValueError(f"particle number must be an integer >= 1, got {n_particles!r}")
    return int(n_particles)


def _check_alpha(alpha):
    alpha = float(alpha)
    if not alpha > 0.0 or not math.isfinite(alpha):
        raise ValueError("alpha must be positive and finite")
    return alpha


def _out(val):
    return float(val) if np.ndim(val) == 0 else val


def density_physical(z, n_particles, alpha=1.0):
    """Position density in physical units: ``alpha * n0(alpha z)``."""
    alpha = _check_alpha(alpha)
    return _out(alpha * np.asarray(density_exact(alpha * np.asarray(z, dtype=float), n_particles)))


def momentum_density(k, n_particles, alpha=1.0):
    """``p0(k) = n0(k/alpha^2) / alpha^2`` with ``n0`` the physical density.

    For alpha a power of two ``alpha**2 * p0(k)`` reproduces
    ``density_physical(k/alpha**2)`` bit for bit.
    """
    alpha = _check_alpha(alpha)
    a2 = alpha * alpha
    return _out(np.asarray(density_physical(np.asarray(k, dtype=float) / a2, n_particles, alpha)) / a2)


def momentum_step(k, n_particles, alpha=1.0):
    """Occupation ``Theta(k_F - k)`` of the discrete oscillator wavenumbers.

    ``k`` must be one of ``k_n = alpha sqrt(2n+1)``; anything else raises
    :class:`DomainError` because the occupation is not defined between them.
    """
    n = _check_n(n_particles)
    alpha = _check_alpha(alpha)
    k = np.asarray(k, dtype=float)
    level = 0.5 * ((k / alpha) ** 2 - 1.0)
    nearest = np.rint(level)
    if np.any(k < 0) or np.any(nearest < 0) or np.any(np.abs(level - nearest) > STEP_GRID_TOL * np.maximum(1.0, level)):
        raise DomainError("momentum_step is only defined on k_n = alpha*sqrt(2n+1)")
    occ = (nearest <= n - 1).astype(int)
    return int(occ) if occ.ndim == 0 else occ


def correlator_centered(x, n_particles, alpha=1.0):
    """``sum_{n<N} psi_n(x) psi_n(0)`` in closed Laguerre form.

    ``pi^{-1/2} exp(-x^2/2) L_M^{(1/2)}(x^2)`` with ``M = (N-1)//2`` for odd N
    and ``M = N/2 - 1`` for even N; only even levels contribute.
    """
    n = _check_n(n_particles)
    alpha = _check_alpha(alpha)
    x = alpha * np.asarray(x, dtype=float)
    degree = (n - 1) // 2
    val = damped_laguerre(degree, 0.5, x * x, gauss_seed(x)) / math.sqrt(math.pi)
    return _out(alpha * val)


def correlator_asymptotic(x, n_particles):
    """Large-N form ``sin(k_F x)/(pi x)``; ``k_F/pi`` at x = 0."""
    n = _check_n(n_particles)
    if n < ASYMPTOTIC_MIN_N:
        raise DomainError(f"asymptotic correlator needs N >= {ASYMPTOTIC_MIN_N}")
    kf = fermi_root(n)
    x = np.asarray(x, dtype=float)
    zero = x == 0.0
    safe = np.where(zero, 1.0, x)
    return _out(np.where(zero, kf / math.pi, np.sin(kf * safe) / (math.pi * safe)))


QUANTITIES = {
    "density": momentum_density,
    "correlator": correlator_centered,
}


def sample(k_grid, n_particles, alpha=1.0, quantity="density"):
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown momentum quantity {quantity!r}; choose from {sorted(QUANTITIES)}")
    k = np.asarray(k_grid, dtype=float)
    values = np.asarray(QUANTITIES[quantity](k, n_particles, alpha), dtype=float)
    meta = {"N": int(n_particles), "alpha": alpha, "method": quantity, "generated-by": "fermitrap.momentum"}
    return MomentumProfile(k, values, meta=meta)


__all__ = [
    "density_physical",
    "momentum_density",
    "momentum_step",
    "correlator_centered",
    "correlator_asymptotic",
    "sample",
]
