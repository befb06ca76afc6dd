"""Trap parameters and the length, wavenumber and energy scales they fix.

Lengths are in units of ``1/alpha`` only where a function says so; the
dataclasses below carry physical values for a given ``alpha``.  Energies are
in units of ``hbar * omega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TrapParams:
    """Particle number and inverse oscillator length ``alpha = sqrt(m w / hbar)``."""

    n_particles: int
    alpha: float = 1.0

    def __post_init__(self):
        n = self.n_particles
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise ValueError(f"n_particles must be an integer >= 1, got {n!r}")
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        object.__setattr__(self, "n_particles", int(n))
        object.__setattr__(self, "alpha", float(self.alpha))


@dataclass(frozen=True)
class TrapScales:
    k_fermi: float
    l_fermi: float
    e_fermi: float
    peak_density: float
    avg_density: float


def derive_scales(params):
    """Fermi wavenumber, half-width, energy and the two reference densities.

    ``avg_density`` is the semiclassical spatial average ``k_F / 4``.
    """
    root = math.sqrt(2 * params.n_particles - 1)
    k_f = params.alpha * root
    return TrapScales(
        k_fermi=k_f,
        l_fermi=root / params.alpha,
        e_fermi=params.n_particles - 0.5,
        peak_density=k_f / math.pi,
        avg_density=k_f / 4.0,
    )


def level_scales(n, alpha=1.0):
    """Turning point ``L_n`` and central wavenumber ``k_n`` of level ``n``."""
    if n < 0:
        raise ValueError("level must be >= 0")
    root = math.sqrt(2 * n + 1)
    return root / alpha, alpha * root


def box_fermi_wavenumber(n_particles, l_fermi):
    """Fermi wavenumber ``pi N / (2 L_F)`` of N fermions in a box of width ``2 L_F``."""
    if l_fermi <= 0:
        raise ValueError("half-width must be positive")
    return math.pi * n_particles / (2.0 * l_fermi)


def fermi_root(n_particles):
    """Dimensionless ``k_F / alpha == alpha L_F == sqrt(2N - 1)``."""
    return math.sqrt(2 * n_particles - 1)
