"""Sampled curves passed between modules and emitted by the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class Profile:
    """A real curve on an ascending grid plus provenance metadata.

    ``extra`` holds additional named columns sampled on the same grid
    (e.g. a comparison method); ``domain`` names what the grid measures.
    """

    grid: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    domain: str = "position"

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.ndim != 1 or self.grid.shape != self.values.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if self.grid.size > 1 and not np.all(np.diff(self.grid) > 0):
            raise ValueError("grid must be strictly ascending")
        for name, col in list(self.extra.items()):
            col = np.asarray(col, dtype=float)
            if col.shape != self.grid.shape:
                raise ValueError(f"extra column {name!r} does not match grid")
            self.extra[name] = col


class SpectralProfile(Profile):
    """Profile whose grid is a wavenumber axis (units of alpha)."""

    def __init__(self, grid, values, meta=None, extra=None):
        super().__init__(grid, values, meta or {}, extra or {}, domain="wavenumber")

    @property
    def k_grid(self):
        return self.grid


class MomentumProfile(SpectralProfile):
    """Momentum density ``p0(k)`` on a wavenumber grid."""
