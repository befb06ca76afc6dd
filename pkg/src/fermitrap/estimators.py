"""scikit-learn style wrappers.

The physics has no trainable parameters, so ``fit`` only validates the
configuration and records the input width.  ``transform`` maps a column of
positions (or wavenumbers) to the corresponding observable, which lets the
models sit inside a ``Pipeline`` or ``FunctionTransformer`` chain.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import density, expansion, momentum, spectral
from .validation import check_alpha, check_particle_number, check_points, check_time


class _ObservableTransformer(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        check_particle_number(self.n_particles)
        self._check_config()
        check_points(X)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        pts = check_points(X)
        return np.asarray(self._evaluate(pts), dtype=float).reshape(-1, 1)

    def _check_config(self):
        pass


class DensityTransformer(_ObservableTransformer):
    """Position -> density for a chosen method (units of alpha)."""

    def __init__(self, n_particles=1, alpha=1.0, method="exact"):
        self.n_particles = n_particles
        self.alpha = alpha
        self.method = method

    def _check_config(self):
        check_alpha(self.alpha)
        if self.method not in density.METHODS:
            raise ValueError(f"unknown density method {self.method!r}")

    def _evaluate(self, z):
        a = float(self.alpha)
        return a * np.asarray(density.METHODS[self.method](a * z, int(self.n_particles)))


class FourierTransformer(_ObservableTransformer):
    """Wavenumber (units of alpha) -> Fourier-transformed density."""

    def __init__(self, n_particles=1, method="exact"):
        self.n_particles = n_particles
        self.method = method

    def _check_config(self):
        if self.method not in spectral.METHODS:
            raise ValueError(f"unknown Fourier method {self.method!r}")

    def _evaluate(self, k):
        return spectral.METHODS[self.method](k, int(self.n_particles))


class MomentumTransformer(_ObservableTransformer):
    """Wavenumber -> momentum density, or position -> centered correlator."""

    def __init__(self, n_particles=1, alpha=1.0, quantity="density"):
        self.n_particles = n_particles
        self.alpha = alpha
        self.quantity = quantity

    def _check_config(self):
        check_alpha(self.alpha)
        if self.quantity not in momentum.QUANTITIES:
            raise ValueError(f"unknown momentum quantity {self.quantity!r}")

    def _evaluate(self, k):
        return momentum.QUANTITIES[self.quantity](k, int(self.n_particles), float(self.alpha))


class ExpansionTransformer(_ObservableTransformer):
    """Position -> density at time ``t`` after release."""

    def __init__(self, n_particles=1, t=0.0):
        self.n_particles = n_particles
        self.t = t

    def _check_config(self):
        check_time(self.t)

    def _evaluate(self, x):
        return expansion.density_expanded(x, float(self.t), int(self.n_particles))


__all__ = ["DensityTransformer", "FourierTransformer", "MomentumTransformer", "ExpansionTransformer"]
