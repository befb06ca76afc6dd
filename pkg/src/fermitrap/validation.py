"""Input checks shared by the estimators and the CLI."""

from __future__ import annotations

import math
import numbers

import numpy as np
from sklearn.utils.validation import check_array


def check_particle_number(n_particles, name="n_particles"):
    if isinstance(n_particles, (bool, np.bool_)) or not isinstance(n_particles, numbers.Integral):
        if not (isinstance(n_particles, numbers.Real) and float(n_particles).is_integer()):
            raise ValueError(f"{name} must be an integer, got {n_particles!r}")
    n = int(n_particles)
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    return n


def check_alpha(alpha):
    alpha = float(alpha)
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be positive and finite, got {alpha!r}")
    return alpha


def check_time(t):
    t = float(t)
    if not (t >= 0.0 and math.isfinite(t)):
        raise ValueError(f"time must be finite and >= 0, got {t!r}")
    return t


def check_points(X):
    """Coerce ``X`` to a flat float array of sample points.

    Accepts a 1-D array or a single-column 2-D array, as the estimators see
    it; NaN and infinity are rejected.
    """
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    arr = check_array(arr, dtype=np.float64, ensure_2d=True)
    if arr.shape[1] != 1:
        raise ValueError(f"expected a single column of positions, got {arr.shape[1]} columns")
    return arr[:, 0]


def check_grid(lo, hi, points):
    """Validate a uniform grid specification and return it as an array.

    A grid with ``lo == -hi`` is mirrored so that it is exactly symmetric.
    """
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("grid bounds must be finite")
    if not lo < hi:
        raise ValueError(f"grid needs min < max, got {lo} >= {hi}")
    if int(points) != points or points < 2:
        raise ValueError(f"grid needs at least 2 points, got {points!r}")
    points = int(points)
    grid = np.linspace(lo, hi, points)
    if lo == -hi:
        half = points // 2
        grid[:half] = -grid[: points - half - 1 : -1]
        if points % 2:
            grid[half] = 0.0
    return grid
