"""Structural diagnostics of the exact density.

Extrema enumeration, edge-scaling laws, tail self-similarity, the
oscillation-envelope exponent and the Friedel wavenumber.  Everything is in
dimensionless units (alpha = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from .density import density_exact, density_semiclassical, smooth_background
from .exceptions import ConsistencyError, InsufficientDataError
from .model import fermi_root
from .specfun import psi_levels

EXTREMA_MAX_N = 2000
HEIGHT_CHECK_TOL = 1e-10

# leading-order edge predictions as printed
EDGE_POS_COEFF = 1.17
EDGE_HEIGHT_COEFF = 0.7
EDGE_KMIN_COEFF = 0.8


def _jacobi_eigs(n, count=None):
    """Eigenvalues of the Jacobi matrix of psi_n: all of them, or the top ``count``."""
    if n == 1:
        return np.zeros(1)
    diag = np.zeros(n)
    off = np.sqrt(np.arange(1, n) / 2.0)
    if count is not None and count < 64:
        take = min(n, count)
        return eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(n - take, n - 1))
    # bisection on many eigenvalues is far slower than the full root-free QR
    return eigvalsh_tridiagonal(diag, off, lapack_driver="sterf")


def _polish(n, lo, hi, z, max_iter=80):
    """Safeguarded Newton on psi_n inside sign-change brackets ``[lo, hi]``."""
    f_lo = psi_levels([n], lo)[0]
    f_hi = psi_levels([n], hi)[0]
    if np.any(np.sign(f_lo) * np.sign(f_hi) >= 0):
        raise ConsistencyError(f"zeros of psi_{n} are not bracketed by sign changes")
    z = np.clip(z, lo, hi)
    s2n = math.sqrt(2.0 * n)
    for _ in range(max_iter):
        lower, val = psi_levels([n - 1, n], z)
        deriv = -z * val + s2n * lower
        same = np.sign(val) == np.sign(f_lo)
        lo = np.where(same, z, lo)
        hi = np.where(same, hi, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = val / deriv
        tiny = np.abs(delta) <= 1e-14 * np.maximum(1.0, np.abs(z))
        step = z - delta
        bad = ~np.isfinite(step) | (step <= lo) | (step >= hi)
        z = np.where(tiny | (val == 0.0), np.where(np.isfinite(step), step, z), np.where(bad, 0.5 * (lo + hi), step))
        if np.all(tiny | (val == 0.0)):
            break
    return z


def oscillator_zeros(n, count=None, above=None):
    """Zeros of ``psi_n`` in ascending order.

    ``count`` keeps only the largest ``count`` zeros and ``above`` only those
    greater than a position.  Seeds come from the eigenvalues of the
    symmetric Jacobi matrix and each root is polished inside the bracket
    formed by the neighbouring seed midpoints.  A missing sign change raises
    :class:`ConsistencyError`.
    """
    if n == 0:
        return np.empty(0)
    want = n if count is None else min(int(count), n)
    seeds = _jacobi_eigs(n, None if above is not None else want + 1)
    if above is not None:
        want = min(want, int(np.count_nonzero(seeds > above)))
    if want == 0:
        return np.empty(0)
    edge = math.sqrt(2.0 * n + 1.0) + 2.0
    seeds = seeds[-(want + 1):]
    mids = 0.5 * (seeds[1:] + seeds[:-1])
    if seeds.size > want:
        lo = mids
        hi = np.append(mids[1:], edge)
        start = seeds[1:]
    else:
        lo = np.insert(mids, 0, -edge)
        hi = np.append(mids, edge)
        start = seeds
    z = _polish(n, lo, hi, start)
    return z if above is None else z[z > above]


@dataclass(frozen=True)
class ExtremaReport:
    """Density maxima (zeros of psi_N) and minima (zeros of psi_{N-1}).

    ``maxima`` and ``minima`` are ``(k, 2)`` arrays of ``(position, height)``.
    """

    n_particles: int
    maxima: np.ndarray
    minima: np.ndarray

    @property
    def max_positions(self):
        return self.maxima[:, 0]

    @property
    def min_positions(self):
        return self.minima[:, 0]

    def interlaced(self):
        """True when every minimum sits strictly between two consecutive maxima."""
        xm, xn = self.max_positions, self.min_positions
        return bool(np.all(xm[:-1] < xn) and np.all(xn < xm[1:]))


def find_extrema(n_particles, check_tol=HEIGHT_CHECK_TOL):
    """All N maxima and N-1 minima of the exact density.

    Heights use ``N psi_{N-1}^2`` at maxima and ``(N-1) psi_{N-2}^2`` at
    minima and are cross-checked against :func:`density_exact`.
    """
    n = int(n_particles)
    if n < 1 or n > EXTREMA_MAX_N:
        raise ValueError(f"find_extrema supports 1 <= N <= {EXTREMA_MAX_N}")
    x_max = oscillator_zeros(n)
    x_min = oscillator_zeros(n - 1)
    h_max = n * psi_levels([n - 1], x_max)[0] ** 2
    h_min = (n - 1) * psi_levels([n - 2], x_min)[0] ** 2 if n > 1 else np.empty(0)
    if x_max.size != n or x_min.size != n - 1:
        raise ConsistencyError(f"found {x_max.size} maxima and {x_min.size} minima for N={n}")
    for pos, h in ((x_max, h_max), (x_min, h_min)):
        if pos.size and np.max(np.abs(density_exact(pos, n) - h)) > check_tol * max(1.0, h.max()):
            raise ConsistencyError("extremum heights disagree with the exact density")
    report = ExtremaReport(n, np.column_stack([x_max, h_max]), np.column_stack([x_min, h_min]))
    if n > 1 and not report.interlaced():
        raise ConsistencyError("maxima and minima are not interlaced")
    return report


@dataclass(frozen=True)
class EdgeScalingReport:
    """Exact outermost-maximum data next to the leading edge asymptotics."""

    n_particles: int
    last_max_pos: float
    delta_x_N: float
    last_max_height: float
    k_min: float
    predicted_pos: float
    predicted_delta_x: float
    predicted_height: float
    predicted_k_min: float

    def relative_errors(self):
        return {
            "position": abs(self.last_max_pos - self.predicted_pos) / self.predicted_pos,
            "height": abs(self.last_max_height - self.predicted_height) / self.predicted_height,
            "k_min": abs(self.k_min - self.predicted_k_min) / self.predicted_k_min,
        }


def edge_scaling(n_particles):
    """Position, height and spacing of the outermost maxima against their asymptotics."""
    n = int(n_particles)
    if n < 50:
        raise ValueError("edge scaling needs N >= 50")
    root = fermi_root(n)
    z = oscillator_zeros(n, count=2)
    last, prev = float(z[-1]), float(z[-2])
    height = n * float(psi_levels([n - 1], last)[0]) ** 2
    if abs(height - density_exact(last, n)) > 1e-9 * height:
        raise ConsistencyError("edge maximum height disagrees with the exact density")
    n16 = n ** (1.0 / 6.0)
    return EdgeScalingReport(
        n_particles=n,
        last_max_pos=last,
        delta_x_N=root - last,
        last_max_height=height,
        k_min=2.0 * math.pi / (last - prev),
        predicted_pos=root * (1.0 - EDGE_POS_COEFF * n ** (-2.0 / 3.0)),
        predicted_delta_x=EDGE_POS_COEFF * root * n ** (-2.0 / 3.0),
        predicted_height=EDGE_HEIGHT_COEFF * n16,
        predicted_k_min=2.0 * math.pi * EDGE_KMIN_COEFF * n16,
    )


def scaled_tail(n_particles, f):
    """``N^{-1/6} n0(L_F - f N^{-1/6}, N)``: the edge profile on the N-free axis f."""
    n16 = n_particles ** (1.0 / 6.0)
    return density_exact(fermi_root(n_particles) - np.asarray(f, dtype=float) / n16, n_particles) / n16


def tail_collapse(n1, n2, f_range=(1.0, 10.0), points=2001):
    """Largest relative gap between the rescaled edge profiles of N1 and N2.

    Both tails are put on the common axis ``f = (L_F - x) N^{1/6}`` with
    heights divided by ``N^{1/6}``; the deviation is measured relative to
    the N1 profile.
    """
    if not 50 <= n1 <= n2:
        raise ValueError("tail_collapse needs 50 <= N1 <= N2")
    f = np.linspace(f_range[0], f_range[1], points)
    a = scaled_tail(n1, f)
    b = scaled_tail(n2, f)
    return float(np.max(np.abs(b - a) / np.abs(a)))


@dataclass(frozen=True)
class EnvelopeWindow:
    """Fit window for :func:`envelope_fit`.

    Points need ``L_F - x >= edge_gap * N^{-1/6}`` and ``1 - x/L_F <= inner``.
    """

    edge_gap: float = 2.0
    inner: float = 0.3


@dataclass(frozen=True)
class EnvelopeFit:
    n_particles: int
    delta: float
    fit_window: tuple
    residual: float
    prefactor: float
    n_points: int
    samples: np.ndarray = field(repr=False)


def envelope_fit(n_particles, window=EnvelopeWindow()):
    """Fit ``|n0 - background| ~ C (1 - x/L_F)^(-delta)`` at the extrema near the edge.

    The background is the smooth part ``n_sc + 1/(2 pi L_F sqrt(1-u^2))``.
    Amplitudes are read off at every maximum and minimum inside the window and
    fitted by least squares in log-log form.
    """
    n = int(n_particles)
    if n < 100:
        raise ValueError("envelope fit needs N >= 100")
    root = fermi_root(n)
    x_lo = root * (1.0 - window.inner)
    x_hi = root - window.edge_gap / n ** (1.0 / 6.0)
    if x_hi <= x_lo:
        raise InsufficientDataError("envelope window is empty")
    pos = np.concatenate([_zeros_between(n, x_lo, x_hi), _zeros_between(n - 1, x_lo, x_hi)])
    pos = np.sort(pos)
    if pos.size < 6:
        raise InsufficientDataError(f"only {pos.size} extrema inside the envelope window")
    amp = np.abs(density_exact(pos, n) - smooth_background(pos, n))
    gap = 1.0 - pos / root
    design = np.column_stack([np.ones(pos.size), np.log(gap)])
    coef, *_ = np.linalg.lstsq(design, np.log(amp), rcond=None)
    resid = float(np.sqrt(np.mean((design @ coef - np.log(amp)) ** 2)))
    return EnvelopeFit(
        n_particles=n,
        delta=float(-coef[1]),
        fit_window=(float(x_lo), float(x_hi)),
        residual=resid,
        prefactor=float(math.exp(coef[0])),
        n_points=int(pos.size),
        samples=np.column_stack([pos, amp]),
    )


def _zeros_between(n, lo, hi):
    z = oscillator_zeros(n, above=lo)
    return z[z <= hi]


@dataclass(frozen=True)
class FriedelPeak:
    """Dominant wavenumber of a residual profile; ``k_peak`` is nan if none was found."""

    k_peak: float
    bin_width: float
    phase_sign: int
    k_grid: np.ndarray = field(repr=False)
    spectrum: np.ndarray = field(repr=False)


def spectral_peak(x, residual, k_max, min_bins=2.0, contrast=3.0, oversample=16):
    """Hann-windowed direct transform of ``residual`` and its dominant peak.

    The search starts ``min_bins`` bins above zero to stay clear of the
    leakage of slow trends.  A maximum on the edge of the search range or one
    less than ``contrast`` times the median level counts as no peak.
    """
    x = np.asarray(x, dtype=float)
    r = np.asarray(residual, dtype=float)
    r = r - r.mean()
    width = x[-1] - x[0]
    bin_width = 2.0 * math.pi / width
    taper = 0.5 * (1.0 - np.cos(2.0 * math.pi * (x - x[0]) / width))
    k = np.arange(min_bins * bin_width, k_max, bin_width / oversample)
    if k.size < 3:
        return FriedelPeak(math.nan, bin_width, 0, k, np.zeros_like(k))
    phase = np.outer(k, x)
    re = np.cos(phase) @ (taper * r)
    im = np.sin(phase) @ (taper * r)
    power = np.hypot(re, im)
    i = int(np.argmax(power))
    if i in (0, k.size - 1) or power[i] < contrast * np.median(power):
        return FriedelPeak(math.nan, bin_width, 0, k, power)
    # parabolic refinement on the oversampled grid
    a, b, c = power[i - 1], power[i], power[i + 1]
    denom = a - 2.0 * b + c
    shift = 0.5 * (a - c) / denom if denom != 0 else 0.0
    k_peak = float(k[i] + shift * (k[1] - k[0]))
    centre = 0.5 * (x[0] + x[-1])
    proj = float(np.sum(taper * r * np.cos(k_peak * (x - centre))))
    return FriedelPeak(k_peak, bin_width, int(np.sign(proj)), k, power)


def friedel_peak(n_particles, bulk_fraction=0.2, points=1025):
    """Spectral peak of ``n0 - n_sc`` over the central ``|x| <= bulk_fraction L_F``."""
    n = int(n_particles)
    if n < 20:
        raise ValueError("Friedel analysis needs N >= 20")
    root = fermi_root(n)
    half = bulk_fraction * root
    x = np.linspace(-half, half, points)
    resid = density_exact(x, n) - density_semiclassical(x, n)
    return spectral_peak(x, resid, k_max=4.0 * root)


def friedel_wavelength(n_particles, bulk_fraction=0.2):
    """Dominant central oscillation wavenumber (about 2 k_F); nan if no peak is found."""
    return friedel_peak(n_particles, bulk_fraction).k_peak


__all__ = [
    "ExtremaReport",
    "EdgeScalingReport",
    "EnvelopeFit",
    "EnvelopeWindow",
    "FriedelPeak",
    "oscillator_zeros",
    "find_extrema",
    "edge_scaling",
    "scaled_tail",
    "tail_collapse",
    "envelope_fit",
    "spectral_peak",
    "friedel_peak",
    "friedel_wavelength",
]
