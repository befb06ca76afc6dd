"""Fourier-space density ``Fn(k) = int dx exp(ikx) n(x)``.

The exact transform is a damped Laguerre polynomial; the semiclassical one
is the transform of a semicircle.  Wavenumbers are in units of alpha.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .exceptions import NonConvergenceError
from .model import fermi_root
from .oracle import QuadratureSpec, quad_integrate
from .profiles import SpectralProfile
from .specfun import _exp_neg, _square_parts, bessel_j1, damped_laguerre

DEFAULT_K_POINTS = 512
DEFAULT_K_SPAN = 3.0  # in units of k_F
SUM_RULE_ZEROS = 4000


def _check_n(n_particles):
    if isinstance(n_particles, bool) or int(n_particles) != n_particles or n_particles < 1:
        raise ValueError(f"particle number must be an integer >= 1, got {n_particles!r}")
    return int(n_particles)


def _out(val):
    return float(val) if np.ndim(val) == 0 else val


def ft_exact(k, n_particles):
    """``exp(-k^2/4) L_{N-1}^{(1)}(k^2/2)``; equals N exactly at k = 0."""
    n = _check_n(n_particles)
    k = np.abs(np.asarray(k, dtype=float))
    hi, lo = _square_parts(k)
    seed = _exp_neg(0.25 * hi, 0.25 * lo)
    return _out(damped_laguerre(n - 1, 1.0, 0.5 * hi, seed))


def ft_semiclassical(k, n_particles):
    """``(k_F/k) J1(k L_F)``, with the limit ``N - 1/2`` at k = 0."""
    n = _check_n(n_particles)
    root = fermi_root(n)
    k = np.abs(np.asarray(k, dtype=float))
    small = k * root < 1e-8
    safe = np.where(small, 1.0, k)
    val = np.where(small, 0.5 * root * root, root * bessel_j1(safe * root) / safe)
    return _out(val)


def default_k_grid(n_particles, points=DEFAULT_K_POINTS, span=DEFAULT_K_SPAN):
    return np.linspace(0.0, span * fermi_root(n_particles), points)


METHODS = {"exact": ft_exact, "semiclassical": ft_semiclassical}


def sample(k_grid, n_particles, method="exact"):
    if method not in METHODS:
        raise ValueError(f"unknown Fourier method {method!r}; choose from {sorted(METHODS)}")
    k = np.asarray(k_grid, dtype=float)
    meta = {"N": int(n_particles), "method": method, "generated-by": "fermitrap.spectral"}
    return SpectralProfile(k, np.asarray(METHODS[method](k, n_particles), dtype=float), meta=meta)


def ft_sum_rule(n_particles, method="exact", rel_tol=1e-9):
    """``int dk Fn(k)`` over the whole real line.

    The exact transform decays like a Gaussian beyond ``2 k_F`` and is
    integrated by adaptive quadrature.  The semiclassical transform has a
    slowly decaying Bessel tail; it is integrated between consecutive zeros
    of ``J1`` and the alternating partial sums are accelerated by repeated
    averaging.

    Raises
    ------
    NonConvergenceError
        When the quadrature or the tail acceleration misses ``rel_tol``.
    """
    n = _check_n(n_particles)
    if method == "exact":
        root = fermi_root(n)
        top = 2.0 * math.sqrt(2.0 * n + 1.0) + 40.0
        spec = QuadratureSpec(
            lo=0.0, hi=top, panels=max(8, 2 * n), abs_tol=1e-14, rel_tol=rel_tol, max_panels=200_000
        )
        res = quad_integrate(lambda k: ft_exact(k, n), spec)
        return 2.0 * res.value
    if method == "semiclassical":
        root = fermi_root(n)
        return 2.0 * root * _bessel_ratio_integral(rel_tol)
    raise ValueError(f"unknown sum-rule method {method!r}")


def _bessel_ratio_integral(rel_tol, zeros=SUM_RULE_ZEROS):
    """``int_0^inf J1(s)/s ds`` by zero-to-zero quadrature plus averaging."""
    cuts = np.concatenate([[0.0], special.jn_zeros(1, zeros)])

    def integrand(s):
        safe = np.where(s == 0.0, 1.0, s)
        return np.where(s == 0.0, 0.5, bessel_j1(safe) / safe)

    pieces = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        res = quad_integrate(integrand, QuadratureSpec(lo=a, hi=b, panels=1, abs_tol=1e-16, rel_tol=1e-15))
        pieces.append(res.value)
    partial = np.cumsum(pieces)
    # repeated averaging of the last alternating partial sums
    tail = partial[-40:]
    estimates = []
    while tail.size > 1:
        tail = 0.5 * (tail[1:] + tail[:-1])
        estimates.append(tail[-1])
    err = abs(estimates[-1] - estimates[-2])
    if err > rel_tol * abs(estimates[-1]):
        raise NonConvergenceError(
            "Bessel tail acceleration did not converge", estimate=estimates[-1], error=err
        )
    return float(estimates[-1])


def smoothed_difference(k, n_particles):
    """``ft_exact - ft_semiclassical`` averaged over one slit period ``2 pi / L_F``.

    The average removes the ringing of the semiclassical transform and
    leaves the Friedel hump.
    """
    n = _check_n(n_particles)
    period = 2.0 * math.pi / fermi_root(n)
    k = np.asarray(k, dtype=float)
    nodes, weights = np.polynomial.legendre.leggauss(64)
    offsets = 0.5 * period * nodes
    pts = k[..., None] + offsets
    diff = ft_exact(pts, n) - ft_semiclassical(pts, n)
    return _out((diff * (0.5 * weights)).sum(axis=-1))


def hump_locate(n_particles, points=4001):
    """Location and relative height of the Friedel hump.

    Returns ``(k_hump, height / N)`` for the largest local maximum of
    :func:`smoothed_difference` in ``(k_F, 2.5 k_F)``, or ``(nan, nan)`` when
    the maximum sits on the boundary of that range.
    """
    n = _check_n(n_particles)
    if n < 10:
        raise ValueError("hump search needs N >= 10")
    kf = fermi_root(n)
    k = np.linspace(kf, 2.5 * kf, points)
    d = smoothed_difference(k, n)
    i = int(np.argmax(d))
    if i in (0, k.size - 1):
        return math.nan, math.nan
    a, b, c = d[i - 1], d[i], d[i + 1]
    denom = a - 2.0 * b + c
    shift = 0.5 * (a - c) / denom if denom != 0 else 0.0
    k_hump = float(k[i] + shift * (k[1] - k[0]))
    return k_hump, float(smoothed_difference(k_hump, n)) / n


__all__ = [
    "ft_exact",
    "ft_semiclassical",
    "ft_sum_rule",
    "hump_locate",
    "smoothed_difference",
    "default_k_grid",
    "sample",
    "METHODS",
]
