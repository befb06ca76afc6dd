"""Special functions on dimensionless arguments.

Harmonic-oscillator functions ``psi_n(x)`` (alpha = 1) come from the upward
three-term recurrence on the *normalized* functions.  Every point carries its
own power-of-two exponent, so neither the Gaussian factor nor the growth
through the classically forbidden region can over- or underflow before the
final rounding.  Damped associated Laguerre polynomials reuse the same
mantissa/exponent scheme.

Airy and Bessel values are delegated to :mod:`scipy.special` behind the
range checks of this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache

import numpy as np
from scipy import special

from .exceptions import CapabilityError, DomainError

MAX_LEVEL = 1_000_000
AIRY_RANGE = (-1.0e5, 100.0)
LAGUERRE_SUPERSCRIPTS = (0.5, 1.0)

SQRT2 = math.sqrt(2.0)
PI_M14 = math.pi**-0.25

_RESCALE_EXP = 400
_RESCALE_LIMIT = 2.0**_RESCALE_EXP
_SPLITTER = 134217729.0  # 2**27 + 1, Dekker split
_X_CLIP = 1.0e8  # psi_n(1e8) underflows for every supported n


def _ln2_parts():
    # k * hi is exact for |k| < 2**25; covers x**2/2 up to ~2e7.
    with localcontext() as ctx:
        ctx.prec = 60
        ln2 = Decimal(2).ln()
        hi = math.ldexp(int(ln2 * (1 << 28)), -28)
        lo = float(ln2 - Decimal(hi))
    return hi, lo


_LN2_HI, _LN2_LO = _ln2_parts()
_INV_LN2 = 1.0 / math.log(2.0)


@lru_cache(maxsize=8)
def _sqrt_table(size):
    return np.sqrt(np.arange(size, dtype=float)).tolist()


def _sqrt_upto(n):
    # round up so nearby sizes share one cached table
    size = 1 << max(10, int(n + 2).bit_length())
    return _sqrt_table(size)


def _exp_neg(h_hi, h_lo):
    """Return ``(m, e)`` with ``m * 2**e == exp(-(h_hi + h_lo))``."""
    k = np.rint(h_hi * _INV_LN2)
    r = (h_hi - k * _LN2_HI) - k * _LN2_LO + h_lo
    return np.exp(-r), -k.astype(np.int64)


def _square_parts(x):
    """Error-free square: ``hi + lo == x*x`` exactly."""
    hi = x * x
    c = _SPLITTER * x
    xh = c - (c - x)
    xl = x - xh
    lo = ((xh * xh - hi) + 2.0 * xh * xl) + xl * xl
    return hi, lo


def gauss_seed(x):
    """``exp(-x**2/2)`` as a (mantissa, exponent) pair, accurate for large |x|."""
    hi, lo = _square_parts(x)
    return _exp_neg(0.5 * hi, 0.5 * lo)


def _points(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("positions must be finite")
    return arr


def check_level(n, limit=MAX_LEVEL):
    if isinstance(n, (bool, np.bool_)) or int(n) != n or n < 0:
        raise ValueError(f"level index must be a non-negative integer, got {n!r}")
    if n > limit:
        raise CapabilityError(f"level index {n} exceeds supported maximum {limit}")
    return int(n)


def walk_psi(x, n_max):
    """Yield ``(n, mantissa, exponent)`` for ``n = 0 .. n_max``.

    ``mantissa * 2**exponent`` equals ``psi_n(x)``.  The yielded arrays are
    recycled by the next step, so consumers must use them immediately.
    """
    x = np.clip(np.asarray(x, dtype=float).ravel(), -_X_CLIP, _X_CLIP)
    m0, e = gauss_seed(x)
    cur = PI_M14 * m0
    prev = np.zeros_like(cur)
    yield 0, cur, e
    if n_max == 0:
        return
    sq = _sqrt_upto(n_max)
    s2x = SQRT2 * x
    for n in range(n_max):
        nxt = (s2x * cur - sq[n] * prev) / sq[n + 1]
        if np.abs(nxt).max() > _RESCALE_LIMIT:
            big = np.abs(nxt) > _RESCALE_LIMIT
            nxt[big] = np.ldexp(nxt[big], -_RESCALE_EXP)
            cur[big] = np.ldexp(cur[big], -_RESCALE_EXP)
            e = e + _RESCALE_EXP * big
        prev, cur = cur, nxt
        yield n + 1, cur, e


def psi_levels(levels, x):
    """Values of ``psi_n(x)`` for each ``n`` in ``levels``.

    Returns an array of shape ``(len(levels),) + np.shape(x)``.  Negative
    levels are allowed and evaluate to zero (``psi_{-1} = 0``).
    """
    arr = _points(x)
    levels = [int(v) for v in levels]
    for v in levels:
        if v >= 0:
            check_level(v)
    wanted = {}
    for i, v in enumerate(levels):
        wanted.setdefault(v, []).append(i)
    out = np.zeros((len(levels), arr.size))
    top = max(levels)
    if top >= 0:
        for n, m, e in walk_psi(arr, top):
            if n in wanted:
                val = np.ldexp(m, e)
                for i in wanted[n]:
                    out[i] = val
    return out.reshape((len(levels),) + arr.shape)


def osc_psi(n, x):
    """Normalized oscillator function ``psi_n(x)`` with ``alpha = 1``.

    Parameters
    ----------
    n : int
        Level index, ``0 <= n <= MAX_LEVEL``.
    x : float or array_like
        Dimensionless position ``alpha * z``.

    Returns
    -------
    float or ndarray
        ``psi_n(x)`` in units of ``sqrt(alpha)``.  Values too small for a
        double underflow gracefully to zero.
    """
    check_level(n)
    val = psi_levels([n], x)[0]
    return float(val) if val.ndim == 0 else val


@dataclass(frozen=True)
class OscEvalBatch:
    """``psi_0 .. psi_{n_max}`` evaluated at the same position(s).

    ``values[n]`` holds ``psi_n(x)``; its trailing shape is ``np.shape(x)``.
    """

    x: np.ndarray
    values: np.ndarray

    @property
    def n_max(self):
        return self.values.shape[0] - 1

    def recurrence_residual(self):
        """Residual of the three-term recurrence for n = 0 .. n_max-1."""
        v = self.values
        n = np.arange(v.shape[0], dtype=float).reshape((-1,) + (1,) * (v.ndim - 1))
        lower = np.concatenate([np.zeros_like(v[:1]), v[:-2]], axis=0)
        return (
            np.sqrt(n[:-1] + 1.0) * v[1:]
            - SQRT2 * self.x * v[:-1]
            + np.sqrt(n[:-1]) * lower
        )


def osc_psi_batch(n_max, x):
    """All oscillator functions up to ``n_max`` from one recurrence pass."""
    check_level(n_max)
    arr = _points(x)
    out = np.empty((n_max + 1, arr.size))
    for n, m, e in walk_psi(arr, n_max):
        out[n] = np.ldexp(m, e)
    return OscEvalBatch(x=arr, values=out.reshape((n_max + 1,) + arr.shape))


def osc_psi_deriv(n, x):
    """``d psi_n / dx = -x psi_n + sqrt(2n) psi_{n-1}``."""
    check_level(n)
    arr = _points(x)
    lower, upper = psi_levels([n - 1, n], arr)
    val = -arr * upper + math.sqrt(2.0 * n) * lower
    return float(val) if val.ndim == 0 else val


def psi_square_sum(n_count, x):
    """``sum_{n < n_count} psi_n(x)**2`` accumulated in recurrence order."""
    arr = _points(x)
    acc = np.zeros(arr.size)
    if n_count <= 0:
        return acc.reshape(arr.shape)
    check_level(n_count - 1)
    for _, m, e in walk_psi(arr, n_count - 1):
        v = np.ldexp(m, e)
        acc += v * v
    return acc.reshape(arr.shape)


# --- uniform (Airy-type) asymptotics -------------------------------------------------


def _one_minus_sinc_part(s):
    """``s - sin(s)`` without cancellation for small ``s``."""
    s = np.asarray(s, dtype=float)
    shape = s.shape
    s = s.ravel()
    out = s - np.sin(s)
    small = s < 0.5
    if np.any(small):
        u = s[small]
        u2 = u * u
        # u^3 (1/3! - u^2 (1/5! - u^2 (1/7! - ... - u^2/13!)))
        poly = 1.0 / 6227020800.0
        for c in (1.0 / 39916800.0, 1.0 / 362880.0, 1.0 / 5040.0, 1.0 / 120.0, 1.0 / 6.0):
            poly = c - u2 * poly
        out[small] = u * u2 * poly
    return out.reshape(shape)


def airy_variables(n, x):
    """Turning-point variables for level ``n`` at ``0 <= x <= L_n``.

    Returns ``(t, phi, ratio)`` where ``cos(phi) = x / L_n``,
    ``-t = [1.5 (n/2 + 1/4)(2 phi - sin 2 phi)]**(2/3)`` and
    ``ratio = (-t)**(1/4) / sqrt(sin phi)`` (finite limit at ``phi = 0``).
    """
    x = np.asarray(x, dtype=float)
    big_l = math.sqrt(2.0 * n + 1.0)
    if np.any(x < 0.0) or np.any(x > big_l * (1.0 + 1e-15)):
        raise DomainError(f"Airy variables of level {n} need 0 <= x <= L_n = {big_l}")
    gap = np.clip((big_l - x) / big_l, 0.0, 1.0)
    phi = 2.0 * np.arcsin(np.sqrt(0.5 * gap))
    g = _one_minus_sinc_part(2.0 * phi)
    neg_t = (1.5 * (0.5 * n + 0.25) * g) ** (2.0 / 3.0)
    sin_phi = np.sin(phi)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(
            phi > 0.0,
            neg_t**0.25 / np.sqrt(sin_phi),
            (n + 0.5) ** (1.0 / 6.0),
        )
    return -neg_t, phi, ratio


def osc_psi_airy(n, x):
    """Uniform large-``n`` approximant of ``psi_n`` inside ``|x| <= L_n``."""
    if n < 1:
        raise DomainError("the uniform approximant needs n >= 1")
    x = np.asarray(x, dtype=float)
    t, _, ratio = airy_variables(n, np.abs(x))
    val = (2.0 / n) ** 0.25 * ratio * airy_ai(t)
    if n % 2:
        val = np.where(x < 0.0, -val, val)
    return float(val) if val.ndim == 0 else val


# --- Airy, Laguerre, Bessel -----------------------------------------------------------


def _check_airy(t):
    t = np.asarray(t, dtype=float)
    lo, hi = AIRY_RANGE
    if not np.all((t >= lo) & (t <= hi)):
        raise CapabilityError(f"Airy argument outside supported range [{lo}, {hi}]")
    return t


def _scalar_or_array(v):
    return float(v) if np.ndim(v) == 0 else v


def airy_ai(t):
    """Airy function Ai(t)."""
    ai, _, _, _ = special.airy(_check_airy(t))
    return _scalar_or_array(ai)


def airy_ai_prime(t):
    """Derivative Ai'(t)."""
    _, aip, _, _ = special.airy(_check_airy(t))
    return _scalar_or_array(aip)


def airy_ai_second(t):
    """Second derivative from the Airy equation, ``Ai''(t) = t Ai(t)``."""
    t = _check_airy(t)
    return _scalar_or_array(t * special.airy(t)[0])


@lru_cache(maxsize=1)
def airy_first_zero():
    """First (largest) zero ``a_1`` of Ai, refined by Newton from -2.3."""
    t = -2.3
    for _ in range(50):
        ai, aip, _, _ = special.airy(t)
        step = ai / aip
        t -= step
        if abs(step) < 1e-15:
            break
    return float(t)


def _check_superscript(a):
    if not any(a == s for s in LAGUERRE_SUPERSCRIPTS):
        raise CapabilityError(f"Laguerre superscript {a!r} not in {LAGUERRE_SUPERSCRIPTS}")
    return float(a)


def walk_laguerre(a, y, n_max, seed=None):
    """Yield ``(k, mantissa, exponent)`` for ``s * L_k^{(a)}(y)``, ``k <= n_max``.

    ``seed`` is an optional (mantissa, exponent) damping factor ``s``; it is
    folded into the recurrence so ``exp(-y/2) L_k(y)`` never overflows.
    """
    y = np.asarray(y, dtype=float).ravel()
    if seed is None:
        cur, e = np.ones_like(y), np.zeros(y.shape, dtype=np.int64)
    else:
        cur = np.array(seed[0], dtype=float).ravel().copy()
        e = np.asarray(seed[1], dtype=np.int64).ravel()
    prev = np.zeros_like(cur)
    yield 0, cur, e
    for k in range(n_max):
        nxt = ((2.0 * k + 1.0 + a - y) * cur - (k + a) * prev) / (k + 1.0)
        if np.abs(nxt).max() > _RESCALE_LIMIT:
            big = np.abs(nxt) > _RESCALE_LIMIT
            nxt[big] = np.ldexp(nxt[big], -_RESCALE_EXP)
            cur[big] = np.ldexp(cur[big], -_RESCALE_EXP)
            e = e + _RESCALE_EXP * big
        prev, cur = cur, nxt
        yield k + 1, cur, e


def damped_laguerre(n, a, y, seed):
    """``s * L_n^{(a)}(y)`` for a (mantissa, exponent) damping factor ``s``."""
    y = np.asarray(y, dtype=float)
    m = e = None
    for _, m, e in walk_laguerre(a, y, n, seed=seed):
        pass
    with np.errstate(over="ignore"):
        return np.ldexp(m, e).reshape(y.shape)


def laguerre_assoc(n, a, x):
    """Associated Laguerre polynomial ``L_n^{(a)}(x)`` for ``a`` in {1/2, 1}.

    Upward recurrence; values beyond the double range come back as ``inf``.
    """
    check_level(n)
    a = _check_superscript(a)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0) or not np.all(np.isfinite(x)):
        raise ValueError("Laguerre argument must be finite and >= 0")
    val = damped_laguerre(n, a, x, seed=None)
    return _scalar_or_array(val)


def bessel_j1(x):
    """Bessel function of the first kind, order one, for ``x >= 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("bessel_j1 expects x >= 0")
    return _scalar_or_array(special.j1(x))
