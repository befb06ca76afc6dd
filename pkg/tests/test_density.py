import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fermitrap import density
from fermitrap.analysis import oscillator_zeros
from fermitrap.exceptions import DomainError
from fermitrap.model import fermi_root
from fermitrap.oracle import finite_diff, integrate
from fermitrap.specfun import airy_ai, airy_ai_prime, airy_first_zero, airy_variables, osc_psi

INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


def _norm(func, n, **kw):
    reach = fermi_root(n) + 12.0
    return integrate(lambda x: func(x, n), -reach, reach, panels=max(8, n // 2), abs_tol=1e-11, **kw).value


# --- exact density ----------------------------------------------------------------


def test_central_values_for_one_and_two_particles():
    assert density.density_exact(0.0, 1) == pytest.approx(INV_SQRT_PI, rel=1e-15)
    assert density.density_exact(0.0, 1) == pytest.approx(0.5641896, abs=1e-7)
    assert density.density_exact(0.0, 2) == pytest.approx(INV_SQRT_PI, rel=1e-15)
    assert density.density_direct_sum(0.0, 1) == pytest.approx(INV_SQRT_PI, rel=1e-15)


def test_seven_particles_against_literal_sum():
    ref = math.fsum(osc_psi(n, 1.3) ** 2 for n in range(7))
    assert abs(density.density_exact(1.3, 7) - ref) <= 1e-12


@given(st.integers(1, 50), st.floats(-14, 14))
def test_two_closed_forms_and_direct_sum_agree(n, x):
    a = density.density_exact(x, n)
    b = density.density_exact_upper(x, n)
    c = density.density_direct_sum(x, n)
    assert abs(a - b) <= 1e-12 and abs(a - c) <= 1e-12


@given(st.integers(1, 400), st.lists(st.floats(-40, 40), min_size=1, max_size=30))
def test_positivity(n, xs):
    assert np.all(density.density_exact(np.array(xs), n) >= -1e-12)


@pytest.mark.parametrize("n", list(range(1, 51)) + [100, 200, 1000])
def test_sum_rule(n):
    assert _norm(density.density_exact, n) == pytest.approx(n, abs=1e-8)


@pytest.mark.parametrize("n", [1, 7, 30])
def test_direct_sum_norm(n):
    assert _norm(density.density_direct_sum, n) == pytest.approx(n, abs=1e-8)


def test_sample_profile_is_even_on_symmetric_grid():
    half = np.linspace(0.04, 8, 200)
    x = np.concatenate([-half[::-1], [0.0], half])
    prof = density.sample(x, 9)
    np.testing.assert_array_equal(prof.values, prof.values[::-1])
    assert prof.meta["method"] == "exact" and prof.meta["N"] == 9


# --- derivatives ------------------------------------------------------------------


@given(st.integers(1, 200))
def test_gradient_vanishes_at_origin(n):
    assert density.density_gradient(0.0, n) == 0.0


def test_gradient_and_curvature_against_finite_differences():
    fd1 = finite_diff(lambda s: density.density_exact(s, 9), 0.7, order=1, h=1e-2)
    assert density.density_gradient(0.7, 9) == pytest.approx(fd1, abs=1e-7)
    fd2 = finite_diff(lambda s: density.density_exact(s, 9), 0.7, order=2, h=1e-2)
    assert density.density_curvature(0.7, 9) == pytest.approx(fd2, abs=1e-5)


@pytest.mark.parametrize("n", [3, 8, 25])
def test_gradient_changes_sign_at_zeros_and_curvature_classifies(n):
    eps = 1e-6
    for z in oscillator_zeros(n):
        left = density.density_gradient(z - eps, n)
        right = density.density_gradient(z + eps, n)
        assert left > 0 > right
        assert density.density_curvature(z, n) < 0
    for z in oscillator_zeros(n - 1):
        assert density.density_curvature(z, n) > 0


# --- semiclassical ----------------------------------------------------------------


@given(st.integers(1, 10**5))
def test_semiclassical_centre_and_edge(n):
    root = fermi_root(n)
    assert density.density_semiclassical(0.0, n) == root / math.pi
    assert density.density_semiclassical(root, n) == 0.0
    assert density.density_semiclassical(root * 1.5, n) == 0.0


@pytest.mark.parametrize("n", [1, 10, 100])
def test_semiclassical_norm_is_half_short(n):
    root = fermi_root(n)
    val = integrate(lambda x: density.density_semiclassical(x, n), -root, root, abs_tol=1e-12).value
    assert val == pytest.approx(n - 0.5, abs=1e-8)


@pytest.mark.parametrize("n", [5, 20, 60])
def test_missing_half_fermion(n):
    root = fermi_root(n)
    reach = root + 12.0

    def gap(x):
        return density.density_exact(x, n) - density.density_semiclassical(x, n)

    val = integrate(gap, -reach, reach, panels=max(8, n // 2), breakpoints=(-root, root), abs_tol=1e-11).value
    assert val == pytest.approx(0.5, abs=1e-6)


# --- Airy approximants ------------------------------------------------------------


def test_airy_uniform_examples():
    n = 100
    root = fermi_root(n)
    assert density.density_airy_uniform(0.0, n) == pytest.approx(density.density_exact(0.0, n), rel=5e-3)
    x = 0.9 * root
    assert density.density_airy_uniform(x, n) == pytest.approx(density.density_exact(x, n), rel=1e-2)


def test_turning_point_variable_vanishes_at_turning_point():
    for n in (0, 5, 1000):
        t, phi, _ = airy_variables(n, math.sqrt(2 * n + 1))
        assert t == 0.0 and phi == 0.0


def test_airy_uniform_domain():
    with pytest.raises(DomainError):
        density.density_airy_uniform(0.0, 10)
    with pytest.raises(DomainError):
        density.density_airy_uniform(fermi_root(50), 50)


def test_edge_density_at_last_maximum():
    n = 10_000
    z_last = oscillator_zeros(n, count=1)[-1]
    const = math.sqrt(2.0) * airy_ai_prime(airy_first_zero()) ** 2
    assert const == pytest.approx(0.7, rel=0.01)
    assert density.density_edge(z_last, n) / n ** (1 / 6) == pytest.approx(const, rel=0.02)


def _edge_point_error(n):
    root = fermi_root(n)
    t0, _, _ = airy_variables(n - 1, root)
    pred = math.sqrt(2.0) * n ** (1 / 6) * (airy_ai_prime(t0) ** 2 - t0 * airy_ai(t0) ** 2)
    assert density.density_edge(root, n) == pytest.approx(pred, rel=1e-14)
    return abs(pred - density.density_exact(root, n)) / density.density_exact(root, n)


def test_edge_point_error_small_and_shrinking():
    errs = [_edge_point_error(n) for n in (100, 1000, 10_000)]
    assert errs[-1] < 0.05
    assert errs[0] > errs[1] > errs[2]


@pytest.mark.xfail(strict=True, reason="turning-point value is 4.2% off at N=1e4; the leading edge form has an O(N^-1/3) correction")
def test_edge_point_within_three_percent():
    assert _edge_point_error(10_000) < 0.03


def test_edge_window_is_enforced():
    n = 100
    lo, hi = density.edge_window(n)
    density.density_edge(np.linspace(lo, hi, 5), n)
    with pytest.raises(DomainError):
        density.density_edge(lo - 0.1, n)
    with pytest.raises(DomainError):
        density.density_edge(hi + 1e-6, n)


@given(st.floats(1.0, 9.0))
def test_edge_profile_collapses_across_n(f):
    a = density.density_edge(fermi_root(1000) - f / 1000 ** (1 / 6), 1000) / 1000 ** (1 / 6)
    b = density.density_edge(fermi_root(8000) - f / 8000 ** (1 / 6), 8000) / 8000 ** (1 / 6)
    assert a == pytest.approx(b, rel=1e-2, abs=1e-3)


# --- bulk and split ---------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 10, 200])
def test_bulk_centre_even(n):
    assert density.density_bulk(0.0, n) == pytest.approx(fermi_root(n) / math.pi, rel=1e-15)


@pytest.mark.parametrize("n", [3, 11, 201])
def test_bulk_centre_odd(n):
    root = fermi_root(n)
    assert density.density_bulk(0.0, n) == pytest.approx(root / math.pi + 1.0 / (math.pi * root), rel=1e-15)


def _bulk_error(n):
    x = np.linspace(-2, 2, 401)
    return float(np.max(np.abs(density.density_bulk(x, n) - density.density_exact(x, n))))


def test_bulk_tracks_exact_density():
    # the residual is dominated by the neglected curvature of the background
    assert _bulk_error(200) < 4.0 / (2 * math.pi * fermi_root(200))
    assert _bulk_error(800) < _bulk_error(200)


@pytest.mark.xfail(strict=True, reason="N=200 residual is 0.032; the neglected x^2 term of the background exceeds 2/(2 pi L_F)")
def test_bulk_example_bound():
    assert _bulk_error(200) <= 2.0 / (2 * math.pi * fermi_root(200))


def test_bulk_window():
    with pytest.raises(DomainError):
        density.density_bulk(0.25 * fermi_root(100), 100)


def test_oscillation_split_examples():
    n = 100
    root = fermi_root(n)
    x = 0.5 * root
    bg, osc = density.density_oscillation_split(x, n)
    assert abs(bg + osc - density.density_exact(x, n)) <= 1e-3 * root
    s = math.sqrt(1 - 0.25)
    assert abs(osc) <= 1.0 / (2 * math.pi * root * s) * (1 + 1e-12)
    # at the centre the oscillating part is the bulk cosine
    xs = np.linspace(-0.5, 0.5, 11)
    bg0, osc0 = density.density_oscillation_split(xs, n)
    sign = 1.0 if n % 2 == 0 else -1.0
    np.testing.assert_allclose(osc0, -sign * np.cos(2 * root * xs) / (2 * math.pi * root), atol=2e-3)


def test_oscillation_split_window():
    with pytest.raises(DomainError):
        density.density_oscillation_split(fermi_root(100) - 0.5, 100)


# --- box reference ----------------------------------------------------------------


def test_box_midpoint_and_norm():
    n, width = 100, 10.0
    k0 = math.pi * n / width
    assert density.box_density(width / 2, n, width) == pytest.approx(k0 / math.pi, rel=1e-14)
    eps = 1e-9
    val = integrate(lambda x: density.box_density(x, n, width), eps, width - eps, panels=200, abs_tol=1e-7, rel_tol=1e-7).value
    assert val == pytest.approx(n, rel=0.01)


def test_box_wall_envelope():
    # peak-to-peak swing of the wall ripple, fitted as C / x near the wall
    n, width = 2000, 1.0
    k0 = math.pi * n / width
    x = np.linspace(1e-3, 0.05, 20001)
    dev = density.box_density(x, n, width) - k0 / math.pi
    period = math.pi / k0
    centres, swings = [], []
    for lo in np.arange(x[0], x[-1] - period, period):
        sel = (x >= lo) & (x < lo + period)
        centres.append(lo + 0.5 * period)
        swings.append(dev[sel].max() - dev[sel].min())
    c = np.median(np.array(swings) * np.array(centres))
    assert c == pytest.approx(1.0 / math.pi, rel=0.10)
    assert density.box_envelope(0.5) == pytest.approx(2.0 / math.pi)


def test_box_boundary_is_rejected():
    with pytest.raises(DomainError):
        density.box_density(0.0, 10, 1.0)
    with pytest.raises(DomainError):
        density.box_density(1.0, 10, 1.0)
