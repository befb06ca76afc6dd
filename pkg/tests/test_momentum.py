import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fermitrap import momentum
from fermitrap.density import density_exact
from fermitrap.exceptions import DomainError
from fermitrap.model import fermi_root
from fermitrap.oracle import integrate
from fermitrap.profiles import MomentumProfile
from fermitrap.specfun import psi_levels

POW2 = st.sampled_from([0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0])


def test_ground_state_momentum_density():
    assert momentum.momentum_density(0.0, 1) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)


@given(st.integers(1, 300), POW2, st.lists(st.floats(-60, 60), min_size=1, max_size=20))
def test_isomorphism_bit_identical_for_binary_alpha(n, alpha, ks):
    k = np.array(ks)
    lhs = alpha**2 * momentum.momentum_density(k, n, alpha)
    rhs = momentum.density_physical(k / alpha**2, n, alpha)
    np.testing.assert_array_equal(lhs, rhs)


@given(st.integers(1, 300), st.floats(0.05, 20), st.floats(-60, 60))
def test_isomorphism_any_alpha(n, alpha, k):
    lhs = alpha**2 * momentum.momentum_density(k, n, alpha)
    rhs = momentum.density_physical(k / alpha**2, n, alpha)
    assert lhs == pytest.approx(rhs, rel=1e-14, abs=1e-300)


def test_dimensionless_momentum_density_is_position_density():
    k = np.linspace(-9, 9, 101)
    np.testing.assert_array_equal(momentum.momentum_density(k, 12), density_exact(k, 12))


@pytest.mark.parametrize("n,alpha", [(1, 1.0), (7, 0.5), (40, 2.0), (200, 1.0), (25, 0.37)])
def test_momentum_sum_rule(n, alpha):
    reach = alpha * (fermi_root(n) + 12.0)
    val = integrate(lambda k: momentum.momentum_density(k, n, alpha), -reach, reach, panels=max(8, n // 2), abs_tol=1e-11)
    assert val.value == pytest.approx(n, abs=1e-8)


# --- occupation step --------------------------------------------------------------


def test_step_examples():
    assert momentum.momentum_step(1.0, 5) == 1
    for n in (1, 5, 40):
        assert momentum.momentum_step(math.sqrt(2 * n + 1), n) == 0
        assert momentum.momentum_step(fermi_root(n), n) == 1


@given(st.integers(1, 500), st.floats(0.1, 10))
def test_step_on_grid(n, alpha):
    levels = np.arange(0, 2 * n)
    k = alpha * np.sqrt(2 * levels + 1.0)
    np.testing.assert_array_equal(momentum.momentum_step(k, n, alpha), (levels < n).astype(int))


@pytest.mark.parametrize("k", [0.0, 1.2, 2.0, -1.0])
def test_step_off_grid_is_domain_error(k):
    with pytest.raises(DomainError):
        momentum.momentum_step(k, 5)


# --- correlator -------------------------------------------------------------------


def test_correlator_single_particle_origin():
    assert momentum.correlator_centered(0.0, 1) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)


@given(st.integers(1, 40), st.floats(-12, 12))
def test_correlator_closed_form_matches_direct_sum(n, x):
    vals = psi_levels(range(n), np.array([x, 0.0]))
    direct = float(np.dot(vals[:, 0], vals[:, 1]))
    assert momentum.correlator_centered(x, n) == pytest.approx(direct, abs=1e-10)


@given(st.integers(1, 400))
def test_correlator_diagonal_is_central_density(n):
    assert momentum.correlator_centered(0.0, n) == pytest.approx(density_exact(0.0, n), rel=1e-12)


@given(st.integers(1, 200), st.floats(0, 20))
def test_correlator_is_even(n, x):
    assert momentum.correlator_centered(-x, n) == momentum.correlator_centered(x, n)


def test_asymptotic_correlator_limits():
    n = 100
    kf = fermi_root(n)
    assert momentum.correlator_asymptotic(0.0, n) == kf / math.pi
    zeros = np.arange(1, 6) * math.pi / kf
    assert np.max(np.abs(momentum.correlator_asymptotic(zeros, n))) < 1e-14
    with pytest.raises(DomainError):
        momentum.correlator_asymptotic(0.5, 49)


def test_asymptotic_correlator_band_odd_n():
    n = 101
    x = np.linspace(0.05, 0.5, 200)
    err = np.abs(momentum.correlator_centered(x, n) - momentum.correlator_asymptotic(x, n))
    assert err.max() < 1 / math.sqrt(n)


def _asymptotic_error(n):
    x = np.linspace(0.1, 1.0, 901)
    return float(np.max(np.abs(momentum.correlator_centered(x, n) - momentum.correlator_asymptotic(x, n))))


def test_asymptotic_error_shrinks_like_inverse_root_n():
    assert _asymptotic_error(100) / _asymptotic_error(400) == pytest.approx(2.0, rel=0.3)


def test_sample_profile():
    prof = momentum.sample(np.linspace(-5, 5, 11), 3, alpha=2.0)
    assert isinstance(prof, MomentumProfile) and prof.meta["alpha"] == 2.0
    with pytest.raises(ValueError):
        momentum.sample([0.0, 1.0], 3, quantity="nope")
