import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nongauss import cumulants
from nongauss.errors import TooFewSamples
from nongauss.util import rng_for


def gaussian_raw_moments(mean, var, k=8):
    # recursion mu_n = mean mu_{n-1} + (n-1) var mu_{n-2}
    mu = [1.0, mean]
    for n in range(2, k + 1):
        mu.append(mean * mu[n - 1] + (n - 1) * var * mu[n - 2])
    return np.array(mu[1:])


def test_gaussian_moments_give_gaussian_cumulants():
    kap = cumulants.cumulants_from_moments(gaussian_raw_moments(0.7, 2.3))
    assert abs(kap[1] - 0.7) < 1e-12
    assert abs(kap[2] - 2.3) < 1e-12
    for order in range(3, 9):
        assert abs(kap[order]) < 1e-8


def test_poisson_cumulants_all_equal_rate():
    # Poisson raw moments via Touchard recursion mu_{n+1} = lam sum_k C(n,k) mu_k
    lam = 1.7
    mu = [1.0]
    for n in range(8):
        mu.append(lam * sum(math.comb(n, k) * mu[k] for k in range(n + 1)))
    kap = cumulants.cumulants_from_moments(np.array(mu[1:]))
    for order in range(1, 9):
        assert abs(kap[order] - lam) < 1e-9


def test_kappa4_explicit_matches_recursion():
    rng = rng_for(5)
    for _ in range(20):
        mu = rng.normal(size=4) + np.array([0.0, 2.0, 0.0, 6.0])
        kap = cumulants.cumulants_from_moments(mu, source="estimated")
        assert abs(cumulants.kappa4_from_moments(mu) - kap[4]) < 1e-10


def test_exact_negative_variance_rejected():
    with pytest.raises(ValueError):
        cumulants.CumulantSet(kappa=np.array([0.0, -1.0, 0, 0, 0, 0, 0, 0]))


def test_k_statistics_known_small_sample():
    # hand-checked on {1, 2, 3, 4}: k2 = 5/3, k3 = 0, k4 = -10/3
    ks = cumulants.k_statistics(np.array([1.0, 2.0, 3.0, 4.0]))
    assert abs(ks.k2 - 5.0 / 3.0) < 1e-12
    assert abs(ks.k3) < 1e-12
    assert abs(ks.k4 + 10.0 / 3.0) < 1e-12


def test_k_statistics_too_few():
    with pytest.raises(TooFewSamples):
        cumulants.k_statistics(np.array([1.0, 2.0, 3.0]))


@given(st.floats(-50, 50))
@settings(max_examples=30, deadline=None)
def test_k_statistics_shift_invariance(shift):
    rng = rng_for(99)
    x = rng.normal(size=200)
    a = cumulants.k_statistics(x)
    b = cumulants.k_statistics(x + shift)
    assert abs(a.k2 - b.k2) < 1e-7
    assert abs(a.k3 - b.k3) < 1e-6
    assert abs(a.k4 - b.k4) < 1e-5


@given(st.floats(0.1, 10))
@settings(max_examples=30, deadline=None)
def test_k_statistics_scale_covariance(scale):
    rng = rng_for(7)
    x = rng.laplace(size=150)
    a = cumulants.k_statistics(x)
    b = cumulants.k_statistics(scale * x)
    assert abs(b.k2 - scale**2 * a.k2) < 1e-8 * max(1, scale**2 * abs(a.k2))
    assert abs(b.k4 - scale**4 * a.k4) < 1e-8 * max(1, scale**4 * abs(a.k4))


def test_k4_unbiased_monte_carlo():
    # exponential(1): kappa_n = (n-1)!, so kappa4 = 6
    rng = rng_for(1234)
    trials, m = 4000, 60
    k4s = [cumulants.k_statistics(rng.exponential(size=m)).k4 for _ in range(trials)]
    kap = cumulants.CumulantSet(
        kappa=np.array([math.factorial(n - 1) for n in range(1, 9)], dtype=float))
    se = math.sqrt(cumulants.var_k4(kap, m) / trials)
    assert abs(np.mean(k4s) - 6.0) < 3.5 * se


def test_var_k4_gaussian_value():
    # N(0,1), M = 1e4: dominated by the 24 k2^4 / M term
    kap = cumulants.CumulantSet(kappa=np.array([0, 1, 0, 0, 0, 0, 0, 0.0]))
    v = cumulants.var_k4(kap, 10000)
    assert abs(v - 24.0 / 10000) < 2e-6
    assert abs(v / cumulants.var_k4_large_m(kap, 10000) - 1.0) < 1e-3


def test_var_k4_large_m_limit():
    kap = cumulants.CumulantSet(
        kappa=np.array([0.0, 2.0, 1.0, 12.0, 5.0, 240.0, 0.0, 10080.0]))
    for M in (10**4, 10**6):
        ratio = cumulants.var_k4(kap, M) / cumulants.var_k4_large_m(kap, M)
        assert abs(ratio - 1.0) < 30.0 / M


def test_var_k4_requires_enough_samples():
    kap = cumulants.CumulantSet(kappa=np.zeros(8))
    with pytest.raises(TooFewSamples):
        cumulants.var_k4(kap, 3)


def test_snr_zero_signal():
    assert cumulants.snr(0.0, 1.0) == 0.0
    assert cumulants.snr(2.0, 4.0) == 1.0


def test_snr_squeezed_vacuum_assembles_from_parts():
    # sqrt(M) |kappa4^(1)| / sqrt(24 kappa2^4) with the printed-normalization
    # kappa2 = (cosh 2r - cos nu sinh 2r) / 2
    from nongauss import analytic, fock
    r, theta, chi, t, M = 0.8, 0.3, 0.7, 1.3, 500
    for phi in (0.3, 0.9, 1.4):
        nu = 2 * phi - theta
        k4 = analytic.kappa4_perturbative_squeezed(
            0.0, fock.SqueezeParams(r, theta), phi, chi, t, order=1)
        k2 = (math.cosh(2 * r) - math.cos(nu) * math.sinh(2 * r)) / 2.0
        want = math.sqrt(M) * abs(k4) / math.sqrt(24.0 * k2**4)
        got = cumulants.snr_squeezed_vacuum_first_order(r, nu, chi, t, M)
        assert abs(got - want) < 1e-12 * want


def test_snr_reverse_protocol_repetition_factor():
    base = cumulants.snr_reverse_protocol(0.6, 0.5, 1.0, 0.01)
    withm = cumulants.snr_reverse_protocol(0.6, 0.5, 1.0, 0.01, M=400)
    assert abs(withm - 20 * base) < 1e-12
