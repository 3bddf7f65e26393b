"""Closed-form constants and Legendre-Q representations."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgreen.quadrature import integrate_descent, integrate_finite, integrate_semiinf
from hypgreen.special import (
    beta_trig,
    gamma_half,
    gamma_ratio,
    hls_const,
    legendre_q,
    legendre_q_exp,
    legendre_q_trig,
    riesz_gamma,
    sobolev_const,
    surface_measure,
)


def test_gamma_half_exact_values():
    assert gamma_half(1) == math.sqrt(math.pi)
    assert gamma_half(2) == 1.0
    assert gamma_half(3) == 0.5 * math.sqrt(math.pi)
    assert gamma_half(8) == 6.0
    for two_x in range(1, 40):
        assert gamma_half(two_x) == pytest.approx(math.gamma(two_x / 2.0), rel=1e-15)


def test_gamma_ratio_sign_tracking():
    # Gamma(-0.5) = -2 sqrt(pi)
    assert gamma_ratio([-0.5], [1.0]) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-14)


def test_surface_measure_values():
    assert surface_measure(2) == pytest.approx(4.0 * math.pi, rel=1e-15)
    assert surface_measure(3) == pytest.approx(2.0 * math.pi ** 2, rel=1e-15)
    assert surface_measure(1) == pytest.approx(2.0 * math.pi, rel=1e-15)
    with pytest.raises(ValueError):
        surface_measure(0)


def test_riesz_gamma_values():
    assert riesz_gamma(3, 2.0) == pytest.approx(4.0 * math.pi, rel=1e-14)
    assert riesz_gamma(5, 4.0) == pytest.approx(16.0 * math.pi ** 2, rel=1e-14)
    assert riesz_gamma(4, 2.0) == pytest.approx(4.0 * math.pi ** 2, rel=1e-14)
    for bad in (0.0, -1.0, 3.0, 5.0):
        with pytest.raises(ValueError):
            riesz_gamma(3, bad)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=64),
    frac=st.floats(min_value=1e-3, max_value=1.0 - 1e-3),
)
def test_riesz_gamma_positive_finite_up_to_64(n, frac):
    value = riesz_gamma(n, frac * n)
    assert np.isfinite(value) and value > 0.0


def test_sobolev_const_values():
    assert sobolev_const(3, 1) == pytest.approx(0.75 * (2 * math.pi ** 2) ** (2 / 3), rel=1e-14)
    assert sobolev_const(5, 2) == pytest.approx((105 / 16) * math.pi ** 2.4, rel=1e-14)
    assert sobolev_const(4, 1) == pytest.approx(2.0 * math.sqrt(surface_measure(4)), rel=1e-14)
    with pytest.raises(ValueError):
        sobolev_const(4, 2)


def test_hls_const_value():
    expected = (16 / 105) * (32 / math.sqrt(math.pi)) ** 0.8
    assert hls_const(5, 1.0) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ValueError):
        hls_const(5, 5.0)


def test_hls_const_blows_up_at_upper_endpoint():
    n = 6
    values = [hls_const(n, lam) for lam in (n - 0.5, n - 0.25, n - 0.1, n - 0.01)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] > 1e2 * values[0] / 1e2  # finite but large
    assert values[-1] > values[0]


def test_duality_identity():
    # best-Sobolev * sharp-HLS = Riesz normalization at the half-integer order
    for n in (5, 7, 9):
        lhs = sobolev_const(n, (n - 1) // 2) * hls_const(n, 1.0)
        rhs = riesz_gamma(n, n - 1)
        assert abs(lhs - rhs) <= 1e-10 * rhs


def test_beta_trig_examples():
    assert beta_trig(1.0, 0.0) == pytest.approx(math.pi, rel=1e-14)
    assert beta_trig(0.0, 0.0) == pytest.approx(math.pi, rel=1e-14)
    assert beta_trig(1.0, 1.0) == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(ValueError):
        beta_trig(1.0, -1.0)
    with pytest.raises(ValueError):
        beta_trig(-1.0, 0.5)


def test_beta_trig_against_quadrature():
    rng = np.random.default_rng(20260810)
    for _ in range(20):
        p = rng.uniform(0.0, 4.0)
        q = rng.uniform(0.0, 4.0)

        def f(t):
            return (1.0 + np.cos(t)) ** p * np.sin(t) ** q

        oracle = integrate_finite(f, 0.0, math.pi).require()
        assert abs(beta_trig(p, q) - oracle) <= 1e-10 * oracle


def test_beta_trig_singular_exponent_against_quadrature():
    # q in (-1, 0): integrable endpoint singularities, declared to the oracle
    for p, q in [(1.0, -0.5), (0.5, -0.25)]:

        def f(t):
            return (1.0 + np.cos(t)) ** p * np.sin(t) ** q

        oracle = integrate_finite(
            f, 0.0, math.pi, endpoint_power_left=q, endpoint_power_right=q
        ).require()
        assert abs(beta_trig(p, q) - oracle) <= 1e-9 * oracle


def test_legendre_q_trig_closed_value():
    # order (0,0): Q(z) = (1/2) log((z+1)/(z-1))
    assert legendre_q_trig(0.0, 0.0, 2.0) == pytest.approx(0.5 * math.log(3.0), rel=1e-12)


def test_legendre_q_trig_against_raw_quadrature():
    # brute-force oracle: raw trigonometric integral by adaptive panels
    for nu, mu, z in [(0.5, 1.0, 1.8), (1.0, 2.5, 2.0), (-0.25, 0.5, 3.0)]:

        def raw(t):
            return (z + np.cos(t)) ** (mu - nu - 1.0) * np.sin(t) ** (2.0 * nu + 1.0)

        integral = integrate_finite(
            raw, 0.0, math.pi,
            endpoint_power_right=2.0 * nu + 1.0 if nu < 0 else None,
        ).require()
        pref = (
            2.0 ** (-nu - 1.0) * math.gamma(nu + mu + 1.0) / math.gamma(nu + 1.0)
            * (z * z - 1.0) ** (-mu / 2.0)
        )
        assert legendre_q_trig(nu, mu, z) == pytest.approx(pref * integral, rel=1e-9)


def test_legendre_q_exp_closed_value():
    assert legendre_q_exp(0.0, 0.0, 2.0) == pytest.approx(0.5 * math.log(3.0), rel=1e-12)


def test_legendre_q_representations_agree_spotwise():
    a = legendre_q_trig(0.5, 0.0, 2.0)
    b = legendre_q_exp(0.5, 0.0, 2.0)
    assert abs(a - b) <= 1e-10 * abs(a)


def test_legendre_q_representations_agree_random():
    rng = np.random.default_rng(20260810)
    worst = 0.0
    for _ in range(50):
        nu = rng.uniform(-0.9, 3.0)
        mu = rng.uniform(-2.0, 0.49)
        if nu + mu + 1.0 <= 0.05:
            mu = min(-nu - 0.95 + rng.uniform(0.05, 0.5), 0.49)
        rho = rng.uniform(0.1, 3.0)
        a = legendre_q_trig(nu, mu, math.cosh(rho))
        b = legendre_q_exp(nu, mu, math.cosh(rho))
        worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    assert worst < 1e-9


def test_legendre_q_exp_decay_in_degree():
    rho = 1.3
    nus = np.array([5.0, 10.0, 20.0, 40.0])
    values = [legendre_q_exp(nu, 0.0, math.cosh(rho)) for nu in nus]
    slope = np.polyfit(nus, np.log(values), 1)[0]
    assert abs(slope + rho) < 0.05 * rho


def test_legendre_q_validity_errors():
    with pytest.raises(ValueError):
        legendre_q_exp(1.0, 0.5, 2.0)  # exp form needs mu < 1/2
    with pytest.raises(ValueError):
        legendre_q_trig(-1.5, 0.0, 2.0)  # trig form needs nu > -1
    with pytest.raises(ValueError):
        legendre_q_trig(0.0, -1.5, 2.0)  # nu + mu + 1 > 0
    with pytest.raises(ValueError):
        legendre_q(0.0, 1.0, 0.9)  # argument must exceed 1


_INDEX_RAISING_SAMPLES = [
    (1.0, 0.5, 0.5, 1.0),
    (0.5, 0.0, 0.5, 0.7),
    (2.0, 0.5, 1.0, 1.0),
    (1.5, -0.4, 0.5, 1.2),
    (1.0, 0.0, 1.0, 0.8),
    (2.5, 1.0, 0.5, 1.5),
    (2.0, 0.3, 1.5, 1.0),
    (3.0, 0.5, 2.0, 0.9),
    (1.2, -0.2, 1.0, 2.0),
    (2.0, 0.0, 0.5, 0.5),
]


@pytest.mark.parametrize("nu,lam,mu,rho", _INDEX_RAISING_SAMPLES)
def test_index_raising_identity(nu, lam, mu, rho):
    # int_rho^inf (sinh r)^(lam+1) (cosh r - cosh rho)^(mu-1) Qt_nu^(-lam) dr
    #   = Gamma(mu) (sinh rho)^(lam+mu) Qt_nu^(-lam-mu)(cosh rho)
    rhs = math.gamma(mu) * math.sinh(rho) ** (lam + mu) * legendre_q(
        nu, -lam - mu, math.cosh(rho)
    )
    if mu == 0.5:
        def g(r):
            return np.array(
                [math.sinh(ri) ** lam * legendre_q(nu, -lam, math.cosh(ri)) for ri in r]
            )

        lhs = integrate_descent(g, rho, decay_rate=nu + 0.5 - lam).require() / math.sqrt(2.0)
    else:
        def f(r):
            return np.array(
                [
                    math.sinh(ri) ** (lam + 1)
                    * (math.cosh(ri) - math.cosh(rho)) ** (mu - 1)
                    * legendre_q(nu, -lam, math.cosh(ri))
                    for ri in r
                ]
            )

        lhs = integrate_semiinf(f, rho, decay_rate=nu + 0.5 - lam - mu).require()
    assert abs(lhs - rhs) <= 1e-7 * abs(rhs)
