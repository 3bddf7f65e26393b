"""Closed-form constants and Legendre functions of the second kind.

Gamma-ratio constants (sphere surface measure, Riesz normalization, sharp
Sobolev and Hardy-Littlewood-Sobolev constants) are evaluated in log space
for overflow safety; half-integer gamma values used in exact coefficient
work are computed by recursion down to Gamma(1/2) = sqrt(pi).

Legendre Q values are stored phase-stripped throughout the library:

    Qt(nu, mu, z) := exp(-i pi mu) * Q_nu^mu(z),   z > 1,

which is real for real indices.  Two integral representations are
implemented and cross-validated:

* trigonometric: Qt = 2**(-nu-1) Gamma(nu+mu+1)/Gamma(nu+1)
  (z^2-1)**(-mu/2) int_0^pi (z + cos t)**(mu-nu-1) (sin t)**(2 nu + 1) dt,
  valid for nu > -1, nu + mu + 1 > 0 (canonical for mu >= 1/2);
* exponential: Qt = sqrt(pi/2) sinh(rho)**mu / Gamma(1/2 - mu)
  int_rho^inf exp(-(nu+1/2) r) (cosh r - cosh rho)**(-mu-1/2) dr with
  z = cosh rho, valid for mu < 1/2, nu + mu + 1 > 0 (canonical there).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, gammasgn

from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    QuadratureError,
    gauss_jacobi_sym,
    integrate_finite,
    integrate_jacobi01,
    integrate_semiinf,
)

__all__ = [
    "gamma_half",
    "gamma_ratio",
    "log_gamma_ratio",
    "surface_measure",
    "riesz_gamma",
    "sobolev_const",
    "hls_const",
    "beta_trig",
    "legendre_q_trig",
    "legendre_q_exp",
    "legendre_q",
]


@lru_cache(maxsize=512)
def gamma_half(two_x: int) -> float:
    """Gamma(two_x / 2) for integer two_x >= 1, by exact recursion.

    Even arguments reduce to factorials, odd ones step down to
    Gamma(1/2) = sqrt(pi); both avoid any transcendental evaluation so the
    ubiquitous half-integer coefficients are exact to rounding.
    """
    if two_x < 1:
        raise ValueError("gamma_half requires two_x >= 1")
    if two_x % 2 == 0:
        return float(math.factorial(two_x // 2 - 1))
    value = math.sqrt(math.pi)
    k = 1
    while k + 2 <= two_x:
        value *= k / 2.0
        k += 2
    return value


def log_gamma_ratio(numerators, denominators) -> tuple[float, float]:
    """(log |prod Gamma(a)/prod Gamma(b)|, sign) with sign tracking."""
    log = 0.0
    sign = 1.0
    for a in np.atleast_1d(numerators):
        log += gammaln(a)
        sign *= gammasgn(a)
    for b in np.atleast_1d(denominators):
        log -= gammaln(b)
        sign *= gammasgn(b)
    return log, sign


def gamma_ratio(numerators, denominators) -> float:
    """prod Gamma(a_i) / prod Gamma(b_j), computed in log space."""
    log, sign = log_gamma_ratio(numerators, denominators)
    return sign * math.exp(log)


def surface_measure(n: int) -> float:
    """Surface measure of the unit n-sphere: 2 pi**((n+1)/2) / Gamma((n+1)/2)."""
    if n < 1:
        raise ValueError("surface_measure requires n >= 1")
    return 2.0 * math.pi ** ((n + 1) / 2.0) / gamma_half(n + 1)


def riesz_gamma(n: int, alpha: float) -> float:
    """Riesz normalization pi**(n/2) 2**alpha Gamma(alpha/2)/Gamma((n-alpha)/2)."""
    if n < 1:
        raise ValueError("riesz_gamma requires n >= 1")
    if not 0.0 < alpha < n:
        raise ValueError(f"riesz_gamma requires 0 < alpha < n, got alpha={alpha}, n={n}")
    log = 0.5 * n * math.log(math.pi) + alpha * math.log(2.0)
    log += gammaln(alpha / 2.0) - gammaln((n - alpha) / 2.0)
    return math.exp(log)


def sobolev_const(n: int, k: float) -> float:
    """Best k-th order Sobolev constant Gamma((n+2k)/2)/Gamma((n-2k)/2) w_n**(2k/n)."""
    if n < 1:
        raise ValueError("sobolev_const requires n >= 1")
    if not 0 < k < n / 2:
        raise ValueError(f"sobolev_const requires 0 < k < n/2, got k={k}, n={n}")
    log = gammaln((n + 2 * k) / 2.0) - gammaln((n - 2 * k) / 2.0)
    log_omega = math.log(2.0) + ((n + 1) / 2.0) * math.log(math.pi) - gammaln((n + 1) / 2.0)
    return math.exp(log + (2.0 * k / n) * log_omega)


def hls_const(n: int, lam: float) -> float:
    """Sharp Hardy-Littlewood-Sobolev constant for the kernel exponent lam.

    pi**(lam/2) Gamma(n/2 - lam/2)/Gamma(n - lam/2)
    * (Gamma(n/2)/Gamma(n))**(-1 + lam/n).
    """
    if n < 1:
        raise ValueError("hls_const requires n >= 1")
    if not 0.0 < lam < n:
        raise ValueError(f"hls_const requires 0 < lam < n, got lam={lam}, n={n}")
    log = 0.5 * lam * math.log(math.pi)
    log += gammaln(n / 2.0 - lam / 2.0) - gammaln(n - lam / 2.0)
    log += (-1.0 + lam / n) * (gammaln(n / 2.0) - gammaln(n))
    return math.exp(log)


def beta_trig(p: float, q: float) -> float:
    """int_0^pi (1 + cos t)**p (sin t)**q dt in closed form.

    Equals 2**(p+q) Gamma(p + (q+1)/2) Gamma((q+1)/2) / Gamma(p+q+1),
    valid for p > -(q+1)/2 and q > -1.
    """
    if q <= -1.0:
        raise ValueError(f"beta_trig requires q > -1, got q={q}")
    if p <= -(q + 1.0) / 2.0:
        raise ValueError(f"beta_trig requires p > -(q+1)/2, got p={p}, q={q}")
    log = (p + q) * math.log(2.0)
    log += gammaln(p + (q + 1.0) / 2.0) + gammaln((q + 1.0) / 2.0) - gammaln(p + q + 1.0)
    return math.exp(log)


def _check_trig_domain(nu: float, mu: float, z: float) -> None:
    if z <= 1.0:
        raise ValueError(f"argument must satisfy z > 1, got z={z}")
    if nu <= -1.0:
        raise ValueError(f"trigonometric form requires nu > -1, got nu={nu}")
    if nu + mu + 1.0 <= 0.0:
        raise ValueError(f"requires nu + mu + 1 > 0, got nu={nu}, mu={mu}")


def legendre_q_trig(nu: float, mu: float, z: float, cfg: QuadConfig | None = None) -> float:
    """Phase-stripped Legendre Q via the trigonometric representation."""
    cfg = cfg or DEFAULT_CONFIG
    _check_trig_domain(nu, mu, z)

    def profile(x):
        return (z + x) ** (mu - nu - 1.0)

    res = gauss_jacobi_sym(profile, nu, cfg)
    if not res.converged:
        # z close to 1 puts the integrand's singularity just outside [-1, 1];
        # fall back to adaptive panels with the endpoint powers declared.
        def raw(x):
            return (z + x) ** (mu - nu - 1.0) * (1.0 - x * x) ** nu

        res = integrate_finite(
            raw, -1.0, 1.0, cfg,
            endpoint_power_left=nu if nu != 0 else None,
            endpoint_power_right=nu if nu != 0 else None,
        )
    integral = res.require()

    log_pref = (-nu - 1.0) * math.log(2.0) + gammaln(nu + mu + 1.0) - gammaln(nu + 1.0)
    pref = math.exp(log_pref) * (z * z - 1.0) ** (-mu / 2.0)
    return pref * integral


def legendre_q_exp(nu: float, mu: float, z: float, cfg: QuadConfig | None = None) -> float:
    """Phase-stripped Legendre Q via the exponential representation.

    The inner-endpoint power (cosh r - cosh rho)**(-mu-1/2) is removed by
    cosh r = cosh rho + 2 v, leaving a Gauss-Jacobi weight v**(-mu-1/2) and
    an analytic profile; the outer tail decays like exp(-(nu+mu+1) r).
    """
    cfg = cfg or DEFAULT_CONFIG
    if z <= 1.0:
        raise ValueError(f"argument must satisfy z > 1, got z={z}")
    if mu >= 0.5:
        raise ValueError(f"exponential form requires mu < 1/2, got mu={mu}")
    if nu + mu + 1.0 <= 0.0:
        raise ValueError(f"requires nu + mu + 1 > 0, got nu={nu}, mu={mu}")

    rho = math.acosh(z)
    s = nu + 0.5

    def near_profile(v):
        r = np.arccosh(z + 2.0 * v)
        return np.exp(-s * r) / np.sinh(r)

    near = 2.0 ** (0.5 - mu) * integrate_jacobi01(near_profile, -mu - 0.5, cfg).require()

    r1 = math.acosh(z + 2.0)

    def far_integrand(r):
        return np.exp(-s * r) * (np.cosh(r) - z) ** (-mu - 0.5)

    far = integrate_semiinf(far_integrand, r1, cfg, decay_rate=nu + mu + 1.0).require()

    pref = math.sqrt(math.pi / 2.0) * math.sinh(rho) ** mu / math.exp(gammaln(0.5 - mu))
    return pref * (near + far)


def legendre_q(nu: float, mu: float, z: float, cfg: QuadConfig | None = None) -> float:
    """Phase-stripped Legendre Q, choosing the representation by order.

    The exponential form is canonical for mu < 1/2, the trigonometric one
    for mu >= 1/2 (each inside its validity window).
    """
    if mu < 0.5:
        return legendre_q_exp(nu, mu, z, cfg)
    return legendre_q_trig(nu, mu, z, cfg)
