"""Heat kernels on hyperbolic space and resolvents of (lambda - Laplacian).

The radial heat kernel in odd dimension n = 2m + 1 is an exact expression:
a prefactor times (-(1/sinh rho) d/drho)**(m-1) applied to
(rho/sinh rho) exp(-rho^2/(4t)).  Iterates of that operator stay inside a
finite-dimensional algebra of terms

    c * rho**a * csch(rho)**b * coth(rho)**d * t**(-e) * exp(-rho^2/(4t)),

modelled here by HeatExpr (a sparse coefficient map).  Even dimensions
n = 2m are the descent integral of the same symbolic expression:

    h_n(t, rho) = (1/2) (2 pi)**(-(n+1)/2) t**(-3/2) exp(-(n-1)^2 t / 4)
                  * int_rho^inf sinh(r) (cosh r - cosh rho)**(-1/2)
                    [(-(1/sinh r) d/dr)**(m-1) (r/sinh r) e^{-r^2/4t}] dr.

Resolvent Green's functions of (lambda - Laplacian) with
lambda >= -(n-1)^2/4 (the spectral gap) are computed by two independent
routes: a phase-stripped Legendre-Q closed form, and the Laplace transform
of the heat kernel in time.  At the spectral-gap endpoint the time
integrand decays only like t**(-3/2); the tail beyond the truncation point
is then integrated term-by-term in closed form (incomplete gamma).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammainc

from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    integrate_descent,
    integrate_finite,
    integrate_semiinf,
)
from .special import legendre_q

__all__ = [
    "HeatExpr",
    "apply_descent_operator",
    "gaussian_seed",
    "radial_gaussian_seed",
    "csch_seed",
    "spectral_gap",
    "nu_from_lambda",
    "heat_kernel",
    "resolvent_legendre",
    "resolvent_heat",
]


class HeatExpr:
    """Finite combination of rho**a csch**b coth**d t**(-e) [exp(-rho^2/4t)] terms.

    The family is closed under multiplication by csch(rho) and under the
    derivative -(1/sinh rho) d/drho, so repeated applications of that
    operator stay exact.  Instances are immutable; terms maps exponent
    tuples (a, b, d, e) to float coefficients.
    """

    __slots__ = ("terms", "gaussian")

    def __init__(self, terms: dict, gaussian: bool):
        self.terms = {k: float(v) for k, v in terms.items() if v != 0.0}
        self.gaussian = bool(gaussian)

    def shift_derivative(self) -> "HeatExpr":
        """One application of -(1/sinh rho) d/drho."""
        out: dict = {}

        def add(key, val):
            out[key] = out.get(key, 0.0) + val

        for (a, b, d, e), c in self.terms.items():
            if a:
                add((a - 1, b + 1, d, e), -a * c)
            if b:
                add((a, b + 1, d + 1, e), b * c)
            if d:
                add((a, b + 3, d - 1, e), d * c)
            if self.gaussian:
                add((a + 1, b + 1, d, e + 1), 0.5 * c)
        return HeatExpr(out, self.gaussian)

    def eval(self, rho, t=None):
        """Evaluate at broadcastable arrays of rho (> 0) and, if needed, t (> 0)."""
        rho = np.asarray(rho, dtype=float)
        s = np.sinh(rho)
        csch = 1.0 / s
        coth = np.cosh(rho) / s
        if self.gaussian:
            if t is None:
                raise ValueError("this expression carries a Gaussian factor; t is required")
            t = np.asarray(t, dtype=float)
            log_t = np.log(t)
            gauss_arg = -rho * rho / (4.0 * t)
        out = None
        for (a, b, d, e), c in self.terms.items():
            term = c * rho ** a * csch ** b * coth ** d
            if self.gaussian:
                term = term * np.exp(gauss_arg - e * log_t)
            out = term if out is None else out + term
        if out is None:
            shape = np.broadcast(rho, t).shape if self.gaussian else rho.shape
            return np.zeros(shape)
        return out

    def time_tail(self, rho, T: float):
        """int_T^inf t**(-3/2) eval(rho, t) dt, term-by-term in closed form.

        Each term contributes (rho^2/4)**(-(e+1/2)) Gamma(e+1/2)
        * P(e+1/2, rho^2/(4T)) with P the regularized lower incomplete
        gamma.  Only meaningful for Gaussian-bearing expressions.
        """
        if not self.gaussian:
            raise ValueError("time_tail requires a Gaussian-bearing expression")
        rho = np.asarray(rho, dtype=float)
        s = np.sinh(rho)
        csch = 1.0 / s
        coth = np.cosh(rho) / s
        c4 = rho * rho / 4.0
        out = np.zeros_like(rho, dtype=float)
        for (a, b, d, e), c in self.terms.items():
            apow = e + 0.5
            out = out + (
                c * rho ** a * csch ** b * coth ** d
                * c4 ** (-apow) * math.gamma(apow) * gammainc(apow, c4 / T)
            )
        return out


def gaussian_seed() -> HeatExpr:
    """exp(-rho^2/(4t))."""
    return HeatExpr({(0, 0, 0, 0): 1.0}, gaussian=True)


def radial_gaussian_seed() -> HeatExpr:
    """(rho/sinh rho) exp(-rho^2/(4t)) - the heat-kernel seed."""
    return HeatExpr({(1, 1, 0, 0): 1.0}, gaussian=True)


def csch_seed() -> HeatExpr:
    """1/sinh rho (no Gaussian factor)."""
    return HeatExpr({(0, 1, 0, 0): 1.0}, gaussian=False)


def apply_descent_operator(expr: HeatExpr, p: int) -> HeatExpr:
    """p-fold application of -(1/sinh rho) d/drho, exact on the family."""
    if p < 0:
        raise ValueError("p must be >= 0")
    for _ in range(p):
        expr = expr.shift_derivative()
    return expr


_KERNEL_EXPRS: dict = {}


def _kernel_expr(m: int) -> HeatExpr:
    """Cached (m-1)-fold derivative of the (rho/sinh rho) Gaussian seed."""
    if m not in _KERNEL_EXPRS:
        _KERNEL_EXPRS[m] = apply_descent_operator(radial_gaussian_seed(), m - 1)
    return _KERNEL_EXPRS[m]


def spectral_gap(n: int) -> float:
    """Bottom of the L^2 spectrum of the (negative) Laplacian: (n-1)^2/4."""
    return (n - 1) ** 2 / 4.0


def nu_from_lambda(n: int, lam: float) -> float:
    """nu = sqrt(lambda + (n-1)^2/4) >= 0 for lambda at or above the gap."""
    shifted = lam + spectral_gap(n)
    if shifted < -1e-12:
        raise ValueError(f"lambda={lam} lies below the spectral gap -(n-1)^2/4")
    return math.sqrt(max(shifted, 0.0))


# Conservative exponential-decay hint for descent integrands built from
# HeatExpr terms: every term carries at least one csch factor (rate >= 1
# up to polynomial growth; the margin in the truncation rule absorbs it).
_HEAT_DESCENT_DECAY = 1.0


def _check_dimension(n, minimum):
    if not isinstance(n, (int, np.integer)) or n < minimum:
        raise ValueError(f"dimension must be an integer >= {minimum}, got {n!r}")


def heat_kernel(n: int, t, rho, cfg: QuadConfig | None = None):
    """Radial heat kernel h_n(t, rho) on hyperbolic n-space.

    t may be a scalar or 1-d array (the even-dimensional descent integral
    is evaluated for the whole batch in one adaptive pass); rho must be a
    scalar for even n and may broadcast for odd n.
    """
    _check_dimension(n, 2)
    cfg = cfg or DEFAULT_CONFIG
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise ValueError("t must be positive")
    if n % 2 == 1:
        m = (n - 1) // 2
        expr = _kernel_expr(m)
        pref = 2.0 ** (-m - 2) * math.pi ** (-m - 0.5)
        value = pref * t_arr ** -1.5 * np.exp(-m * m * t_arr) * expr.eval(rho, t_arr)
        return value if np.ndim(t) or np.ndim(rho) else float(value)

    m = n // 2
    rho = float(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    expr = _kernel_expr(m)
    t_batch = np.atleast_1d(t_arr)

    def integrand(r):
        return expr.eval(r[:, None], t_batch[None, :])

    descent = integrate_descent(
        integrand, rho, cfg, decay_rate=_HEAT_DESCENT_DECAY
    ).require()
    pref = 0.5 * (2.0 * math.pi) ** (-(n + 1) / 2.0) / math.sqrt(2.0)
    value = pref * t_batch ** -1.5 * np.exp(-((n - 1) ** 2 / 4.0) * t_batch) * descent
    return value if np.ndim(t) else float(value[0])


def resolvent_legendre(n: int, nu: float, rho, cfg: QuadConfig | None = None):
    """Green's function of (nu^2 - (n-1)^2/4 - Laplacian) via Legendre Q.

    Equals (2 pi)**(-n/2) (sinh rho)**(-(n-2)/2) Qt(nu - 1/2, (n-2)/2,
    cosh rho) with Qt the phase-stripped Legendre function; real and
    positive for nu >= 0, rho > 0.
    """
    _check_dimension(n, 3)
    if nu < 0:
        raise ValueError("nu must be >= 0")
    cfg = cfg or DEFAULT_CONFIG
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr <= 0):
        raise ValueError("rho must be positive")
    mu = (n - 2) / 2.0
    pref = (2.0 * math.pi) ** (-n / 2.0)

    def one(r):
        q = legendre_q(nu - 0.5, mu, math.cosh(r), cfg)
        return pref * math.sinh(r) ** (-mu) * q

    if rho_arr.ndim == 0:
        return one(float(rho_arr))
    return np.array([one(r) for r in rho_arr.ravel()]).reshape(rho_arr.shape)


def _resolvent_time_endpoint(n: int, rho: float, cfg: QuadConfig) -> float:
    """Time-integral route exactly at the spectral-gap endpoint."""
    T = 50.0
    seeds = [0.0] + [2.0 ** j for j in range(0, 6)] + [T]
    if n % 2 == 1:
        m = (n - 1) // 2
        expr = _kernel_expr(m)
        pref = 2.0 ** (-m - 2) * math.pi ** (-m - 0.5)

        def f(t):
            return t ** -1.5 * expr.eval(rho, t)

        numeric = integrate_finite(f, 0.0, T, cfg, breakpoints=seeds).require()
        tail = expr.time_tail(rho, T)
        return pref * (numeric + float(tail))

    m = n // 2
    expr = _kernel_expr(m)
    pref = 0.5 * (2.0 * math.pi) ** (-(n + 1) / 2.0) / math.sqrt(2.0)

    def f(t):
        def integrand(r):
            return expr.eval(r[:, None], t[None, :])

        descent = integrate_descent(
            integrand, rho, cfg, decay_rate=_HEAT_DESCENT_DECAY
        ).require()
        return t ** -1.5 * descent

    numeric = integrate_finite(f, 0.0, T, cfg, breakpoints=seeds).require()

    def tail_integrand(r):
        return expr.time_tail(r, T)

    tail = integrate_descent(
        tail_integrand, rho, cfg, decay_rate=_HEAT_DESCENT_DECAY
    ).require()
    return pref * (numeric + tail)


def resolvent_heat(n: int, lam: float, rho: float, cfg: QuadConfig | None = None) -> float:
    """Green's function of (lambda - Laplacian) as a heat-kernel time integral.

    Independent of resolvent_legendre; used for cross-validation.  Requires
    lambda >= -(n-1)^2/4.  The exponential factors exp(-lambda t) and the
    kernel's exp(-(n-1)^2 t/4) are combined analytically so that values
    just above (or at) the spectral gap stay finite.
    """
    _check_dimension(n, 3)
    cfg = cfg or DEFAULT_CONFIG
    rho = float(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    gap = spectral_gap(n)
    if lam < -gap - 1e-12:
        raise ValueError(f"lambda={lam} lies below the spectral gap {-gap}")
    b = lam + gap
    if b <= 1e-12:
        return _resolvent_time_endpoint(n, rho, cfg)

    if n % 2 == 1:
        m = (n - 1) // 2
        expr = _kernel_expr(m)
        pref = 2.0 ** (-m - 2) * math.pi ** (-m - 0.5)

        def marginal(t):
            return t ** -1.5 * np.exp(-b * t) * expr.eval(rho, t)

    else:
        m = n // 2
        expr = _kernel_expr(m)
        pref = 0.5 * (2.0 * math.pi) ** (-(n + 1) / 2.0) / math.sqrt(2.0)

        def marginal(t):
            def integrand(r):
                return expr.eval(r[:, None], t[None, :])

            descent = integrate_descent(
                integrand, rho, cfg, decay_rate=_HEAT_DESCENT_DECAY
            ).require()
            return t ** -1.5 * np.exp(-b * t) * descent

    value = integrate_semiinf(marginal, 0.0, cfg, decay_rate=b).require()
    return pref * float(value)
