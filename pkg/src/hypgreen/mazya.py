"""Radial trial families and the Hardy-term coefficient lower bound.

The concentrating bubble profile

    u(r) = ((1-r^2)/2)^q * (2/(eps+r^2))^q,        q = (n-2k)/2,

is an almost-extremal of the order-k Sobolev quotient on the hyperbolic
ball.  Subtracting the first k terms of the binomial series of
(1-t)^(-q) (t = (delta^2-|x|^2)/(delta^2+eps)) produces the two corrected
families used to bound the Hardy-term coefficient: the compactly
supported family (support radius delta < 1) and the full-ball family
(delta = 1).  All integrals reduce to one radial dimension.

The deficit u - (subtracted block) vanishes to order k at the support
boundary; evaluating it by naive subtraction loses every digit there, so
the series tail sum_{j>=k} a_j tau^j is used whenever tau <= 1/2.

The resulting lower bound for the Hardy-term coefficient is

    -Gamma(n/2) Gamma(k) (sum_{j<k} a_j)
        / (2^((n+2k)/2) Gamma(q) * I(n,k)),

with I(n,k) the squared-deficit radial integral; at n = 2k+2 this
collapses to -(k-1) (k!)^2 / 4^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .quadrature import DEFAULT_CONFIG, QuadConfig, integrate_finite
from .special import surface_measure

__all__ = [
    "TrialFamily",
    "taylor_coeff",
    "taylor_coeffs",
    "trial_u",
    "trial_f",
    "trial_g",
    "flat_pk_bubble",
    "energy_quadratic",
    "l2_mass",
    "l2_mass_limit",
    "lq_mass",
    "lq_mass_lower",
    "lambda_lower_bound",
    "lambda_lower_bound_closed",
    "hardy_bound_rows",
    "exponent_fit",
    "FitResult",
    "DEFAULT_EPS_SWEEP",
]

DEFAULT_EPS_SWEEP = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4)


@dataclass(frozen=True)
class TrialFamily:
    """Radial trial family parameters; delta = 1 selects the full-ball family."""

    n: int
    k: int
    eps: float
    delta: float = 1.0

    def __post_init__(self):
        if not (isinstance(self.k, int) and 2 <= self.k < self.n / 2):
            raise ValueError(f"requires 2 <= k < n/2, got k={self.k}, n={self.n}")
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if not 0.0 < self.delta <= 1.0:
            raise ValueError("delta must lie in (0, 1]")

    @property
    def q(self) -> float:
        return (self.n - 2 * self.k) / 2.0


def taylor_coeff(n: int, k: int, j: int) -> float:
    """Binomial-series coefficient a_j = G(j+q)/(G(j+1) G(q)), q=(n-2k)/2."""
    if j < 0:
        raise ValueError("j must be >= 0")
    q = (n - 2 * k) / 2.0
    if q <= 0:
        raise ValueError("requires n > 2k")
    return math.exp(gammaln(j + q) - gammaln(j + 1.0) - gammaln(q))


def taylor_coeffs(n: int, k: int) -> np.ndarray:
    """The k subtracted coefficients a_0 .. a_{k-1}."""
    return np.array([taylor_coeff(n, k, j) for j in range(k)])


def _deficit_tail(n: int, k: int, tau):
    """T(tau) = sum_{j>=k} a_j tau^(j-k), stable on [0, 1).

    Direct subtraction (1-tau)^(-q) - sum_{j<k} a_j tau^j cancels
    catastrophically as tau -> 0; the series tail is used there instead.
    """
    q = (n - 2 * k) / 2.0
    tau = np.asarray(tau, dtype=float)
    out = np.empty_like(tau)
    small = tau <= 0.5

    if np.any(small):
        ts = tau[small]
        a_j = taylor_coeff(n, k, k)
        term = np.full_like(ts, a_j)
        acc = term.copy()
        power = np.ones_like(ts)
        j = k
        while True:
            a_j = a_j * (j + q) / (j + 1.0)
            j += 1
            power = power * ts
            term = a_j * power
            acc += term
            if j > k + 8 and np.all(term <= 1e-17 * np.abs(acc)):
                break
            if j > 400:
                break
        out[small] = acc

    big = ~small
    if np.any(big):
        tb = tau[big]
        partial = np.zeros_like(tb)
        for j in range(k):
            partial += taylor_coeff(n, k, j) * tb ** j
        out[big] = ((1.0 - tb) ** (-q) - partial) / tb ** k
    return out


def _deficit(fam: TrialFamily, r):
    """(2/(eps+r^2))^q minus the subtracted block, for r inside the support."""
    r = np.asarray(r, dtype=float)
    d2e = fam.delta ** 2 + fam.eps
    tau = (fam.delta ** 2 - r * r) / d2e
    s_q = (2.0 / d2e) ** fam.q
    return s_q * tau ** fam.k * _deficit_tail(fam.n, fam.k, tau)


def trial_u(fam: TrialFamily, r):
    """The uncorrected bubble ((1-r^2)/2)^q (2/(eps+r^2))^q on [0, 1)."""
    r = np.asarray(r, dtype=float)
    value = ((1.0 - r * r) / 2.0) ** fam.q * (2.0 / (fam.eps + r * r)) ** fam.q
    return value if value.ndim else float(value)


def trial_f(fam: TrialFamily, r):
    """Compactly supported corrected profile (support radius delta < 1)."""
    if fam.delta >= 1.0:
        raise ValueError("the compactly supported family requires delta < 1")
    r = np.asarray(r, dtype=float)
    inside = r < fam.delta
    value = np.zeros_like(r)
    if np.any(inside):
        ri = r[inside]
        value[inside] = ((1.0 - ri * ri) / 2.0) ** fam.q * _deficit(fam, ri)
    return value if value.ndim else float(value)


def trial_g(fam: TrialFamily, r):
    """Full-ball corrected profile (delta = 1)."""
    if fam.delta != 1.0:
        raise ValueError("the full-ball family requires delta = 1")
    r = np.asarray(r, dtype=float)
    value = ((1.0 - r * r) / 2.0) ** fam.q * _deficit(fam, r)
    return value if value.ndim else float(value)


def flat_pk_bubble(n: int, k: int, eps: float, r):
    """k-th power of the flat Laplacian applied to the bubble profile.

    (-Lap)^k (2/(eps+|x|^2))^q = eps^k G((n+2k)/2)/G((n-2k)/2)
    * (2/(eps+|x|^2))^((n+2k)/2), exactly.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    r = np.asarray(r, dtype=float)
    ratio = math.exp(gammaln((n + 2 * k) / 2.0) - gammaln((n - 2 * k) / 2.0))
    value = eps ** k * ratio * (2.0 / (eps + r * r)) ** ((n + 2 * k) / 2.0)
    return value if value.ndim else float(value)


def _radial_breakpoints(fam: TrialFamily) -> list[float]:
    s = math.sqrt(fam.eps)
    pts = [s, 4 * s, 16 * s, 64 * s, fam.delta / 2.0]
    return [p for p in pts if 0.0 < p < fam.delta]


def _sphere_area(n: int) -> float:
    # Surface of the unit sphere in R^n.
    return surface_measure(n - 1)


def energy_quadratic(fam: TrialFamily, cfg: QuadConfig | None = None):
    """Quadratic-form upper bound for the corrected profile.

    Returns (exact, closed_bound): exact is
    eps^k G((n+2k)/2)/G((n-2k)/2) * int (2/(eps+r^2))^((n+2k)/2)
    * deficit(r) dx over the support, and closed_bound the elementary
    majorant eps^(k-n/2) G((n+2k)/2)/G((n-2k)/2) * w_n.
    """
    cfg = cfg or DEFAULT_CONFIG
    n, k, eps = fam.n, fam.k, fam.eps
    ratio = math.exp(gammaln((n + 2 * k) / 2.0) - gammaln((n - 2 * k) / 2.0))

    def integrand(r):
        return (2.0 / (eps + r * r)) ** ((n + 2 * k) / 2.0) * _deficit(fam, r) * r ** (n - 1)

    integral = integrate_finite(
        integrand, 0.0, fam.delta, cfg, breakpoints=_radial_breakpoints(fam)
    ).require()
    exact = eps ** k * ratio * _sphere_area(n) * integral
    closed_bound = eps ** (k - n / 2.0) * ratio * surface_measure(n)
    return exact, closed_bound


def l2_mass(fam: TrialFamily, cfg: QuadConfig | None = None) -> float:
    """Squared L^2 norm of the corrected profile in the hyperbolic volume."""
    cfg = cfg or DEFAULT_CONFIG
    n, k = fam.n, fam.k

    if fam.delta == 1.0:
        # tau/(1-r^2) = 1/(1+eps) exactly: absorb the volume weight into
        # the deficit tail to keep the boundary region cancellation-free.
        d2e = 1.0 + fam.eps
        s_2q = (2.0 / d2e) ** (2.0 * fam.q)

        def integrand(r):
            tau = (1.0 - r * r) / d2e
            tail = _deficit_tail(n, k, tau)
            return s_2q * tail * tail * d2e ** (-2 * k) * 4.0 ** k * r ** (n - 1)

    else:

        def integrand(r):
            deficit = _deficit(fam, r)
            weight = (2.0 / (1.0 - r * r)) ** (2 * k)
            return deficit * deficit * weight * r ** (n - 1)

    integral = integrate_finite(
        integrand, 0.0, fam.delta, cfg, breakpoints=_radial_breakpoints(fam)
    ).require()
    return _sphere_area(n) * integral


def _squared_deficit_integral(n: int, k: int, cfg: QuadConfig) -> float:
    """I(n,k) = int_0^1 [r^(2k-n) - sum_{j<k} a_j (1-r^2)^j]^2 r^(n-1)
    (1-r^2)^(-2k) dr, which equals int_0^1 T(1-r^2)^2 r^(n-1) dr."""

    def integrand(r):
        tail = _deficit_tail(n, k, 1.0 - r * r)
        return tail * tail * r ** (n - 1)

    return integrate_finite(integrand, 0.0, 1.0, cfg).require()


def l2_mass_limit(n: int, k: int, cfg: QuadConfig | None = None) -> float:
    """Concentration limit of l2_mass for the full-ball family: 2^n * V(n,k)."""
    cfg = cfg or DEFAULT_CONFIG
    if not 2 * k + 2 <= n < 4 * k:
        raise ValueError("the limit is finite only for 2k+2 <= n < 4k")
    return 2.0 ** n * _sphere_area(n) * _squared_deficit_integral(n, k, cfg)


def lq_mass(fam: TrialFamily, cfg: QuadConfig | None = None) -> float:
    """Critical-exponent mass int |profile|^(2n/(n-2k)) dV (exact)."""
    cfg = cfg or DEFAULT_CONFIG
    n, k = fam.n, fam.k
    p = 2.0 * n / (n - 2 * k)

    def integrand(r):
        return _deficit(fam, r) ** p * r ** (n - 1)

    integral = integrate_finite(
        integrand, 0.0, fam.delta, cfg, breakpoints=_radial_breakpoints(fam)
    ).require()
    return _sphere_area(n) * integral


def lq_mass_lower(fam: TrialFamily, cfg: QuadConfig | None = None):
    """(lower_bound, exact) for the critical-exponent mass.

    The lower bound is the bubble mass minus the first-order correction
    from (s-t)^alpha >= s^alpha - alpha s^(alpha-1) t applied to the
    subtracted block, each piece by radial quadrature.
    """
    cfg = cfg or DEFAULT_CONFIG
    n, k, eps = fam.n, fam.k, fam.eps
    p = 2.0 * n / (n - 2 * k)
    d2e = fam.delta ** 2 + eps
    s_q = (2.0 / d2e) ** fam.q
    coeffs = taylor_coeffs(n, k)
    bps = _radial_breakpoints(fam)

    def bubble(r):
        return (2.0 / (eps + r * r)) ** n * r ** (n - 1)

    bubble_mass = integrate_finite(bubble, 0.0, fam.delta, cfg, breakpoints=bps).require()

    def correction(r):
        tau = (fam.delta ** 2 - r * r) / d2e
        block = np.zeros_like(r)
        for j, a in enumerate(coeffs):
            block += a * tau ** j
        return (2.0 / (eps + r * r)) ** ((n + 2 * k) / 2.0) * s_q * block * r ** (n - 1)

    corr = integrate_finite(correction, 0.0, fam.delta, cfg, breakpoints=bps).require()
    lower = _sphere_area(n) * (bubble_mass - p * corr)
    exact = lq_mass(fam, cfg)
    return lower, exact


def lambda_lower_bound(n: int, k: int, cfg: QuadConfig | None = None) -> float:
    """Lower bound for the Hardy-term coefficient, 2 <= k and 2k+2 <= n < 4k.

    -G(n/2) G(k) (sum_{j<k} a_j) / (2^((n+2k)/2) G((n-2k)/2) I(n,k)).
    """
    if k < 2:
        raise ValueError("requires k >= 2")
    if not 2 * k + 2 <= n < 4 * k:
        raise ValueError(f"requires 2k+2 <= n < 4k, got n={n}, k={k}")
    cfg = cfg or DEFAULT_CONFIG
    q = (n - 2 * k) / 2.0
    integral = _squared_deficit_integral(n, k, cfg)
    coeff_sum = float(np.sum(taylor_coeffs(n, k)))
    log_num = gammaln(n / 2.0) + gammaln(float(k))
    log_den = ((n + 2 * k) / 2.0) * math.log(2.0) + gammaln(q)
    return -math.exp(log_num - log_den) * coeff_sum / integral


def lambda_lower_bound_closed(k: int) -> float:
    """Closed value of the lower bound at n = 2k+2: -(k-1) (k!)^2 / 4^k."""
    if k < 2:
        raise ValueError("requires k >= 2")
    return -(k - 1) * math.factorial(k) ** 2 / 4.0 ** k


def hardy_bound_rows(k_min: int = 2, k_max: int = 5) -> list[tuple]:
    """Table rows (n, k, lower_bound, -hardy_coeff, closed_form, status).

    Covers every (n, k) with k_min <= k <= k_max in the window
    2k+2 <= n < 4k; the closed-form column is filled only at n = 2k+2.
    Per-row failures are reported in the status column without aborting.
    """
    from .symbols import hardy_product_const

    rows = []
    for k in range(k_min, k_max + 1):
        for n in range(2 * k + 2, 4 * k):
            closed = lambda_lower_bound_closed(k) if n == 2 * k + 2 else ""
            try:
                bound = lambda_lower_bound(n, k)
                status = "ok"
            except Exception as exc:  # report, keep going
                bound = math.nan
                status = f"error: {exc}"
            rows.append((n, k, bound, -hardy_product_const(k), closed, status))
    return rows


@dataclass
class FitResult:
    """Least-squares fit diagnostics for concentration-rate checks."""

    slope: float
    intercept: float
    r_squared: float
    max_abs_residual: float


def exponent_fit(eps_values, values, mode: str = "power") -> FitResult:
    """Fit the concentration rate of values over an eps sweep.

    mode="power" fits ln(value) = slope * ln(eps) + intercept;
    mode="log" fits value = slope * ln(1/eps) + intercept (for the
    logarithmically divergent borderline case).  Requires at least three
    points spanning at least two decades of eps.
    """
    eps_values = np.asarray(eps_values, dtype=float)
    values = np.asarray(values, dtype=float)
    if eps_values.shape != values.shape or eps_values.ndim != 1:
        raise ValueError("eps_values and values must be 1-d arrays of equal length")
    if len(eps_values) < 3:
        raise ValueError("need at least 3 points")
    if np.max(eps_values) / np.min(eps_values) < 100.0:
        raise ValueError("eps values must span at least two decades")
    if mode == "power":
        if np.any(values <= 0):
            raise ValueError("power-mode fit requires positive values")
        x = np.log(eps_values)
        y = np.log(values)
    elif mode == "log":
        x = np.log(1.0 / eps_values)
        y = values
    else:
        raise ValueError("mode must be 'power' or 'log'")
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    resid = y - fitted
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r_squared = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    return FitResult(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        max_abs_residual=float(np.max(np.abs(resid))),
    )
