"""Closed-form Green's functions of product operators and GJMS operators.

On hyperbolic n-space the GJMS operator of order k factorizes into shifted
Laplacians; the Green's functions of the general products

    prod_{j=0}^{l-1} ((k0 + j + sigma)^2 - (n-1)^2/4 - Laplacian),
    sigma in {0, 1/2},

admit finite gamma-coefficient sums in (sinh(rho/2))^2 when the parity
matches the shift (sigma = 0 with n odd, sigma = 1/2 with n even); the
remaining parity (sigma = 1/2 with n odd) is the dimensional-descent
integral of the even-dimensional closed form.  The GJMS Green's function
itself is the sigma = 1/2, k0 = 0, l = k case, and is bounded above by the
flat-looking kernel

    (1/gamma_n(2k)) [ (2 sinh(rho/2))**(2k-n) - (2 cosh(rho/2))**(2k-n) ],

with equality exactly at k = 1.  The bound gap has nonnegative series
coefficients, so it is evaluated here in coefficient form (never by
subtracting two nearly equal kernels, which loses all digits as rho -> 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import DEFAULT_CONFIG, QuadConfig, integrate_descent
from .special import gamma_half, riesz_gamma

__all__ = [
    "ProductSpec",
    "shifted_green_odd",
    "product_green",
    "full_product_kernel_odd",
    "gjms_green",
    "gjms_green_bound",
    "gjms_green_gap",
    "bound_gap_coeffs",
]


@dataclass(frozen=True)
class ProductSpec:
    """Product operator prod_{j=0}^{l-1}((k0+j+sigma)^2 - (n-1)^2/4 - Lap)."""

    k0: int
    sigma: float
    l: int

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("product length l must be >= 1")
        if self.k0 < 0:
            raise ValueError("base index k0 must be >= 0")
        if self.sigma not in (0.0, 0.5):
            raise ValueError("sigma must be 0 or 1/2")

    def validate(self, n: int) -> None:
        """Check the closed-form index ranges for dimension n."""
        if n < 3:
            raise ValueError("dimension must be >= 3")
        if self.sigma == 0.0:
            if n % 2 == 0:
                raise ValueError("sigma = 0 products require odd dimension")
            m = (n - 1) // 2
            if not (self.l <= m and self.k0 + self.l <= m):
                raise ValueError(
                    f"sigma=0 requires l <= {m} and k0 + l <= {m} for n={n}, "
                    f"got k0={self.k0}, l={self.l}"
                )
        else:
            m = n // 2 if n % 2 == 0 else (n + 1) // 2
            if not (self.l <= m - 1 and self.k0 + self.l <= m - 1):
                raise ValueError(
                    f"sigma=1/2 requires k0 + l <= {m - 1} for n={n}, "
                    f"got k0={self.k0}, l={self.l}"
                )


def shifted_green_odd(n: int, k: int, rho):
    """Green's function of (k^2 - (n-1)^2/4 - Laplacian) for odd n = 2m+1.

    Finite sum (1/(4 pi**(m+1/2) sinh(rho)**(2m-1)))
    sum_j G(m+k) G(m-k) G(m-j-1/2) / (G(j+1) G(m-k-j) G(m+k-j))
    * sinh(rho/2)**(2j), j = 0..m-k-1.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("requires odd dimension n >= 3")
    m = (n - 1) // 2
    if not 0 <= k <= m - 1:
        raise ValueError(f"requires 0 <= k <= {m - 1}, got k={k}")
    rho = np.asarray(rho, dtype=float)
    sh = np.sinh(rho)
    sh2 = np.sinh(rho / 2.0) ** 2
    acc = np.zeros_like(rho)
    for j in range(m - k):
        coeff = (
            gamma_half(2 * (m + k)) * gamma_half(2 * (m - k))
            * gamma_half(2 * (m - j) - 1)
            / (math.factorial(j) * gamma_half(2 * (m - k - j)) * gamma_half(2 * (m + k - j)))
        )
        acc = acc + coeff * sh2 ** j
    value = acc / (4.0 * math.pi ** (m + 0.5) * sh ** (2 * m - 1))
    return value if value.ndim else float(value)


def _product_sum_odd(n: int, k0: int, l: int, rho):
    """sigma = 0 closed form for odd n = 2m+1."""
    m = (n - 1) // 2
    rho = np.asarray(rho, dtype=float)
    sh = np.sinh(rho)
    sh2 = np.sinh(rho / 2.0) ** 2
    acc = np.zeros_like(rho)
    for j in range(m - k0 - l + 1):
        coeff = (
            gamma_half(2 * (m + k0)) * gamma_half(2 * (m - k0 - l + 1))
            * gamma_half(2 * (m - j - l) + 1)
            / (
                math.factorial(j)
                * gamma_half(2 * (m - k0 - l - j + 1))
                * gamma_half(2 * (m + k0 - j))
            )
        )
        acc = acc + coeff * sh2 ** j
    pref = 1.0 / (4.0 * math.factorial(l - 1) * math.pi ** (m + 0.5))
    return pref * sh ** (1 - 2 * m) * sh2 ** (l - 1) * acc


def _product_sum_even(n: int, k0: int, l: int, rho):
    """sigma = 1/2 closed form for even n = 2m."""
    m = n // 2
    rho = np.asarray(rho, dtype=float)
    sh = np.sinh(rho)
    sh2 = np.sinh(rho / 2.0) ** 2
    acc = np.zeros_like(rho)
    for j in range(m - k0 - l):
        coeff = (
            gamma_half(2 * (m + k0)) * gamma_half(2 * (m - k0 - l))
            * gamma_half(2 * (m - j - l))
            / (
                math.factorial(j)
                * gamma_half(2 * (m - k0 - l - j))
                * gamma_half(2 * (m + k0 - j))
            )
        )
        acc = acc + coeff * sh2 ** j
    pref = 1.0 / (4.0 * math.factorial(l - 1) * math.pi ** m)
    return pref * sh ** (2 - 2 * m) * sh2 ** (l - 1) * acc


def product_green(n: int, spec: ProductSpec, rho, cfg: QuadConfig | None = None):
    """Green's function of the product operator described by spec.

    Closed sums for (sigma=0, n odd) and (sigma=1/2, n even); for
    sigma=1/2 with n odd the value is the descent integral of the
    (n+1)-dimensional closed form.
    """
    spec.validate(n)
    cfg = cfg or DEFAULT_CONFIG
    if spec.sigma == 0.0:
        value = _product_sum_odd(n, spec.k0, spec.l, rho)
        return value if np.ndim(rho) else float(value)
    if n % 2 == 0:
        value = _product_sum_even(n, spec.k0, spec.l, rho)
        return value if np.ndim(rho) else float(value)

    m = (n + 1) // 2
    decay = m + spec.k0

    def even_form(r):
        return _product_sum_even(2 * m, spec.k0, spec.l, r)

    def one(r):
        return integrate_descent(even_form, float(r), cfg, decay_rate=decay).require()

    rho_arr = np.asarray(rho, dtype=float)
    if rho_arr.ndim == 0:
        return one(rho_arr)
    return np.array([one(r) for r in rho_arr.ravel()]).reshape(rho_arr.shape)


def full_product_kernel_odd(n: int, rho):
    """Green's kernel of the longest sigma = 0 product (k0=0, l=(n-1)/2), odd n.

    Collapses to (1/gamma_n(n-1)) / (cosh(rho/2)**(n-2) * 2 sinh(rho/2)),
    which is bounded by (1/gamma_n(n-1)) / (2 sinh(rho/2)).
    """
    if n < 5 or n % 2 == 0:
        raise ValueError("requires odd dimension n >= 5")
    rho = np.asarray(rho, dtype=float)
    value = 1.0 / (
        riesz_gamma(n, n - 1) * np.cosh(rho / 2.0) ** (n - 2) * 2.0 * np.sinh(rho / 2.0)
    )
    return value if value.ndim else float(value)


def _binom(m_minus_1: int, j: int) -> float:
    return float(math.comb(m_minus_1, j))


def _validate_gjms_order(n: int, k: int) -> None:
    if n < 3:
        raise ValueError("dimension must be >= 3")
    if not (isinstance(k, (int, np.integer)) and 1 <= k < n / 2):
        raise ValueError(f"GJMS order must satisfy 1 <= k < n/2, got k={k}, n={n}")


def _sinh_cosh_power_diff(exponent: int, rho: np.ndarray) -> np.ndarray:
    """(2 sinh(rho/2))**(-e) - (2 cosh(rho/2))**(-e) without cancellation.

    Factored as (2 sinh(rho/2))**(-e) * (-expm1(e * log(tanh(rho/2)))) with
    log(tanh(rho/2)) = log1p(-exp(-rho)) - log1p(exp(-rho)); the naive
    difference loses all digits for large rho.
    """
    u = np.exp(-rho)
    log_tanh = np.log1p(-u) - np.log1p(u)
    return (2.0 * np.sinh(rho / 2.0)) ** (-exponent) * (-np.expm1(exponent * log_tanh))


def conformal_green(n: int, rho):
    """Classical Green's function of the conformal Laplacian (order k = 1)."""
    if n < 3:
        raise ValueError("dimension must be >= 3")
    rho = np.asarray(rho, dtype=float)
    value = _sinh_cosh_power_diff(n - 2, rho) / riesz_gamma(n, 2)
    return value if value.ndim else float(value)


def gjms_green(n: int, k: int, rho, cfg: QuadConfig | None = None):
    """Green's function of the order-k GJMS operator on hyperbolic n-space.

    Even n = 2m: 4**(k-1)/(gamma_2m(2k) sinh(rho)**(2m-2))
    sum_{j=0}^{m-1-k} C(m-1, j) sinh(rho/2)**(2j+2k-2).  Odd n = 2m-1: the
    same coefficients under the descent integral.  k = 1 is the classical
    conformal-Laplacian kernel.
    """
    _validate_gjms_order(n, k)
    cfg = cfg or DEFAULT_CONFIG
    if k == 1:
        return conformal_green(n, rho)
    if n % 2 == 0:
        m = n // 2
        rho_arr = np.asarray(rho, dtype=float)
        sh2 = np.sinh(rho_arr / 2.0) ** 2
        acc = np.zeros_like(rho_arr)
        for j in range(m - k):
            acc = acc + _binom(m - 1, j) * sh2 ** j
        value = (
            4.0 ** (k - 1) / riesz_gamma(n, 2 * k)
            * np.sinh(rho_arr) ** (2 - 2 * m) * sh2 ** (k - 1) * acc
        )
        return value if value.ndim else float(value)

    m = (n + 1) // 2
    pref = 4.0 ** (k - 1) / riesz_gamma(2 * m, 2 * k)

    def one(r0):
        total = 0.0
        for j in range(m - k):
            decay = 2 * m - 1 - j - k

            def g(r, _j=j):
                return np.sinh(r) ** (2 - 2 * m) * np.sinh(r / 2.0) ** (2 * _j + 2 * k - 2)

            total += _binom(m - 1, j) * integrate_descent(
                g, float(r0), cfg, decay_rate=decay
            ).require()
        return pref * total

    rho_arr = np.asarray(rho, dtype=float)
    if rho_arr.ndim == 0:
        return one(rho_arr)
    return np.array([one(r) for r in rho_arr.ravel()]).reshape(rho_arr.shape)


def gjms_green_bound(n: int, k: int, rho):
    """Optimal pointwise upper bound for the GJMS Green's function.

    (1/gamma_n(2k)) [ (2 sinh(rho/2))**(2k-n) - (2 cosh(rho/2))**(2k-n) ];
    coincides with the Green's function itself at k = 1.
    """
    _validate_gjms_order(n, k)
    rho = np.asarray(rho, dtype=float)
    value = _sinh_cosh_power_diff(n - 2 * k, rho) / riesz_gamma(n, 2 * k)
    return value if value.ndim else float(value)


def bound_gap_coeffs(n: int, k: int) -> list[float]:
    """Series coefficients of (bound - Green's function) for even n = 2m.

    Entry j (j = 0..k-1) multiplies sinh(rho/2)**(2j+2m-2) and equals
    (1/G(k-j)) * (G(m)/G(m-k+j+1) - G(k)/G(j+1)); all entries are >= 0 and
    every entry vanishes iff k = 1.
    """
    if n % 2 != 0:
        raise ValueError("bound gap coefficients are defined for even n")
    m = n // 2
    if not 1 <= k < m:
        raise ValueError(f"requires 1 <= k < {m}, got k={k}")
    coeffs = []
    for j in range(k):
        term = (
            math.factorial(m - 1) / math.factorial(m - k + j)
            - math.factorial(k - 1) / math.factorial(j)
        ) / math.factorial(k - j - 1)
        coeffs.append(term)
    return coeffs


def gjms_green_gap(n: int, k: int, rho, cfg: QuadConfig | None = None):
    """bound - Green's function, evaluated in cancellation-free form.

    For even n the gap is the nonnegative coefficient series directly; for
    odd n it is the descent integral of the even-dimensional gap.  Returns
    exact zeros for k = 1.
    """
    _validate_gjms_order(n, k)
    cfg = cfg or DEFAULT_CONFIG
    rho_arr = np.asarray(rho, dtype=float)
    if k == 1:
        value = np.zeros_like(rho_arr)
        return value if value.ndim else 0.0

    if n % 2 == 0:
        m = n // 2
        coeffs = bound_gap_coeffs(n, k)
        sh2 = np.sinh(rho_arr / 2.0) ** 2
        acc = np.zeros_like(rho_arr)
        for j, c in enumerate(coeffs):
            if c:
                acc = acc + c * sh2 ** j
        value = (
            4.0 ** (k - 1) / riesz_gamma(n, 2 * k)
            * np.sinh(rho_arr) ** (2 - 2 * m) * sh2 ** (m - 1) * acc
        )
        return value if value.ndim else float(value)

    m = (n + 1) // 2

    def even_gap(r):
        return gjms_green_gap(2 * m, k, r, cfg)

    def one(r0):
        return integrate_descent(even_gap, float(r0), cfg, decay_rate=m - k).require()

    if rho_arr.ndim == 0:
        return one(rho_arr)
    return np.array([one(r) for r in rho_arr.ravel()]).reshape(rho_arr.shape)
