"""Scalar spectral symbols of the radial operators.

Under the Fourier transform on hyperbolic n-space, the negative Laplacian
acts by multiplication with ((n-1)^2 + lam^2)/4; every operator handled by
this library is a polynomial in the Laplacian, so its action reduces to a
scalar symbol in the spectral parameter lam.  The quadratic-form
comparison behind the sharp half-integer-order inequality is a pointwise
inequality between two such symbols, checked here on dense grids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .green import ProductSpec

__all__ = [
    "laplace_symbol",
    "gjms_symbol",
    "hardy_product_const",
    "product_symbol",
    "product_symbol_printed",
    "SymbolComparison",
    "symbol_gap_inequality",
]


def laplace_symbol(n: int, lam):
    """Symbol of the negative Laplacian: ((n-1)^2 + lam^2)/4."""
    lam = np.asarray(lam, dtype=float)
    value = ((n - 1) ** 2 + lam * lam) / 4.0
    return value if value.ndim else float(value)


def gjms_symbol(n: int, k: int, lam):
    """Symbol of the order-k GJMS operator: prod_{j=1}^k ((2j-1)^2+lam^2)/4."""
    if not 1 <= k < n / 2:
        raise ValueError(f"requires 1 <= k < n/2, got k={k}, n={n}")
    lam = np.asarray(lam, dtype=float)
    value = np.ones_like(lam)
    for j in range(1, k + 1):
        value = value * ((2 * j - 1) ** 2 + lam * lam) / 4.0
    return value if value.ndim else float(value)


def hardy_product_const(k: int) -> float:
    """Sharp Hardy coefficient prod_{i=1}^k (2i-1)^2/4 (the symbol at lam=0)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    value = 1.0
    for i in range(1, k + 1):
        value *= (2 * i - 1) ** 2 / 4.0
    return value


def product_symbol(spec: ProductSpec, lam):
    """Eigenvalue-derived symbol of the product operator.

    Each factor (k0+j+sigma)^2 - (n-1)^2/4 - Laplacian acts by
    (k0+j+sigma)^2 + lam^2/4.
    """
    lam = np.asarray(lam, dtype=float)
    value = np.ones_like(lam)
    for j in range(spec.l):
        value = value * ((spec.k0 + j + spec.sigma) ** 2 + lam * lam / 4.0)
    return value if value.ndim else float(value)


def product_symbol_printed(spec: ProductSpec, lam):
    """Alternative reading prod ((k0+j+sigma)^2 + lam^2)/4 of the product symbol.

    Kept alongside the eigenvalue-derived form; the inequality below holds
    under both readings, so no choice between them is forced.
    """
    lam = np.asarray(lam, dtype=float)
    value = np.ones_like(lam)
    for j in range(spec.l):
        value = value * ((spec.k0 + j + spec.sigma) ** 2 + lam * lam) / 4.0
    return value if value.ndim else float(value)


@dataclass
class SymbolComparison:
    """Both sides of the symbol inequality at sampled spectral points."""

    lhs: np.ndarray
    rhs: np.ndarray
    rhs_printed: np.ndarray
    holds: bool
    holds_printed: bool


def symbol_gap_inequality(n: int, lam) -> SymbolComparison:
    """Symbol comparison behind the half-integer-order sharp constant, odd n >= 5.

    lhs  = gjms_symbol(n, (n-1)/2, lam) - hardy_product_const((n-1)/2),
    rhs  = product symbol of prod_{j=0}^{(n-3)/2}(j^2 - (n-1)^2/4 - Lap)
           (eigenvalue-derived reading; rhs_printed is the other reading).

    holds reports lhs >= rhs pointwise over the sample.
    """
    if n < 5 or n % 2 == 0:
        raise ValueError("requires odd n >= 5")
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    k = (n - 1) // 2
    spec = ProductSpec(k0=0, sigma=0.0, l=k)
    lhs = gjms_symbol(n, k, lam) - hardy_product_const(k)
    rhs = product_symbol(spec, lam)
    rhs_printed = product_symbol_printed(spec, lam)
    return SymbolComparison(
        lhs=lhs,
        rhs=rhs,
        rhs_printed=rhs_printed,
        holds=bool(np.all(lhs >= rhs)),
        holds_printed=bool(np.all(lhs >= rhs_printed)),
    )
