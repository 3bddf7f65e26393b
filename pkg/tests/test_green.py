"""Product and GJMS Green's functions: closed forms, recursions, bounds."""

import math

import numpy as np
import pytest

from hypgreen.green import (
    ProductSpec,
    bound_gap_coeffs,
    conformal_green,
    full_product_kernel_odd,
    gjms_green,
    gjms_green_bound,
    gjms_green_gap,
    product_green,
    shifted_green_odd,
)
from hypgreen.heat import resolvent_legendre
from hypgreen.special import riesz_gamma

RHO_GRID = np.geomspace(1e-2, 20.0, 40)
RHO_SPOT = np.array([0.5, 1.0, 2.0, 5.0])


def test_shifted_green_single_term():
    for rho in (0.4, 1.3, 2.0):
        assert shifted_green_odd(5, 1, rho) == pytest.approx(
            1.0 / (8.0 * math.pi ** 2 * math.sinh(rho) ** 3), rel=1e-14
        )


def test_shifted_green_matches_resolvent():
    for rho in RHO_SPOT:
        assert shifted_green_odd(5, 0, rho) == pytest.approx(
            resolvent_legendre(5, 0.0, rho), rel=1e-10
        )
    for rho in (0.5, 1.0, 2.0):
        assert shifted_green_odd(7, 2, rho) == pytest.approx(
            resolvent_legendre(7, 2.0, rho), rel=1e-10
        )


def test_product_spec_validation():
    with pytest.raises(ValueError):
        ProductSpec(0, 0.25, 1)
    with pytest.raises(ValueError):
        ProductSpec(0, 0.0, 0)
    with pytest.raises(ValueError):
        ProductSpec(0, 0.0, 3).validate(5)  # sigma=0 needs k0 + l <= (n-1)/2
    with pytest.raises(ValueError):
        ProductSpec(0, 0.0, 1).validate(6)  # sigma=0 needs odd n
    with pytest.raises(ValueError):
        ProductSpec(1, 0.5, 2).validate(6)  # sigma=1/2 needs k0 + l <= n/2 - 1
    ProductSpec(0, 0.0, 2).validate(5)
    ProductSpec(0, 0.5, 2).validate(6)
    ProductSpec(0, 0.5, 2).validate(5)


def test_length_one_product_reduces_to_single_factor():
    for n, k0 in [(5, 0), (5, 1), (7, 2), (9, 3)]:
        a = product_green(n, ProductSpec(k0, 0.0, 1), RHO_GRID)
        b = shifted_green_odd(n, k0, RHO_GRID)
        assert np.max(np.abs(a / b - 1.0)) < 1e-13


def test_length_one_product_matches_resolvent_all_shifts():
    # sigma = 0 (odd), sigma = 1/2 (even), sigma = 1/2 (odd, by descent)
    cases = [
        (5, 0, 0.0), (7, 1, 0.0),
        (6, 0, 0.5), (6, 1, 0.5), (8, 2, 0.5),
        (5, 0, 0.5), (5, 1, 0.5), (7, 1, 0.5),
    ]
    for n, k0, sigma in cases:
        a = product_green(n, ProductSpec(k0, sigma, 1), RHO_SPOT)
        b = np.array([resolvent_legendre(n, k0 + sigma, r) for r in RHO_SPOT])
        assert np.max(np.abs(a / b - 1.0)) < 1e-9, (n, k0, sigma)


def test_full_product_closed_form_5d():
    pg = product_green(5, ProductSpec(0, 0.0, 2), RHO_GRID)
    closed = 1.0 / (16.0 * math.pi ** 2 * np.cosh(RHO_GRID / 2) ** 3
                    * 2.0 * np.sinh(RHO_GRID / 2))
    assert np.max(np.abs(pg / closed - 1.0)) < 1e-12


def test_full_product_kernel_matches_general_form():
    for n in (5, 7, 9):
        spec = ProductSpec(0, 0.0, (n - 1) // 2)
        a = product_green(n, spec, RHO_GRID)
        b = full_product_kernel_odd(n, RHO_GRID)
        assert np.max(np.abs(a / b - 1.0)) < 1e-12


def test_full_product_kernel_bound_and_slack():
    rho = RHO_GRID
    for n in (5, 7):
        kern = full_product_kernel_odd(n, rho)
        cap = 1.0 / riesz_gamma(n, n - 1) / (2.0 * np.sinh(rho / 2.0))
        slack = kern / cap
        assert np.all(kern <= cap * (1 + 1e-14))
        assert np.allclose(slack, np.cosh(rho / 2.0) ** (2 - n), rtol=1e-12)


def test_full_product_kernel_log_slope():
    n = 7
    r1, r2 = 15.0, 20.0
    slope = (
        math.log(full_product_kernel_odd(n, r2)) - math.log(full_product_kernel_odd(n, r1))
    ) / (r2 - r1)
    assert abs(slope + (n - 1) / 2.0) < 1e-3


def _telescoping_worst(n, sigma, rho):
    if sigma == 0.0:
        m = (n - 1) // 2
        lmax, kmax = m, lambda l: m - l
        pref = lambda k0, l: 1.0 / ((2 * k0 + l) * l)
    else:
        m = n // 2 if n % 2 == 0 else (n + 1) // 2
        lmax, kmax = m - 1, lambda l: m - 1 - l
        pref = lambda k0, l: 1.0 / ((2 * k0 + 1 + l) * l)
    worst = 0.0
    for l in range(1, lmax):
        for k0 in range(0, kmax(l + 1) + 1):
            lhs = product_green(n, ProductSpec(k0, sigma, l + 1), rho)
            a = product_green(n, ProductSpec(k0, sigma, l), rho)
            b = product_green(n, ProductSpec(k0 + 1, sigma, l), rho)
            rhs = pref(k0, l) * (np.asarray(a) - np.asarray(b))
            worst = max(worst, float(np.max(np.abs(rhs / lhs - 1.0))))
    return worst


def test_telescoping_recursion_closed_forms():
    for n in (5, 7, 9, 11):
        assert _telescoping_worst(n, 0.0, RHO_GRID) < 1e-10, n
    for n in (6, 8, 10):
        assert _telescoping_worst(n, 0.5, RHO_GRID) < 1e-10, n


def test_telescoping_recursion_odd_half_shift_spot():
    # the half-shift recursion survives descent to odd dimension (linearity)
    n, k0, l = 7, 0, 1
    rho = np.array([0.7, 1.5])
    lhs = product_green(n, ProductSpec(k0, 0.5, l + 1), rho)
    a = product_green(n, ProductSpec(k0, 0.5, l), rho)
    b = product_green(n, ProductSpec(k0 + 1, 0.5, l), rho)
    rhs = (a - b) / ((2 * k0 + 1 + l) * l)
    assert np.max(np.abs(rhs / lhs - 1.0)) < 1e-8


def test_gjms_green_even_orders():
    # k = 1 equals the classical conformal-Laplacian kernel identically
    for n in (4, 6, 8):
        a = gjms_green(n, 1, RHO_GRID)
        b = product_green(n, ProductSpec(0, 0.5, 1), RHO_GRID)
        assert np.max(np.abs(a / b - 1.0)) < 1e-12
    # top order: one-term sum
    for n in (6, 8):
        m = n // 2
        k = m - 1
        expected = (
            4.0 ** (k - 1) / riesz_gamma(n, 2 * k)
            * np.sinh(RHO_SPOT) ** (2 - 2 * m) * np.sinh(RHO_SPOT / 2) ** (2 * k - 2)
        )
        assert np.allclose(gjms_green(n, k, RHO_SPOT), expected, rtol=1e-13)


def test_gjms_green_odd_matches_half_shift_product():
    a = gjms_green(5, 2, RHO_SPOT)
    b = product_green(5, ProductSpec(0, 0.5, 2), RHO_SPOT)
    assert np.max(np.abs(a / b - 1.0)) < 1e-8


def test_gjms_green_order_validation():
    with pytest.raises(ValueError):
        gjms_green(3, 2, 1.0)
    with pytest.raises(ValueError):
        gjms_green_bound(6, 3, 1.0)


def test_bound_gap_coefficients():
    assert bound_gap_coeffs(10, 1) == [0.0]
    assert bound_gap_coeffs(8, 2) == [2.0, 0.0]
    for n in range(4, 21, 2):
        for k in range(1, n // 2):
            coeffs = bound_gap_coeffs(n, k)
            assert all(c >= 0.0 for c in coeffs)
            if k >= 2:
                assert any(c > 0.0 for c in coeffs)


def test_gap_consistent_with_direct_subtraction():
    for n in range(3, 13):
        for k in range(1, (n - 1) // 2 + 1):
            if not k < n / 2:
                continue
            gap = np.atleast_1d(gjms_green_gap(n, k, RHO_SPOT))
            direct = np.atleast_1d(
                gjms_green_bound(n, k, RHO_SPOT) - gjms_green(n, k, RHO_SPOT)
            )
            scale = np.abs(np.atleast_1d(gjms_green_bound(n, k, RHO_SPOT)))
            assert np.max(np.abs(gap - direct)) <= 1e-7 * np.max(scale) + 1e-15


def test_gap_nonnegative_and_zero_at_first_order():
    for n in range(3, 13):
        for k in range(1, (n - 1) // 2 + 1):
            if not k < n / 2:
                continue
            gap = np.atleast_1d(gjms_green_gap(n, k, RHO_GRID))
            assert np.min(gap) >= -1e-13
            if k == 1:
                assert np.max(np.abs(gap)) < 1e-13
            elif n % 2 == 0:
                assert np.min(gap[RHO_GRID > 0]) > 0.0


def test_green_positivity_and_monotone_decrease():
    for n, k in [(6, 2), (8, 3), (5, 2), (9, 1)]:
        values = np.atleast_1d(gjms_green(n, k, RHO_GRID))
        assert np.all(values > 0.0)
        assert np.all(np.diff(values) < 0.0)
    for n, spec in [(7, ProductSpec(1, 0.0, 2)), (8, ProductSpec(0, 0.5, 3))]:
        values = np.atleast_1d(product_green(n, spec, RHO_GRID))
        assert np.all(values > 0.0)
        assert np.all(np.diff(values) < 0.0)


def test_conformal_green_stable_at_large_rho():
    # difference-of-powers form is evaluated cancellation-free
    value = conformal_green(4, 40.0)
    assert value == pytest.approx(1.0 / (riesz_gamma(4, 2)
                                         * math.sinh(40.0) ** 2), rel=1e-12)
