"""Named verification checks bundling the library's cross-identities.

Each check recomputes one family of identities (cross-route resolvents,
telescoping recursions, Legendre-representation agreement, the spectral
symbol inequality, the closed Hardy-coefficient values, ...) and reports
its worst residual against a default tolerance.  The CLI `verify` command
runs these; the test suite exercises the same identities at full depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .green import ProductSpec, full_product_kernel_odd, gjms_green_gap, product_green
from .heat import nu_from_lambda, resolvent_heat, resolvent_legendre
from .mazya import lambda_lower_bound, lambda_lower_bound_closed
from .quadrature import integrate_finite, integrate_semiinf
from .special import (
    beta_trig,
    hls_const,
    legendre_q,
    legendre_q_exp,
    legendre_q_trig,
    riesz_gamma,
    sobolev_const,
)
from .symbols import symbol_gap_inequality

__all__ = ["CheckResult", "CHECK_NAMES", "run_check", "run_checks", "standard_rho_grid"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tol: float
    detail: str = ""


def standard_rho_grid(count: int = 40) -> np.ndarray:
    """The library's standard geometric grid over [1e-2, 20]."""
    return np.geomspace(1e-2, 20.0, count)


def _check_legendre_representations(tol: float) -> CheckResult:
    rng = np.random.default_rng(20260810)
    worst = 0.0
    for _ in range(12):
        nu = rng.uniform(-0.9, 3.0)
        mu = rng.uniform(-2.0, 0.49)
        if nu + mu + 1.0 <= 0.05:
            mu = min(-nu - 0.95 + rng.uniform(0.05, 0.5), 0.49)
        rho = rng.uniform(0.1, 3.0)
        a = legendre_q_trig(nu, mu, math.cosh(rho))
        b = legendre_q_exp(nu, mu, math.cosh(rho))
        worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    return CheckResult("legendre-representations", worst <= tol, worst, tol)


def _check_index_raising(tol: float) -> CheckResult:
    from .quadrature import integrate_descent

    worst = 0.0
    for nu, lam, mu, rho in [(1.0, 0.5, 0.5, 1.0), (2.0, 0.5, 1.0, 1.0), (1.5, -0.4, 0.5, 1.2)]:
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
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return CheckResult("legendre-index-raising", worst <= tol, worst, tol)


def _check_beta_closed_form(tol: float) -> CheckResult:
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(8):
        p = rng.uniform(0.0, 4.0)
        q = rng.uniform(0.0, 4.0)

        def f(t):
            return (1.0 + np.cos(t)) ** p * np.sin(t) ** q

        oracle = integrate_finite(f, 0.0, math.pi).require()
        worst = max(worst, abs(beta_trig(p, q) - oracle) / oracle)
    return CheckResult("beta-closed-form", worst <= tol, worst, tol)


def _check_resolvent_routes(tol: float) -> CheckResult:
    worst = 0.0
    for n in (3, 4, 5):
        for lam in (0.0, 1.0):
            for rho in (0.5, 2.0):
                gh = resolvent_heat(n, lam, rho)
                gl = resolvent_legendre(n, nu_from_lambda(n, lam), rho)
                worst = max(worst, abs(gh - gl) / abs(gl))
    return CheckResult("resolvent-routes", worst <= tol, worst, tol)


def _check_resolvent_closed_form_3d(tol: float) -> CheckResult:
    worst = 0.0
    for nu in (0.0, 0.5, 1.0, 2.0):
        for rho in (0.5, 1.0, 3.0):
            value = resolvent_legendre(3, nu, rho)
            closed = math.exp(-nu * rho) / (4.0 * math.pi * math.sinh(rho))
            worst = max(worst, abs(value - closed) / closed)
    return CheckResult("resolvent-closed-form-3d", worst <= tol, worst, tol)


def _telescoping_residual(n: int, sigma: float, rho: np.ndarray) -> float:
    if sigma == 0.0:
        m = (n - 1) // 2
        lmax = m
        kmax = lambda l: m - l  # noqa: E731
        pref = lambda k0, l: 1.0 / ((2 * k0 + l) * l)  # noqa: E731
    else:
        m = n // 2 if n % 2 == 0 else (n + 1) // 2
        lmax = m - 1
        kmax = lambda l: m - 1 - l  # noqa: E731
        pref = lambda k0, l: 1.0 / ((2 * k0 + 1 + l) * l)  # noqa: E731
    worst = 0.0
    for l in range(1, lmax):
        for k0 in range(0, kmax(l + 1) + 1):
            lhs = product_green(n, ProductSpec(k0, sigma, l + 1), rho)
            a = product_green(n, ProductSpec(k0, sigma, l), rho)
            b = product_green(n, ProductSpec(k0 + 1, sigma, l), rho)
            rhs = pref(k0, l) * (a - b)
            worst = max(worst, float(np.max(np.abs(rhs / lhs - 1.0))))
    return worst


def _check_telescoping(tol: float) -> CheckResult:
    rho = standard_rho_grid()
    worst = 0.0
    for n in (5, 7, 9, 11):
        worst = max(worst, _telescoping_residual(n, 0.0, rho))
    for n in (6, 8, 10):
        worst = max(worst, _telescoping_residual(n, 0.5, rho))
    return CheckResult("telescoping", worst <= tol, worst, tol)


def _check_product_kernel_collapse(tol: float) -> CheckResult:
    rho = standard_rho_grid()
    worst = 0.0
    for n in (5, 7, 9):
        spec = ProductSpec(0, 0.0, (n - 1) // 2)
        a = product_green(n, spec, rho)
        b = full_product_kernel_odd(n, rho)
        worst = max(worst, float(np.max(np.abs(a / b - 1.0))))
    return CheckResult("product-kernel-collapse", worst <= tol, worst, tol)


def _check_green_bound_gap(tol: float) -> CheckResult:
    rho = standard_rho_grid()
    worst = 0.0
    for n in range(3, 13):
        for k in range(1, (n - 1) // 2 + 1):
            if not k < n / 2:
                continue
            gap = np.atleast_1d(gjms_green_gap(n, k, rho))
            worst = max(worst, float(-np.min(gap)))
            if k == 1:
                worst = max(worst, float(np.max(np.abs(gap))))
    return CheckResult("green-bound-gap", worst <= tol, worst, tol)


def _check_symbol_inequality(tol: float) -> CheckResult:
    lam = np.linspace(-50.0, 50.0, 1001)
    worst = -np.inf
    for n in (5, 7, 9, 11, 13, 15):
        cmp = symbol_gap_inequality(n, lam)
        worst = max(worst, float(np.max(cmp.rhs - cmp.lhs)))
        worst = max(worst, float(np.max(cmp.rhs_printed - cmp.lhs)))
    return CheckResult("symbol-inequality", worst <= tol, worst, tol)


def _check_hardy_lambda(tol: float) -> CheckResult:
    worst = 0.0
    for k in (2, 3):
        worst = max(
            worst, abs(lambda_lower_bound(2 * k + 2, k) - lambda_lower_bound_closed(k))
        )
    return CheckResult("hardy-lambda-closed-form", worst <= tol, worst, tol)


def _check_duality_constants(tol: float) -> CheckResult:
    worst = 0.0
    for n in (5, 7, 9):
        lhs = sobolev_const(n, (n - 1) // 2) * hls_const(n, 1.0)
        rhs = riesz_gamma(n, n - 1)
        worst = max(worst, abs(lhs - rhs) / rhs)
    return CheckResult("duality-constants", worst <= tol, worst, tol)


# name -> (default tolerance, implementation)
_CHECKS: dict[str, tuple[float, Callable[[float], CheckResult]]] = {
    "legendre-representations": (1e-9, _check_legendre_representations),
    "legendre-index-raising": (1e-7, _check_index_raising),
    "beta-closed-form": (1e-10, _check_beta_closed_form),
    "resolvent-routes": (1e-6, _check_resolvent_routes),
    "resolvent-closed-form-3d": (1e-10, _check_resolvent_closed_form_3d),
    "telescoping": (1e-10, _check_telescoping),
    "product-kernel-collapse": (1e-12, _check_product_kernel_collapse),
    "green-bound-gap": (1e-13, _check_green_bound_gap),
    "symbol-inequality": (1e-12, _check_symbol_inequality),
    "hardy-lambda-closed-form": (1e-8, _check_hardy_lambda),
    "duality-constants": (1e-10, _check_duality_constants),
}

CHECK_NAMES = tuple(_CHECKS)


def run_check(name: str, tol: float | None = None) -> CheckResult:
    """Run one named check, optionally overriding its tolerance."""
    if name not in _CHECKS:
        raise ValueError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
    default_tol, fn = _CHECKS[name]
    return fn(tol if tol is not None else default_tol)


def run_checks(only: list[str] | None = None, tol: float | None = None) -> list[CheckResult]:
    """Run the selected checks (all by default) in declaration order."""
    names = list(CHECK_NAMES) if not only else list(only)
    for name in names:
        if name not in _CHECKS:
            raise ValueError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}")
    return [run_check(name, tol) for name in names]
