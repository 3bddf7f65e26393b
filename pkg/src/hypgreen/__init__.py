"""Green's functions of shifted Laplacians, product operators and GJMS
operators on hyperbolic space, with quadrature-backed verification of the
closed-form identities, pointwise bounds, spectral-symbol inequalities and
sharp-constant values they satisfy.

Everything is a pure function of its arguments; values may be evaluated
concurrently without coordination.
"""

from .quadrature import (
    DEFAULT_CONFIG,
    QuadConfig,
    QuadResult,
    QuadratureError,
    integrate_descent,
    integrate_finite,
    integrate_semiinf,
)
from .special import (
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
from .heat import (
    HeatExpr,
    apply_descent_operator,
    csch_seed,
    gaussian_seed,
    heat_kernel,
    nu_from_lambda,
    radial_gaussian_seed,
    resolvent_heat,
    resolvent_legendre,
    spectral_gap,
)
from .green import (
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
from .symbols import (
    SymbolComparison,
    gjms_symbol,
    hardy_product_const,
    laplace_symbol,
    product_symbol,
    product_symbol_printed,
    symbol_gap_inequality,
)
from .mazya import (
    DEFAULT_EPS_SWEEP,
    FitResult,
    TrialFamily,
    energy_quadratic,
    exponent_fit,
    flat_pk_bubble,
    l2_mass,
    l2_mass_limit,
    lambda_lower_bound,
    lambda_lower_bound_closed,
    lq_mass,
    lq_mass_lower,
    taylor_coeff,
    taylor_coeffs,
    trial_f,
    trial_g,
    trial_u,
)

__version__ = "0.1.0"
