"""Pricing and analytics for amortizing perpetual options."""

from .analysis import (
    MaturityResult,
    OptimizationResult,
    RatioPoint,
    StrategyKind,
    StrategySpec,
    effective_maturity,
    effective_notional_curve,
    optimize_q,
    positional_vega,
    ratio_study,
)
from .greeks import (
    DatedGreeksReport,
    GreeksReport,
    dated_bs_call,
    delta,
    gamma,
    greeks_report,
    theta_economic,
    theta_explicit,
    vega,
)
from .oracle import (
    LatticeConfig,
    OracleReport,
    finite_difference,
    lattice_price,
    pde_residual,
)
from .params import (
    AmortizationSchedule,
    AmpoError,
    ContractParams,
    ConvergenceError,
    EquivalentPerpetual,
    Exponents,
    MarketParams,
    NoSolutionError,
    OptionKind,
    Quote,
    Regime,
    RegionError,
    ValidationError,
    intrinsic_value,
)
from .pricing import (
    compute_exponents,
    exercise_boundary,
    notional_at,
    ode_coefficients,
    price,
    to_equivalent_perpetual,
)
from .statics import (
    LimitReport,
    MixedPartialFactors,
    StaticsReport,
    d_boundary_dq,
    d_premium_dq,
    d2_premium_dsigma_dq,
    limit_suite,
    mixed_partial_factors,
    statics_report,
)

__version__ = "0.1.0"

__all__ = [
    "AmortizationSchedule",
    "AmpoError",
    "ContractParams",
    "ConvergenceError",
    "DatedGreeksReport",
    "EquivalentPerpetual",
    "Exponents",
    "GreeksReport",
    "LatticeConfig",
    "LimitReport",
    "MarketParams",
    "MaturityResult",
    "MixedPartialFactors",
    "NoSolutionError",
    "OptimizationResult",
    "OptionKind",
    "OracleReport",
    "Quote",
    "RatioPoint",
    "Regime",
    "RegionError",
    "StaticsReport",
    "StrategyKind",
    "StrategySpec",
    "ValidationError",
    "compute_exponents",
    "d2_premium_dsigma_dq",
    "d_boundary_dq",
    "d_premium_dq",
    "dated_bs_call",
    "delta",
    "effective_maturity",
    "effective_notional_curve",
    "exercise_boundary",
    "finite_difference",
    "gamma",
    "greeks_report",
    "intrinsic_value",
    "lattice_price",
    "limit_suite",
    "mixed_partial_factors",
    "notional_at",
    "ode_coefficients",
    "optimize_q",
    "pde_residual",
    "positional_vega",
    "price",
    "ratio_study",
    "statics_report",
    "theta_economic",
    "theta_explicit",
    "to_equivalent_perpetual",
    "vega",
]
