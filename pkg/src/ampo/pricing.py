"""Closed-form valuation of amortizing perpetual options (AmPOs).

An AmPO is a perpetual American option whose claimable notional decays
deterministically at a constant amortization rate q, so N_t = N0*e^{-q t}.
Per unit of current notional the contract behaves like a dividend-paying
perpetual American option, and premium, exercise boundary and regime all
admit power-law closed forms in the spot.

Conventions: all rates and the volatility are annualized, times are in
years, and premia are per unit of current notional.
"""

from __future__ import annotations

import math

from .params import (
    AmortizationSchedule,
    ContractParams,
    EquivalentPerpetual,
    Exponents,
    MarketParams,
    OptionKind,
    Quote,
    Regime,
    ValidationError,
    intrinsic_value,
)


def compute_exponents(m: MarketParams, q: float) -> Exponents:
    """Power-law exponents (alpha_c, alpha_p, alpha_bar) for amortization rate q.

    alpha_c = sqrt((r/sigma^2 + 1/2)^2 + 2(r+q)/sigma^2) - r/sigma^2 + 1/2
    alpha_p = sqrt((r/sigma^2 + 1/2)^2 + 2(r+q)/sigma^2) + r/sigma^2 - 1/2

    q = 0 is accepted here (it is needed by the limit diagnostics) even
    though pricing itself requires q > 0; the q = r = 0 case degenerates
    to alpha_c = 1, alpha_p = 0 and is not valid for pricing.
    """
    if q < 0:
        raise ValidationError(f"amort must be >= 0, got {q}")
    x = m.rate / m.vol**2
    radical = math.sqrt((x + 0.5) ** 2 + 2.0 * (m.rate + q) / m.vol**2)
    alpha_c = radical - x + 0.5
    alpha_p = radical + x - 0.5
    return Exponents(alpha_c, alpha_p, 0.5 * (alpha_c + alpha_p))


def exercise_boundary(m: MarketParams, c: ContractParams) -> float:
    """Optimal exercise boundary: alpha_c*K/(alpha_c-1) call, alpha_p*K/(1+alpha_p) put."""
    ex = compute_exponents(m, c.amort)
    if c.kind == OptionKind.CALL:
        if ex.alpha_c <= 1.0:
            raise ValidationError(
                f"call boundary undefined: alpha_c = {ex.alpha_c} <= 1"
            )
        return ex.alpha_c * c.strike / (ex.alpha_c - 1.0)
    return ex.alpha_p * c.strike / (1.0 + ex.alpha_p)


def premium_from_exponent(
    kind: OptionKind, spot: float, strike: float, alpha: float
) -> float:
    """Continuation-region premium given the relevant exponent.

    Call: K/(alpha-1) * ((alpha-1)S/(alpha K))^alpha, needs alpha > 1.
    Put:  K/(1+alpha) * (alpha K/((1+alpha)S))^alpha, needs alpha > 0.
    Powers go through exp(alpha*log(.)) so non-integer exponents of
    positive arguments are handled without sign pitfalls.
    """
    if kind == OptionKind.CALL:
        if alpha <= 1.0:
            raise ValidationError(f"call premium undefined: alpha = {alpha} <= 1")
        a = (alpha - 1.0) * spot / (alpha * strike)
        return strike / (alpha - 1.0) * math.exp(alpha * math.log(a))
    if alpha <= 0.0:
        raise ValidationError(f"put premium undefined: alpha = {alpha} <= 0")
    b = alpha * strike / ((1.0 + alpha) * spot)
    return strike / (1.0 + alpha) * math.exp(alpha * math.log(b))


def price(m: MarketParams, c: ContractParams) -> Quote:
    """Premium, boundary and regime for an AmPO.

    In the continuation region the closed form applies; beyond the
    boundary the option is exercised immediately and the quote carries
    the intrinsic value. A spot exactly on the boundary is classified
    Continuation (the two branches agree there by value matching).
    """
    boundary = exercise_boundary(m, c)
    ex = compute_exponents(m, c.amort)
    if c.kind == OptionKind.CALL:
        exercised = m.spot > boundary
        alpha = ex.alpha_c
    else:
        exercised = m.spot < boundary
        alpha = ex.alpha_p
    if exercised:
        return Quote(
            premium=intrinsic_value(c.kind, m.spot, c.strike),
            boundary=boundary,
            regime=Regime.EXERCISE_NOW,
        )
    prem = premium_from_exponent(c.kind, m.spot, c.strike, alpha)
    return Quote(premium=prem, boundary=boundary, regime=Regime.CONTINUATION)


def to_equivalent_perpetual(c: ContractParams, m: MarketParams) -> EquivalentPerpetual:
    """Map an AmPO to the vanilla perpetual American with the same value.

    The per-unit-notional value function solves

        (1/2) sigma^2 S^2 V'' + r S V' - (2r + q) V = 0

    in the continuation region: amortization adds q to the discounting
    while leaving the risk-neutral drift at r. The matching vanilla
    perpetual therefore carries effective rate 2r+q and dividend yield
    r+q; their difference is the original rate r, so the drift of the
    underlying is unchanged.
    """
    return EquivalentPerpetual(
        rate_eff=2.0 * m.rate + c.amort,
        dividend_eff=m.rate + c.amort,
        payoff_kind=c.kind,
        strike=c.strike,
    )


def ode_coefficients(m: MarketParams, q: float) -> tuple[float, float]:
    """(drift rate, discount rate) of the valuation ODE, i.e. (r, 2r+q)."""
    return m.rate, 2.0 * m.rate + q


def notional_at(s: AmortizationSchedule, t: float) -> float:
    """Notional at time t under exponential decay: N0 * e^{-q t}."""
    if t < 0:
        raise ValidationError(f"t must be >= 0, got {t}")
    return s.initial_notional * math.exp(-s.amort * t)
