"""Analytic Greeks of the AmPO closed forms, plus a dated Black-Scholes
reference pricer used by the effective-maturity comparisons.

The perpetual price has no explicit time dependence, so the explicit
Theta is identically zero; the holder's position still decays through
the amortizing notional, captured by the economic Theta -q*V.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import ContractParams, MarketParams, OptionKind, Regime, ValidationError
from .pricing import compute_exponents, price


@dataclass(frozen=True)
class GreeksReport:
    delta: float
    gamma: float
    theta_explicit: float
    theta_economic: float
    vega: float


@dataclass(frozen=True)
class DatedGreeksReport:
    premium: float
    delta: float
    gamma: float
    theta: float
    vega: float


def _norm_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def _norm_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def delta(m: MarketParams, c: ContractParams) -> float:
    """dV/dS. Piecewise: closed form in continuation, +-1 once exercised.

    Call: ((alpha_c-1)S/(alpha_c K))^(alpha_c-1)
    Put:  -((1+alpha_p)S/(alpha_p K))^(-(1+alpha_p))
    Smooth pasting makes both branches meet at the boundary.
    """
    q = price(m, c)
    if c.kind == OptionKind.CALL:
        if q.regime == Regime.EXERCISE_NOW:
            return 1.0
        ex = compute_exponents(m, c.amort)
        a = (ex.alpha_c - 1.0) * m.spot / (ex.alpha_c * c.strike)
        return math.exp((ex.alpha_c - 1.0) * math.log(a))
    if q.regime == Regime.EXERCISE_NOW:
        return -1.0
    ex = compute_exponents(m, c.amort)
    b = (1.0 + ex.alpha_p) * m.spot / (ex.alpha_p * c.strike)
    return -math.exp(-(1.0 + ex.alpha_p) * math.log(b))


def gamma(m: MarketParams, c: ContractParams) -> float:
    """d2V/dS2; zero in the exercise region (payoff is linear there)."""
    q = price(m, c)
    if q.regime == Regime.EXERCISE_NOW:
        return 0.0
    ex = compute_exponents(m, c.amort)
    if c.kind == OptionKind.CALL:
        a = (ex.alpha_c - 1.0) * m.spot / (ex.alpha_c * c.strike)
        return (
            (ex.alpha_c - 1.0) ** 2
            / (ex.alpha_c * c.strike)
            * math.exp((ex.alpha_c - 2.0) * math.log(a))
        )
    b = (1.0 + ex.alpha_p) * m.spot / (ex.alpha_p * c.strike)
    return (
        ex.alpha_p
        * c.strike
        / m.spot**2
        * math.exp(-ex.alpha_p * math.log(b))
    )


def vega(m: MarketParams, c: ContractParams) -> float:
    """dV/dsigma per unit of sigma; zero in the exercise region.

    Call: (4 C0/sigma) * log((alpha_c-1)S/(alpha_c K))
                       * ((alpha_c-2)r - q) / ((2 alpha_c - 1) sigma^2 + 2r)
    Put:  (4 P0/sigma) * log((1+alpha_p)S/(alpha_p K))
                       * ((2+alpha_p)r + q) / ((2 alpha_p + 1) sigma^2 - 2r)

    Both denominators equal 2 sigma^2 alpha_bar algebraically and are
    therefore strictly positive for valid parameters; the zero check is
    kept as a guard against unforeseen degenerate input.
    """
    q = price(m, c)
    if q.regime == Regime.EXERCISE_NOW:
        return 0.0
    ex = compute_exponents(m, c.amort)
    s2 = m.vol**2
    if c.kind == OptionKind.CALL:
        den = (2.0 * ex.alpha_c - 1.0) * s2 + 2.0 * m.rate
        if den == 0.0:
            raise ValidationError("call vega denominator vanished")
        log_a = math.log((ex.alpha_c - 1.0) * m.spot / (ex.alpha_c * c.strike))
        num = (ex.alpha_c - 2.0) * m.rate - c.amort
        return 4.0 * q.premium / m.vol * log_a * num / den
    den = (2.0 * ex.alpha_p + 1.0) * s2 - 2.0 * m.rate
    if den == 0.0:
        raise ValidationError("put vega denominator vanished")
    log_b = math.log((1.0 + ex.alpha_p) * m.spot / (ex.alpha_p * c.strike))
    num = (2.0 + ex.alpha_p) * m.rate + c.amort
    return 4.0 * q.premium / m.vol * log_b * num / den


def theta_explicit(m: MarketParams, c: ContractParams) -> float:
    """dV/dt of the perpetual price: identically zero."""
    return 0.0


def theta_economic(m: MarketParams, c: ContractParams) -> float:
    """Position decay from amortization: -q * premium."""
    return -c.amort * price(m, c).premium


def greeks_report(m: MarketParams, c: ContractParams) -> GreeksReport:
    return GreeksReport(
        delta=delta(m, c),
        gamma=gamma(m, c),
        theta_explicit=theta_explicit(m, c),
        theta_economic=theta_economic(m, c),
        vega=vega(m, c),
    )


def dated_bs_call(m: MarketParams, strike: float, maturity: float) -> DatedGreeksReport:
    """European call under Black-Scholes with maturity T, zero dividends.

    The normal CDF goes through math.erf (absolute error < 1e-15).
    """
    if maturity <= 0:
        raise ValidationError(f"maturity must be > 0, got {maturity}")
    if strike <= 0:
        raise ValidationError(f"strike must be > 0, got {strike}")
    s, k, r, sig, t = m.spot, strike, m.rate, m.vol, maturity
    sqt = math.sqrt(t)
    d1 = (math.log(s / k) + (r + 0.5 * sig**2) * t) / (sig * sqt)
    d2 = d1 - sig * sqt
    nd1, nd2 = _norm_cdf(d1), _norm_cdf(d2)
    disc_k = k * math.exp(-r * t)
    prem = s * nd1 - disc_k * nd2
    pdf1 = _norm_pdf(d1)
    return DatedGreeksReport(
        premium=prem,
        delta=nd1,
        gamma=pdf1 / (s * sig * sqt),
        theta=-s * pdf1 * sig / (2.0 * sqt) - r * disc_k * nd2,
        vega=s * pdf1 * sqt,
    )
