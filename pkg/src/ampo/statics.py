"""Comparative statics of AmPO values in the amortization rate q.

The q-derivatives below are stated for the continuation region only
(call spot <= boundary, put spot >= boundary); outside it the functions
refuse with RegionError rather than silently returning the zero
q-derivative of the intrinsic value.

Notation used throughout: with A = (alpha_c - 1) S / (alpha_c K) and
B = (1 + alpha_p) S / (alpha_p K),

    dC0/dq =  C0/(sigma^2 alpha_bar) * log A
    dP0/dq = -P0/(sigma^2 alpha_bar) * log B

and the mixed partial d2V/(dsigma dq) is assembled from chain-rule
factors through (alpha, alpha_bar) plus the explicit sigma-dependence
of the prefactor 1/(sigma^2 alpha_bar):

    d2V/(dsigma dq) = f1*f2 + f3*f4 + explicit, with
    f1 = d/dalpha (dV/dq)        f2 = dalpha/dsigma
    f3 = d/dalpha_bar (dV/dq)    f4 = dalpha_bar/dsigma
    explicit = -(2/sigma) dV/dq.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import (
    ContractParams,
    MarketParams,
    OptionKind,
    Regime,
    RegionError,
    ValidationError,
    intrinsic_value,
)
from .pricing import compute_exponents, exercise_boundary, premium_from_exponent, price


@dataclass(frozen=True)
class MixedPartialFactors:
    """Chain-rule pieces of d2V/(dsigma dq), exposed for sign checks."""

    d_dq_premium_dalpha: float
    dalpha_dsigma: float
    d_dq_premium_dalphabar: float
    dalphabar_dsigma: float
    explicit_sigma_term: float


@dataclass(frozen=True)
class StaticsReport:
    d_premium_dq: float
    d_boundary_dq: float
    d2_premium_dsigma_dq: float
    intermediates: MixedPartialFactors


@dataclass(frozen=True)
class LimitReport:
    """Small-q and large-q behavior of the premium.

    Small q: the premium at q = 1e-10 should match the q = 0 vanilla
    perpetual American closed form (same power-law family, exponents
    evaluated at q = 0) within 1e-6 relative.
    Large q: the premium at q = 1e4 should collapse onto the intrinsic
    value, within 1e-4 * K absolute.
    """

    premium_small_q: float
    vanilla_premium: float
    small_q_rel_err: float
    small_q_ok: bool
    premium_large_q: float
    intrinsic: float
    large_q_abs_gap: float
    large_q_ok: bool


SMALL_Q = 1e-10
LARGE_Q = 1e4
SMALL_Q_RTOL = 1e-6
LARGE_Q_ATOL_PER_K = 1e-4


def _require_continuation(m: MarketParams, c: ContractParams) -> None:
    boundary = exercise_boundary(m, c)
    if c.kind == OptionKind.CALL and m.spot > boundary:
        raise RegionError(
            f"spot {m.spot} beyond call boundary {boundary}: q-derivatives "
            "are defined on the continuation region only"
        )
    if c.kind == OptionKind.PUT and m.spot < boundary:
        raise RegionError(
            f"spot {m.spot} below put boundary {boundary}: q-derivatives "
            "are defined on the continuation region only"
        )


def d_premium_dq(m: MarketParams, c: ContractParams) -> float:
    """dV/dq in the continuation region; <= 0 for both kinds."""
    _require_continuation(m, c)
    ex = compute_exponents(m, c.amort)
    prem = price(m, c).premium
    s2ab = m.vol**2 * ex.alpha_bar
    if c.kind == OptionKind.CALL:
        log_a = math.log((ex.alpha_c - 1.0) * m.spot / (ex.alpha_c * c.strike))
        return prem / s2ab * log_a
    log_b = math.log((1.0 + ex.alpha_p) * m.spot / (ex.alpha_p * c.strike))
    return -prem / s2ab * log_b


def d_boundary_dq(m: MarketParams, c: ContractParams) -> float:
    """dS_bar/dq: -K/(sigma^2 (alpha_c-1)^2 alpha_bar) for calls,
    +K/(sigma^2 (1+alpha_p)^2 alpha_bar) for puts."""
    ex = compute_exponents(m, c.amort)
    if c.kind == OptionKind.CALL:
        return -c.strike / (m.vol**2 * (ex.alpha_c - 1.0) ** 2 * ex.alpha_bar)
    return c.strike / (m.vol**2 * (1.0 + ex.alpha_p) ** 2 * ex.alpha_bar)


def mixed_partial_factors(m: MarketParams, c: ContractParams) -> MixedPartialFactors:
    """Chain-rule factors of d2V/(dsigma dq) for the given contract."""
    _require_continuation(m, c)
    ex = compute_exponents(m, c.amort)
    r, sig, q = m.rate, m.vol, c.amort
    prem = price(m, c).premium
    s2 = sig**2
    ab = ex.alpha_bar
    # dalpha_bar/dsigma and the shared numerator 2r^2 + sigma^2 (3r + 2q)
    num = 2.0 * r**2 + s2 * (3.0 * r + 2.0 * q)
    f4 = -num / (sig**5 * ab)
    if c.kind == OptionKind.CALL:
        log_a = math.log((ex.alpha_c - 1.0) * m.spot / (ex.alpha_c * c.strike))
        f1 = prem / (s2 * ab) * (log_a**2 + 1.0 / (ex.alpha_c * (ex.alpha_c - 1.0)))
        f2 = (2.0 * r - num / (s2 * ab)) / sig**3
        f3 = -prem / (s2 * ab**2) * log_a
    else:
        log_b = math.log((1.0 + ex.alpha_p) * m.spot / (ex.alpha_p * c.strike))
        f1 = prem / (s2 * ab) * (log_b**2 + 1.0 / (ex.alpha_p * (1.0 + ex.alpha_p)))
        f2 = -(2.0 * r + num / (s2 * ab)) / sig**3
        f3 = prem / (s2 * ab**2) * log_b
    explicit = -2.0 / sig * d_premium_dq(m, c)
    return MixedPartialFactors(
        d_dq_premium_dalpha=f1,
        dalpha_dsigma=f2,
        d_dq_premium_dalphabar=f3,
        dalphabar_dsigma=f4,
        explicit_sigma_term=explicit,
    )


def d2_premium_dsigma_dq(m: MarketParams, c: ContractParams) -> float:
    f = mixed_partial_factors(m, c)
    return (
        f.d_dq_premium_dalpha * f.dalpha_dsigma
        + f.d_dq_premium_dalphabar * f.dalphabar_dsigma
        + f.explicit_sigma_term
    )


def statics_report(m: MarketParams, c: ContractParams) -> StaticsReport:
    f = mixed_partial_factors(m, c)
    mixed = (
        f.d_dq_premium_dalpha * f.dalpha_dsigma
        + f.d_dq_premium_dalphabar * f.dalphabar_dsigma
        + f.explicit_sigma_term
    )
    return StaticsReport(
        d_premium_dq=d_premium_dq(m, c),
        d_boundary_dq=d_boundary_dq(m, c),
        d2_premium_dsigma_dq=mixed,
        intermediates=f,
    )


def _piecewise_premium(m: MarketParams, c: ContractParams, q: float) -> float:
    """Premium with amort forced to q (q = 0 allowed), intrinsic beyond boundary."""
    ex = compute_exponents(m, q)
    if c.kind == OptionKind.CALL:
        if ex.alpha_c <= 1.0:
            raise ValidationError(
                f"degenerate limit: alpha_c = {ex.alpha_c} <= 1 at q = {q} "
                "(requires rate > 0 when q = 0)"
            )
        boundary = ex.alpha_c * c.strike / (ex.alpha_c - 1.0)
        if m.spot > boundary:
            return intrinsic_value(c.kind, m.spot, c.strike)
        return premium_from_exponent(c.kind, m.spot, c.strike, ex.alpha_c)
    if ex.alpha_p <= 0.0:
        raise ValidationError(
            f"degenerate limit: alpha_p = {ex.alpha_p} <= 0 at q = {q} "
            "(requires rate > 0 when q = 0)"
        )
    boundary = ex.alpha_p * c.strike / (1.0 + ex.alpha_p)
    if m.spot < boundary:
        return intrinsic_value(c.kind, m.spot, c.strike)
    return premium_from_exponent(c.kind, m.spot, c.strike, ex.alpha_p)


def limit_suite(m: MarketParams, c: ContractParams) -> LimitReport:
    """Evaluate the premium at q = 1e-10 and q = 1e4 against its limits."""
    small = _piecewise_premium(m, c, SMALL_Q)
    vanilla = _piecewise_premium(m, c, 0.0)
    small_err = abs(small - vanilla) / max(abs(vanilla), 1e-300)
    large = _piecewise_premium(m, c, LARGE_Q)
    intr = intrinsic_value(c.kind, m.spot, c.strike)
    gap = abs(large - intr)
    return LimitReport(
        premium_small_q=small,
        vanilla_premium=vanilla,
        small_q_rel_err=small_err,
        small_q_ok=small_err < SMALL_Q_RTOL,
        premium_large_q=large,
        intrinsic=intr,
        large_q_abs_gap=gap,
        large_q_ok=gap < LARGE_Q_ATOL_PER_K * c.strike,
    )
