"""Case studies built on the closed forms.

Three analyses: the effective maturity of an AmPO (the dated ATM call
maturity with the same premium) and the notional surviving to it; Gamma
and time-decay ratios against that effectively dated call; and
budget-constrained positional Vega over the amortization rate, with an
optimizer for the best q per strategy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from scipy.optimize import brentq

from .greeks import dated_bs_call, gamma as ampo_gamma, vega as ampo_vega
from .params import (
    ContractParams,
    MarketParams,
    NoSolutionError,
    OptionKind,
    ValidationError,
)
from .pricing import price


class StrategyKind(str, Enum):
    CALL_ONLY = "call"
    PUT_ONLY = "put"
    STRADDLE = "straddle"


@dataclass(frozen=True)
class StrategySpec:
    kind: StrategyKind
    budget: float

    def __post_init__(self):
        if self.budget <= 0:
            raise ValidationError(f"budget must be > 0, got {self.budget}")
        if not isinstance(self.kind, StrategyKind):
            object.__setattr__(self, "kind", StrategyKind(self.kind))


@dataclass(frozen=True)
class MaturityResult:
    q: float
    effective_maturity: float
    effective_notional: float


@dataclass(frozen=True)
class RatioPoint:
    q: float
    gamma_ratio: float
    theta_ratio: float


@dataclass(frozen=True)
class OptimizationResult:
    q_star: float
    positional_vega_at_star: float
    curve: list[tuple[float, float]]
    boundary_maximum: bool
    multimodal: bool


_PREMIUM_TOL = 1e-10


def effective_maturity(m: MarketParams, strike: float, q: float) -> MaturityResult:
    """Maturity T at which the dated call premium equals the AmPO call premium.

    Solved by bracketing plus Brent root finding to 1e-10 in premium;
    also returns the notional fraction e^{-qT} surviving to T.
    """
    target = price(m, ContractParams(strike=strike, amort=q, kind=OptionKind.CALL)).premium
    if target >= m.spot - _PREMIUM_TOL:
        raise NoSolutionError(
            f"AmPO premium {target} meets or exceeds the dated-call supremum {m.spot}"
        )

    def gap(t: float) -> float:
        return dated_bs_call(m, strike, t).premium - target

    lo, hi = 1e-9, 1.0
    while gap(hi) < 0.0:
        hi *= 2.0
        if hi > 1e7:
            raise NoSolutionError("failed to bracket the effective maturity")
    try:
        t = brentq(gap, lo, hi, xtol=1e-13, rtol=8.9e-16)
    except ValueError as exc:
        raise NoSolutionError(f"effective-maturity root finding failed: {exc}") from exc
    return MaturityResult(q=q, effective_maturity=t, effective_notional=math.exp(-q * t))


def effective_notional_curve(m: MarketParams, strike: float, q_grid) -> list[MaturityResult]:
    return [effective_maturity(m, strike, q) for q in q_grid]


def ratio_study(m: MarketParams, strike: float, q_grid) -> list[RatioPoint]:
    """Per q: AmPO Gamma / dated Gamma, and q*C0 / |dated Theta|.

    The dated peer is the call with the matching effective maturity;
    both sides are evaluated at the initial spot at time zero, the only
    instant the two contracts are directly comparable.
    """
    out = []
    for q in q_grid:
        res = effective_maturity(m, strike, q)
        dated = dated_bs_call(m, strike, res.effective_maturity)
        contract = ContractParams(strike=strike, amort=q, kind=OptionKind.CALL)
        g_ratio = ampo_gamma(m, contract) / dated.gamma
        prem = price(m, contract).premium
        t_ratio = q * prem / abs(dated.theta)
        out.append(RatioPoint(q=q, gamma_ratio=g_ratio, theta_ratio=t_ratio))
    return out


def positional_vega(m: MarketParams, strike: float, s: StrategySpec, q: float) -> float:
    """Vega of a budget-constrained position: budget * vega / premium.

    The straddle holds equal notional of the ATM call and put at the
    same q, so its ratio uses the combined premium and combined vega.
    """
    kinds = {
        StrategyKind.CALL_ONLY: (OptionKind.CALL,),
        StrategyKind.PUT_ONLY: (OptionKind.PUT,),
        StrategyKind.STRADDLE: (OptionKind.CALL, OptionKind.PUT),
    }[s.kind]
    prem = 0.0
    veg = 0.0
    for kind in kinds:
        contract = ContractParams(strike=strike, amort=q, kind=kind)
        prem += price(m, contract).premium
        veg += ampo_vega(m, contract)
    if prem < 1e-12:
        raise NoSolutionError(f"degenerate strategy: premium {prem} below 1e-12")
    return s.budget * veg / prem


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_section_max(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section search for the maximizer of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def optimize_q(
    m: MarketParams,
    strike: float,
    s: StrategySpec,
    q_range: tuple[float, float],
    grid_points: int = 201,
) -> OptimizationResult:
    """Best amortization rate for the strategy's positional Vega.

    A coarse scan (>= 200 points) locates the structure; golden-section
    refinement to 1e-6 in q runs only when the scan shows a single
    interior peak. An edge argmax is flagged as a boundary maximum and
    several interior peaks as multimodal (returning the grid argmax).
    """
    lo, hi = q_range
    if not (0.0 < lo < hi):
        raise ValidationError(f"q_range must satisfy 0 < lo < hi, got {q_range}")
    n = max(grid_points, 200)
    qs = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    f = lambda q: positional_vega(m, strike, s, q)
    vs = [f(q) for q in qs]
    curve = list(zip(qs, vs))
    imax = max(range(n), key=vs.__getitem__)
    if imax in (0, n - 1):
        return OptimizationResult(
            q_star=qs[imax],
            positional_vega_at_star=vs[imax],
            curve=curve,
            boundary_maximum=True,
            multimodal=False,
        )
    peaks = [
        i for i in range(1, n - 1) if vs[i] >= vs[i - 1] and vs[i] >= vs[i + 1]
    ]
    if len(peaks) != 1:
        return OptimizationResult(
            q_star=qs[imax],
            positional_vega_at_star=vs[imax],
            curve=curve,
            boundary_maximum=False,
            multimodal=True,
        )
    q_star = _golden_section_max(f, qs[imax - 1], qs[imax + 1], 1e-6)
    return OptimizationResult(
        q_star=q_star,
        positional_vega_at_star=f(q_star),
        curve=curve,
        boundary_maximum=False,
        multimodal=False,
    )
