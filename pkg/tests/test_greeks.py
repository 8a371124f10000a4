import dataclasses
import random

import pytest

from ampo import (
    ContractParams,
    MarketParams,
    OptionKind,
    delta,
    dated_bs_call,
    exercise_boundary,
    finite_difference,
    gamma,
    greeks_report,
    price,
    theta_economic,
    theta_explicit,
    vega,
)
from conftest import sample_set


def test_delta_params_a(market_a, call_a, put_a):
    assert delta(market_a, call_a) == pytest.approx(0.55516075873073, rel=1e-12)
    assert delta(market_a, put_a) == pytest.approx(-0.25, rel=1e-13)


def test_delta_exercise_region(market_a, call_a, put_a):
    assert delta(dataclasses.replace(market_a, spot=30.0), put_a) == -1.0
    assert delta(dataclasses.replace(market_a, spot=300.0), call_a) == 1.0


def test_gamma_params_a(market_a, call_a, put_a):
    assert gamma(market_a, put_a) == pytest.approx(0.005, rel=1e-13)
    assert gamma(market_a, call_a) == pytest.approx(0.00333096455238438, rel=1e-12)
    assert gamma(dataclasses.replace(market_a, spot=300.0), call_a) == 0.0


def test_vega_params_a(market_a, call_a, put_a):
    assert vega(market_a, call_a) == pytest.approx(50.2631919034417, rel=1e-12)
    assert vega(market_a, put_a) == pytest.approx(53.31901388922656, rel=1e-12)
    assert vega(dataclasses.replace(market_a, spot=300.0), call_a) == 0.0


def test_theta(market_a, call_a, put_a):
    assert theta_explicit(market_a, call_a) == 0.0
    assert theta_economic(market_a, put_a) == pytest.approx(-2.5, rel=1e-13)
    assert theta_economic(market_a, call_a) == pytest.approx(
        -0.1 * price(market_a, call_a).premium, abs=0.0
    )


def test_greeks_report_fields(market_a, put_a):
    rep = greeks_report(market_a, put_a)
    assert rep.delta == delta(market_a, put_a)
    assert rep.theta_explicit == 0.0
    assert rep.theta_economic == -put_a.amort * price(market_a, put_a).premium


def test_fd_consistency():
    rng = random.Random(17)
    for _ in range(60):
        m, c = sample_set(rng, spot_margin=0.01)

        def prem_s(s):
            return price(dataclasses.replace(m, spot=s), c).premium

        def prem_v(v):
            return price(dataclasses.replace(m, vol=v), c).premium

        assert delta(m, c) == pytest.approx(
            finite_difference(prem_s, m.spot, 1, "central", 1e-4), rel=1e-5
        )
        assert gamma(m, c) == pytest.approx(
            finite_difference(prem_s, m.spot, 2, "central", 1e-4), rel=1e-5
        )
        assert vega(m, c) == pytest.approx(
            finite_difference(prem_v, m.vol, 1, "central", 1e-4), rel=1e-5
        )


def test_sign_suite():
    rng = random.Random(19)
    for _ in range(500):
        m, c = sample_set(rng)
        d = delta(m, c)
        if c.kind == OptionKind.CALL:
            assert 0.0 < d <= 1.0
        else:
            assert -1.0 <= d < 0.0
        assert gamma(m, c) >= 0.0
        assert vega(m, c) >= 0.0


def test_delta_continuity_across_boundary():
    rng = random.Random(23)
    for _ in range(50):
        m, c = sample_set(rng)
        bd = exercise_boundary(m, c)
        target = 1.0 if c.kind == OptionKind.CALL else -1.0
        for bump in (1.0 - 1e-9, 1.0 + 1e-9):
            d = delta(dataclasses.replace(m, spot=bd * bump), c)
            assert abs(d - target) < 1e-6


def test_dated_bs_call_values(market_a):
    rep = dated_bs_call(market_a, 100.0, 2.0)
    assert rep.premium == pytest.approx(31.327683827656458, rel=1e-12)
    assert rep.delta == pytest.approx(0.6896910267811551, rel=1e-12)
    assert rep.gamma == pytest.approx(0.004991418560723049, rel=1e-12)
    assert rep.theta == pytest.approx(-8.121344143426764, rel=1e-12)
    assert rep.vega == pytest.approx(49.914185607230486, rel=1e-12)
    assert rep.theta < 0.0


def test_dated_bs_call_deep_itm():
    import math

    m = MarketParams(spot=1000.0, rate=0.05, vol=0.2)
    rep = dated_bs_call(m, 100.0, 1.0)
    assert rep.premium == pytest.approx(1000.0 - 100.0 * math.exp(-0.05), rel=1e-10)


def test_dated_bs_call_small_vol_limit():
    m = MarketParams(spot=100.0, rate=0.0, vol=1e-8)
    assert dated_bs_call(m, 100.0, 1.0).premium < 1e-6
