import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stockdim.forecasting import (
    METHOD_NAIVE,
    METHOD_SEASONAL,
    SeasonalProfile,
    backtest,
    fit_seasonal_indices,
    forecast,
    monthly_need,
)
from stockdim.ingestion import MonthlySeries

DEC_PEAK = (100,) * 11 + (200,)  # 1300 boxes/year, all of the bump in December


def years(pattern, n):
    return MonthlySeries("P", 2019, tuple(pattern) * n)


def test_monthly_need_examples():
    assert monthly_need(years((100,) * 12, 1), 2020) == 100
    assert monthly_need(years((0,) * 12, 1), 2020) == 0
    m = monthly_need(years((100,) + (0,) * 11, 1), 2020)
    assert m == Fraction(100, 12)
    assert float(m) == pytest.approx(8.333333333333334, abs=1e-12)


def test_monthly_need_requires_prior_year():
    with pytest.raises(ValueError, match="year 2021 not covered"):
        monthly_need(years((100,) * 12, 1), 2022)


def test_flat_demand_gives_unit_indices():
    profile = fit_seasonal_indices(years((100,) * 12, 2))
    assert profile.indices == (Fraction(1),) * 12


def test_december_peak_indices_hand_check():
    # month mean Dec = 200, others 100; grand mean = 1300/12
    # index_Dec = 200/(1300/12) = 24/13, others = 12/13, sum = 12 exactly
    profile = fit_seasonal_indices(years(DEC_PEAK, 2))
    assert profile.indices[11] == Fraction(24, 13)
    assert set(profile.indices[:11]) == {Fraction(12, 13)}
    assert float(profile.indices[11]) == pytest.approx(1.8461538461538463, abs=1e-12)
    assert float(profile.indices[0]) == pytest.approx(0.9230769230769231, abs=1e-12)
    assert sum(profile.indices) == 12


def test_all_zero_series_falls_back_to_flat_profile():
    profile = fit_seasonal_indices(years((0,) * 12, 3))
    assert profile.indices == (Fraction(1),) * 12


def test_fit_requires_two_years():
    with pytest.raises(ValueError, match="at least 2 full years"):
        fit_seasonal_indices(years((100,) * 12, 1))


def test_indices_mean_is_one_and_scale_invariant():
    rnd = random.Random(5)
    for _ in range(25):
        pattern = [rnd.randint(0, 400) for _ in range(24)]
        series = MonthlySeries("P", 2019, tuple(pattern))
        profile = fit_seasonal_indices(series)
        assert sum(profile.indices) == 12 or profile.indices == (Fraction(1),) * 12
        k = rnd.randint(2, 9)
        scaled = MonthlySeries("P", 2019, tuple(v * k for v in pattern))
        assert fit_seasonal_indices(scaled).indices == profile.indices


def test_scale_equivariance_of_monthly_need():
    pattern = [7, 0, 13, 40, 5, 0, 0, 9, 120, 3, 2, 1]
    series = years(pattern, 1)
    scaled = years([v * 11 for v in pattern], 1)
    assert monthly_need(scaled, 2020) == 11 * monthly_need(series, 2020)


def test_naive_forecast_is_twelve_copies_of_need():
    result = forecast(100, SeasonalProfile.flat("P"), METHOD_NAIVE)
    assert result.monthly_values == (100.0,) * 12


def test_identity_profile_makes_seasonal_equal_naive():
    flat = SeasonalProfile.flat("P")
    assert forecast(100, flat, METHOD_SEASONAL).monthly_values == (100.0,) * 12


def test_seasonal_forecast_december_peak():
    profile = fit_seasonal_indices(years(DEC_PEAK, 2))
    result = forecast(100, profile, METHOD_SEASONAL)
    assert result.monthly_values[11] == pytest.approx(184.61538461538464, abs=1e-9)
    assert result.monthly_values[0] == pytest.approx(92.3076923076923, abs=1e-9)
    assert sum(result.monthly_values) == pytest.approx(1200.0, abs=1e-9)


def test_both_methods_share_the_annual_total():
    rnd = random.Random(9)
    for _ in range(25):
        pattern = [rnd.randint(0, 300) for _ in range(24)]
        series = MonthlySeries("P", 2019, tuple(pattern))
        need = monthly_need(series, 2021)
        profile = fit_seasonal_indices(series)
        naive = forecast(need, profile, METHOD_NAIVE)
        seasonal = forecast(need, profile, METHOD_SEASONAL)
        assert sum(naive.monthly_values) == pytest.approx(12 * float(need), abs=1e-9)
        assert sum(seasonal.monthly_values) == pytest.approx(12 * float(need), abs=1e-9)


def test_forecast_rejects_negative_need_and_unknown_method():
    flat = SeasonalProfile.flat("P")
    with pytest.raises(ValueError, match=">= 0"):
        forecast(-1, flat, METHOD_NAIVE)
    with pytest.raises(ValueError, match="unknown forecast method"):
        forecast(1, flat, "wild-guess")


def test_backtest_periodic_series_seasonal_is_exact():
    report = backtest(years(DEC_PEAK, 3), 2021)
    assert report.mae_seasonal == 0.0
    assert report.mape_seasonal == 0.0
    assert report.mae_naive > 0.0
    assert not report.no_nonzero_actuals


def test_backtest_constant_series_both_methods_exact():
    report = backtest(years((100,) * 12, 3), 2021)
    assert report.mae_naive == 0.0
    assert report.mae_seasonal == 0.0


def test_backtest_zero_holdout_year_flags_undefined_mape():
    values = (100,) * 24 + (0,) * 12
    report = backtest(MonthlySeries("P", 2019, values), 2021)
    assert report.no_nonzero_actuals
    assert report.mape_naive == 0.0 and report.mape_seasonal == 0.0
    assert report.mae_naive == 100.0


def test_backtest_requires_two_years_before_holdout():
    with pytest.raises(ValueError, match="at least 2 years strictly before"):
        backtest(years((100,) * 12, 2), 2020)
    with pytest.raises(ValueError, match="not covered"):
        backtest(years((100,) * 12, 3), 2030)


@given(
    st.lists(st.integers(0, 500), min_size=12, max_size=12),
    st.integers(2, 9),
)
def test_seasonal_profile_is_invariant_under_integer_scaling(pattern, k):
    series = MonthlySeries("P", 2019, tuple(pattern) * 2)
    scaled = MonthlySeries("P", 2019, tuple(v * k for v in pattern) * 2)
    assert fit_seasonal_indices(series).indices == fit_seasonal_indices(scaled).indices


@given(st.lists(st.integers(0, 500), min_size=12, max_size=12))
def test_seasonal_beats_or_ties_naive_on_periodic_data(pattern):
    series = MonthlySeries("P", 2019, tuple(pattern) * 3)
    report = backtest(series, 2021)
    assert report.mae_seasonal == 0.0
    if len(set(pattern)) > 1:
        assert report.mae_naive > 0.0
