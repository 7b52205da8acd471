"""Monthly demand forecasting: baseline need, seasonal indices, backtests.

The baseline monthly need is last year's total deliveries spread evenly
over twelve months. The seasonal path rescales that baseline with
per-month indices (month mean divided by grand monthly mean), which
preserves the annual total while moving quantity into peak months.

Everything is computed in exact rational arithmetic (`fractions.Fraction`)
so the structural identities hold to the last bit: indices average to
exactly 1, both forecast methods sum to exactly twelve times the monthly
need, and on perfectly periodic demand the seasonal forecast reproduces
the actuals with zero error.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .ingestion import MonthlySeries, annual_total

METHOD_NAIVE = "naive"
METHOD_SEASONAL = "seasonal"
METHODS = (METHOD_NAIVE, METHOD_SEASONAL)

MIN_FIT_YEARS = 2  # one year of history is pure noise for a monthly profile


@dataclass(frozen=True)
class SeasonalProfile:
    """Twelve multiplicative month indices averaging exactly 1."""

    product_id: str
    indices: tuple

    def __post_init__(self):
        if len(self.indices) != 12:
            raise ValueError(f"expected 12 indices, got {len(self.indices)}")
        if any(idx < 0 for idx in self.indices):
            raise ValueError("seasonal indices must be >= 0")
        if abs(sum(self.indices) - 12) > 12e-9:
            raise ValueError("seasonal indices must average to 1")

    @classmethod
    def flat(cls, product_id: str) -> "SeasonalProfile":
        return cls(product_id, (Fraction(1),) * 12)


@dataclass(frozen=True)
class ForecastResult:
    """Per-month forecast for one product, in boxes (fractional allowed)."""

    product_id: str
    method: str
    monthly_values: tuple


@dataclass(frozen=True)
class BacktestReport:
    """Error of both forecast methods against one held-out year.

    MAPE skips months whose actual demand is zero; if the whole holdout
    year is zero the MAPEs are reported as 0 and flagged undefined.
    """

    product_id: str
    holdout_year: int
    mae_naive: float
    mae_seasonal: float
    mape_naive: float
    mape_seasonal: float
    no_nonzero_actuals: bool = field(default=False)


def monthly_need(series: MonthlySeries, target_year: int) -> Fraction:
    """Baseline need for the target year: prior-year deliveries / 12.

    Kept fractional; rounding to whole boxes happens once, at the
    volumetric packing step.
    """
    prior = target_year - 1
    if not series.covers(prior):
        raise ValueError(
            f"{series.product_id}: cannot derive the monthly need for {target_year}, "
            f"year {prior} not covered by the series ({series.start_year}..{series.end_year})"
        )
    return Fraction(annual_total(series, prior), 12)


def fit_seasonal_indices(series: MonthlySeries) -> SeasonalProfile:
    """Fit the twelve month indices from at least two full years.

    index_m = mean(month m across years) / mean(all months). An all-zero
    series has no usable shape and falls back to a flat profile.
    """
    if series.n_years < MIN_FIT_YEARS:
        raise ValueError(
            f"{series.product_id}: need at least {MIN_FIT_YEARS} full years to fit "
            f"seasonal indices, got {series.n_years}"
        )
    total = sum(series.values)
    if total == 0:
        return SeasonalProfile.flat(series.product_id)
    month_sums = [0] * 12
    for slot, value in enumerate(series.values):
        month_sums[slot % 12] += value
    # month_sum / n_years over total / (12 * n_years) reduces to this:
    indices = tuple(Fraction(12 * ms, total) for ms in month_sums)
    return SeasonalProfile(series.product_id, indices)


def forecast(monthly_need, profile: SeasonalProfile, method: str) -> ForecastResult:
    """Spread the monthly need over twelve months, flat or by seasonal index.

    Both methods distribute the same annual quantity (12 times the need);
    the seasonal method only reshapes where inside the year it lands.
    """
    if method not in METHODS:
        raise ValueError(f"unknown forecast method {method!r}, expected one of {METHODS}")
    need = Fraction(monthly_need)
    if need < 0:
        raise ValueError(f"monthly need must be >= 0, got {monthly_need}")
    if method == METHOD_NAIVE:
        values = (float(need),) * 12
    else:
        values = tuple(float(need * idx) for idx in profile.indices)
    return ForecastResult(profile.product_id, method, values)


def _mae(forecast_values, actual) -> float:
    return sum(abs(f - a) for f, a in zip(forecast_values, actual)) / 12


def _mape(forecast_values, actual) -> float:
    terms = [abs(f - a) / a for f, a in zip(forecast_values, actual) if a > 0]
    return sum(terms) / len(terms)


def backtest(series: MonthlySeries, holdout_year: int) -> BacktestReport:
    """Score both forecast methods against one held-out year.

    The baseline need comes from the year before the holdout and the
    seasonal profile is fit on all years strictly before it, so the
    holdout never leaks into its own forecast.
    """
    if not series.covers(holdout_year):
        raise ValueError(
            f"{series.product_id}: holdout year {holdout_year} not covered "
            f"by the series ({series.start_year}..{series.end_year})"
        )
    fit_years = holdout_year - series.start_year
    if fit_years < MIN_FIT_YEARS:
        raise ValueError(
            f"{series.product_id}: backtesting {holdout_year} needs at least "
            f"{MIN_FIT_YEARS} years strictly before it, got {fit_years}"
        )
    need = monthly_need(series, holdout_year)
    profile = fit_seasonal_indices(series.window(series.start_year, fit_years))
    naive = forecast(need, profile, METHOD_NAIVE)
    seasonal = forecast(need, profile, METHOD_SEASONAL)
    actual = series.year_slice(holdout_year)

    no_actuals = all(a == 0 for a in actual)
    return BacktestReport(
        product_id=series.product_id,
        holdout_year=holdout_year,
        mae_naive=_mae(naive.monthly_values, actual),
        mae_seasonal=_mae(seasonal.monthly_values, actual),
        mape_naive=0.0 if no_actuals else _mape(naive.monthly_values, actual),
        mape_seasonal=0.0 if no_actuals else _mape(seasonal.monthly_values, actual),
        no_nonzero_actuals=no_actuals,
    )
