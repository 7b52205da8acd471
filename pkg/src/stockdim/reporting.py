"""End-to-end pipeline: ingest, classify, forecast, plan, size, report.

The pipeline runs the whole chain for the strategic (class A) subset by
default, or for every product with `include_all`. All outputs are
computed in memory first and written only when the run succeeded, so a
failing run leaves no partial files behind. Rows are emitted in
product_id order (classification in rank order) and numbers are
formatted with Python's shortest round-trip repr, which makes two runs
over identical inputs byte-identical.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .classification import (
    DEFAULT_A_THRESHOLD,
    DEFAULT_B_THRESHOLD,
    DEFAULT_WEIGHTS,
    CriteriaWeights,
    rank_and_cut,
    score_products,
)
from .dimensioning import DEFAULT_STOCK_MONTHS, plan_products
from .forecasting import (
    METHOD_NAIVE,
    METHOD_SEASONAL,
    MIN_FIT_YEARS,
    SeasonalProfile,
    fit_seasonal_indices,
    forecast,
    monthly_need,
)
from .ingestion import aggregate_monthly, annual_total, parse_inputs, resolve_on_hand
from .volumetric import DEFAULT_PALLET, PalletSpec, volumetric_plan

CLASSIFICATION_CSV = "classification.csv"
FORECAST_CSV = "forecast.csv"
BACKTEST_CSV = "backtest.csv"
PLAN_CSV = "plan.csv"
VOLUME_CSV = "volume.csv"
GAP_CSV = "gap.csv"
SUMMARY_JSON = "summary.json"


@dataclass(frozen=True)
class GapReport:
    """Demand versus offer for one product and period, the headline KPI.

    `gap` keeps its sign (negative means the offer exceeded demand);
    `service_rate` caps the offer at demand so it stays in [0, 1].
    """

    product_id: str
    period: str
    demand: float
    offered: float
    gap: float
    service_rate: float


@dataclass(frozen=True)
class RunConfig:
    """Every knob of a pipeline run, so results reproduce from one object."""

    deliveries: Path
    catalog: Path
    stock: Path
    out_dir: Path
    start_year: int
    n_years: int
    target_year: int
    multiplier: float = DEFAULT_STOCK_MONTHS
    weights: CriteriaWeights = DEFAULT_WEIGHTS
    a_threshold: float = DEFAULT_A_THRESHOLD
    b_threshold: float = DEFAULT_B_THRESHOLD
    pallet: PalletSpec = DEFAULT_PALLET
    include_all: bool = False

    def __post_init__(self):
        if self.n_years < 1:
            raise ValueError(f"history window must cover at least 1 year, got {self.n_years}")
        if self.target_year <= self.start_year:
            raise ValueError(
                f"target year {self.target_year} must be after the window start {self.start_year}"
            )
        if self.target_year > self.start_year + self.n_years:
            raise ValueError(
                f"target year {self.target_year} needs year {self.target_year - 1} of history, "
                f"but the window ends in {self.start_year + self.n_years - 1}"
            )
        if not self.multiplier > 0:
            raise ValueError(f"stock multiplier must be > 0, got {self.multiplier}")

    @property
    def last_history_year(self) -> int:
        return self.start_year + self.n_years - 1


@dataclass
class LoadedData:
    """Parsed and aggregated inputs shared by every pipeline stage."""

    catalog: dict
    series: dict
    on_hand: dict


@dataclass
class PipelineResult:
    classification: list
    forecasts: list
    plans: list
    volumes: list
    gaps: list
    summary: dict
    files: dict = field(default_factory=dict)


def gap_kpi(demand_by_product, offered_by_product, period: str):
    """Per-product demand/offer gap and service rate for one period."""
    if set(demand_by_product) != set(offered_by_product):
        raise ValueError("demand and offer cover different product sets")
    reports = []
    for pid in sorted(demand_by_product):
        demand = demand_by_product[pid]
        offered = offered_by_product[pid]
        rate = 1.0 if demand <= 0 else min(offered, demand) / demand
        reports.append(GapReport(pid, period, demand, offered, demand - offered, rate))
    return reports


def load_inputs(config: RunConfig) -> LoadedData:
    records, entries, snapshots = parse_inputs(config.deliveries, config.catalog, config.stock)
    catalog = {e.product_id: e for e in entries}
    series = aggregate_monthly(records, config.start_year, config.n_years, product_ids=catalog)
    on_hand = resolve_on_hand(snapshots, catalog)
    return LoadedData(catalog=catalog, series=series, on_hand=on_hand)


def classify_all(data: LoadedData, config: RunConfig):
    scored = score_products(data.series, data.catalog, config.weights)
    return rank_and_cut(scored, config.a_threshold, config.b_threshold)


def select_products(data: LoadedData, config: RunConfig):
    """The product ids a run works on: all of them, or the class A sample."""
    if config.include_all:
        return sorted(data.catalog)
    results = classify_all(data, config)
    return sorted(r.product_id for r in results if r.strategic)


def compute_needs(data: LoadedData, product_ids, target_year: int):
    """Monthly need per product for the target year (exact fractions)."""
    return {pid: monthly_need(data.series[pid], target_year) for pid in product_ids}


def fit_profiles(data: LoadedData, product_ids, target_year: int):
    """Seasonal profiles fit on all years strictly before the target year."""
    profiles = {}
    for pid in product_ids:
        series = data.series[pid]
        fit_years = min(target_year, series.end_year + 1) - series.start_year
        profiles[pid] = fit_seasonal_indices(series.window(series.start_year, fit_years))
    return profiles


def build_forecasts(needs, profiles):
    """Naive and seasonal forecast rows for every product, id-ordered."""
    out = []
    for pid in sorted(needs):
        out.append(forecast(needs[pid], profiles[pid], METHOD_NAIVE))
        out.append(forecast(needs[pid], profiles[pid], METHOD_SEASONAL))
    return out


def build_gaps(data: LoadedData, product_ids, config: RunConfig):
    """Gap KPI rows for the last history year, annual then monthly.

    The offer is what the planning method would have put on the table
    for that year with no lookahead: the seasonal forecast when at
    least two earlier years exist, the flat baseline otherwise.
    """
    year = config.last_history_year
    offered_monthly = {}
    for pid in product_ids:
        series = data.series[pid]
        need = monthly_need(series, year)
        fit_years = year - series.start_year
        if fit_years >= MIN_FIT_YEARS:
            profile = fit_seasonal_indices(series.window(series.start_year, fit_years))
            offered_monthly[pid] = forecast(need, profile, METHOD_SEASONAL).monthly_values
        else:
            offered_monthly[pid] = forecast(need, SeasonalProfile.flat(pid), METHOD_NAIVE).monthly_values

    reports = []
    annual_demand = {pid: annual_total(data.series[pid], year) for pid in product_ids}
    annual_offer = {pid: sum(offered_monthly[pid]) for pid in product_ids}
    reports.extend(gap_kpi(annual_demand, annual_offer, str(year)))
    for month in range(12):
        demand = {pid: data.series[pid].year_slice(year)[month] for pid in product_ids}
        offer = {pid: offered_monthly[pid][month] for pid in product_ids}
        reports.extend(gap_kpi(demand, offer, f"{year}-{month + 1:02d}"))
    reports.sort(key=lambda r: (r.product_id, len(r.period), r.period))
    return reports


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        value = float(value)
    return str(value)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(cell) for cell in row])
    return buf.getvalue()


def classification_csv(results) -> str:
    return _csv_text(
        ("product_id", "score", "rank", "cumulative_share", "abc_class", "strategic"),
        [
            (r.product_id, r.score, r.rank, r.cumulative_share, r.abc_class, r.strategic)
            for r in sorted(results, key=lambda r: r.rank)
        ],
    )


def forecast_csv(forecasts) -> str:
    header = ("product_id", "method") + tuple(f"m{i}" for i in range(1, 13))
    return _csv_text(header, [(f.product_id, f.method) + f.monthly_values for f in forecasts])


def backtest_csv(reports) -> str:
    return _csv_text(
        ("product_id", "holdout_year", "mae_naive", "mae_seasonal", "mape_naive", "mape_seasonal"),
        [
            (r.product_id, r.holdout_year, r.mae_naive, r.mae_seasonal, r.mape_naive, r.mape_seasonal)
            for r in reports
        ],
    )


def plan_csv(plans) -> str:
    return _csv_text(
        ("product_id", "M", "QS", "on_hand", "QC", "status"),
        [
            (p.product_id, p.monthly_need, p.strategic_qty, p.on_hand, p.order_qty, p.status)
            for p in plans
        ],
    )


def volume_csv(volumes) -> str:
    return _csv_text(
        ("product_id", "boxes", "cartons", "cartons_per_pallet", "orientation", "pallets", "total_volume_m3"),
        [
            (
                v.product_id,
                v.boxes,
                v.cartons,
                v.cartons_per_pallet,
                "x".join(str(d) for d in v.orientation),
                v.pallets,
                v.total_volume_m3,
            )
            for v in volumes
        ],
    )


def gap_csv(gaps) -> str:
    return _csv_text(
        ("product_id", "period", "demand", "offered", "gap", "service_rate"),
        [(g.product_id, g.period, g.demand, g.offered, g.gap, g.service_rate) for g in gaps],
    )


def summary_totals(product_ids, plans, volumes) -> dict:
    return {
        "products_planned": len(product_ids),
        "total_qc_boxes": sum(float(p.order_qty) for p in plans),
        "total_pallets": sum(v.pallets for v in volumes),
        "total_volume_m3": sum(v.total_volume_m3 for v in volumes),
    }


def run_pipeline(config: RunConfig) -> PipelineResult:
    """Run the full chain and write every report into config.out_dir.

    Emits classification.csv (always the full product set), plus
    forecast/plan/volume/gap CSVs for the selected subset and a
    summary.json of the totals. Identical inputs and config produce
    byte-identical files.
    """
    data = load_inputs(config)
    classification = classify_all(data, config)
    if config.include_all:
        product_ids = sorted(data.catalog)
    else:
        product_ids = sorted(r.product_id for r in classification if r.strategic)

    needs = compute_needs(data, product_ids, config.target_year)
    profiles = fit_profiles(data, product_ids, config.target_year)
    forecasts = build_forecasts(needs, profiles)
    plans = plan_products(needs, {pid: data.on_hand[pid] for pid in product_ids}, config.multiplier)
    volumes = [volumetric_plan(p, data.catalog[p.product_id], config.pallet) for p in plans]
    gaps = build_gaps(data, product_ids, config)
    summary = summary_totals(product_ids, plans, volumes)

    contents = {
        CLASSIFICATION_CSV: classification_csv(classification),
        FORECAST_CSV: forecast_csv(forecasts),
        PLAN_CSV: plan_csv(plans),
        VOLUME_CSV: volume_csv(volumes),
        GAP_CSV: gap_csv(gaps),
        SUMMARY_JSON: json.dumps(summary, indent=2, sort_keys=True) + "\n",
    }

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {}
    for name, text in contents.items():
        path = out_dir / name
        path.write_text(text, encoding="utf-8")
        files[name] = path

    return PipelineResult(
        classification=classification,
        forecasts=forecasts,
        plans=plans,
        volumes=volumes,
        gaps=gaps,
        summary=summary,
        files=files,
    )
