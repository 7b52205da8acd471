"""Input parsing, validation, and monthly aggregation of delivery history.

Three CSV files feed the planner: a delivery history (one row per delivery
line), a product catalog (price, urgency, packaging geometry) and an
on-hand stock snapshot. Parsing is strict: every bad row is reported with
its file and line number, and nothing is dropped silently.
"""

import csv
import logging
import math
from dataclasses import dataclass

logger = logging.getLogger(__name__)

DELIVERIES_HEADER = ("product_id", "date", "quantity")
CATALOG_HEADER = (
    "product_id",
    "name",
    "unit_price",
    "urgency",
    "boxes_per_carton",
    "carton_l_mm",
    "carton_w_mm",
    "carton_h_mm",
)
STOCK_HEADER = ("product_id", "on_hand")


class InputError(ValueError):
    """An input file failed validation; the message lists every bad line."""


@dataclass(frozen=True)
class DeliveryRecord:
    """One delivery line: a product, a calendar month, a box count.

    Dates finer than a month are truncated at parse time; demand is only
    ever aggregated monthly.
    """

    product_id: str
    year: int
    month: int
    quantity: int

    def __post_init__(self):
        if not 1 <= self.month <= 12:
            raise ValueError(f"month must be 1..12, got {self.month}")
        if self.quantity < 0:
            raise ValueError(f"quantity must be >= 0, got {self.quantity}")


@dataclass(frozen=True)
class MonthlySeries:
    """Contiguous monthly delivery totals for one product.

    Covers whole calendar years starting at `start_year`: the value for
    month m of year y sits at slot (y - start_year) * 12 + (m - 1).
    Months with no deliveries hold 0.
    """

    product_id: str
    start_year: int
    values: tuple

    def __post_init__(self):
        if len(self.values) == 0 or len(self.values) % 12 != 0:
            raise ValueError(
                f"series length must be a positive multiple of 12, got {len(self.values)}"
            )
        if any(v < 0 for v in self.values):
            raise ValueError("series values must be >= 0")

    @property
    def n_years(self) -> int:
        return len(self.values) // 12

    @property
    def end_year(self) -> int:
        """Last calendar year covered (inclusive)."""
        return self.start_year + self.n_years - 1

    def covers(self, year: int) -> bool:
        return self.start_year <= year <= self.end_year

    def year_slice(self, year: int) -> tuple:
        """The 12 monthly values of one covered year."""
        if not self.covers(year):
            raise ValueError(
                f"{self.product_id}: year {year} outside series "
                f"{self.start_year}..{self.end_year}"
            )
        lo = (year - self.start_year) * 12
        return self.values[lo : lo + 12]

    def window(self, start_year: int, n_years: int) -> "MonthlySeries":
        """A sub-series restricted to `n_years` whole years."""
        if n_years < 1:
            raise ValueError("window must cover at least one year")
        if start_year < self.start_year or start_year + n_years - 1 > self.end_year:
            raise ValueError(
                f"{self.product_id}: window {start_year}..{start_year + n_years - 1} "
                f"outside series {self.start_year}..{self.end_year}"
            )
        lo = (start_year - self.start_year) * 12
        return MonthlySeries(self.product_id, start_year, self.values[lo : lo + 12 * n_years])


@dataclass(frozen=True)
class CatalogEntry:
    """Product identity, price, urgency flag, and packaging geometry."""

    product_id: str
    name: str
    unit_price: float
    urgency: int
    boxes_per_carton: int
    carton_dims: tuple  # (length, width, height) in millimeters

    def __post_init__(self):
        if not self.unit_price > 0:
            raise ValueError(f"{self.product_id}: unit_price must be > 0")
        if self.urgency not in (0, 1):
            raise ValueError(f"{self.product_id}: urgency must be 0 or 1")
        if self.boxes_per_carton < 1:
            raise ValueError(f"{self.product_id}: boxes_per_carton must be >= 1")
        if len(self.carton_dims) != 3 or any(not d > 0 for d in self.carton_dims):
            raise ValueError(f"{self.product_id}: carton dimensions must all be > 0")


@dataclass(frozen=True)
class StockSnapshot:
    """On-hand boxes for one product at planning time."""

    product_id: str
    on_hand: int

    def __post_init__(self):
        if self.on_hand < 0:
            raise ValueError(f"{self.product_id}: on_hand must be >= 0")


def _parse_year_month(text: str):
    parts = text.strip().split("-")
    if len(parts) not in (2, 3):
        raise ValueError(f"bad date {text!r}, expected YYYY-MM or YYYY-MM-DD")
    try:
        numbers = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"bad date {text!r}, expected YYYY-MM or YYYY-MM-DD") from None
    year, month = numbers[0], numbers[1]
    if not 1 <= month <= 12:
        raise ValueError(f"bad date {text!r}, month must be 1..12")
    if len(numbers) == 3 and not 1 <= numbers[2] <= 31:
        raise ValueError(f"bad date {text!r}, day must be 1..31")
    return year, month


def _parse_int(text: str, minimum: int, what: str) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise ValueError(f"{what} must be an integer, got {text!r}") from None
    if value < minimum:
        raise ValueError(f"{what} must be >= {minimum}, got {text!r}")
    return value


def _parse_positive_number(text: str, what: str) -> float:
    try:
        value = float(text.strip())
    except ValueError:
        raise ValueError(f"{what} must be a number, got {text!r}") from None
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{what} must be > 0, got {text!r}")
    return value


def _parse_dim(text: str, what: str):
    # keeps integral millimeter inputs as ints so they round-trip cleanly
    value = _parse_positive_number(text, what)
    return int(value) if value == int(value) else value


def _read_table(path, expected_header, problems):
    """Read one CSV file, returning (line_number, row) pairs for data rows."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        problems.append(f"{path}: cannot read file ({exc})")
        return []
    if not rows:
        problems.append(f"{path}: file is empty, expected header {','.join(expected_header)}")
        return []
    header = tuple(cell.strip() for cell in rows[0])
    if header != expected_header:
        problems.append(
            f"{path}:1: expected header {','.join(expected_header)}, got {','.join(header)}"
        )
        return []
    out = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:  # tolerate blank lines
            continue
        if len(row) != len(expected_header):
            problems.append(
                f"{path}:{line_no}: expected {len(expected_header)} fields, got {len(row)}"
            )
            continue
        out.append((line_no, [cell.strip() for cell in row]))
    return out


def parse_inputs(deliveries_file, catalog_file, stock_file):
    """Parse and cross-validate the three input files.

    Returns (delivery records, catalog entries, stock snapshots). Raises
    InputError whose message carries one `file:line: reason` entry per
    problem found, so a single run surfaces every bad row.
    """
    problems: list = []
    delivery_rows = _read_table(deliveries_file, DELIVERIES_HEADER, problems)
    catalog_rows = _read_table(catalog_file, CATALOG_HEADER, problems)
    stock_rows = _read_table(stock_file, STOCK_HEADER, problems)

    records = []
    delivery_lines = []  # (line_no, product_id) for cross-checks
    for line_no, row in delivery_rows:
        pid, date_text, qty_text = row
        try:
            if not pid:
                raise ValueError("product_id must not be empty")
            year, month = _parse_year_month(date_text)
            quantity = _parse_int(qty_text, 0, "quantity")
        except ValueError as exc:
            problems.append(f"{deliveries_file}:{line_no}: {exc}")
            continue
        records.append(DeliveryRecord(pid, year, month, quantity))
        delivery_lines.append((line_no, pid))

    entries = []
    catalog_seen = {}
    for line_no, row in catalog_rows:
        pid, name, price_text, urgency_text, bpc_text, l_text, w_text, h_text = row
        try:
            if not pid:
                raise ValueError("product_id must not be empty")
            if pid in catalog_seen:
                raise ValueError(
                    f"duplicate product_id {pid!r} (first seen at line {catalog_seen[pid]})"
                )
            if not name:
                raise ValueError("name must not be empty")
            entry = CatalogEntry(
                product_id=pid,
                name=name,
                unit_price=_parse_positive_number(price_text, "unit_price"),
                urgency=_parse_int(urgency_text, 0, "urgency"),
                boxes_per_carton=_parse_int(bpc_text, 1, "boxes_per_carton"),
                carton_dims=(
                    _parse_dim(l_text, "carton_l_mm"),
                    _parse_dim(w_text, "carton_w_mm"),
                    _parse_dim(h_text, "carton_h_mm"),
                ),
            )
        except ValueError as exc:
            problems.append(f"{catalog_file}:{line_no}: {exc}")
            continue
        catalog_seen[pid] = line_no
        entries.append(entry)

    snapshots = []
    stock_seen = {}
    stock_lines = []
    for line_no, row in stock_rows:
        pid, on_hand_text = row
        try:
            if not pid:
                raise ValueError("product_id must not be empty")
            if pid in stock_seen:
                raise ValueError(
                    f"duplicate product_id {pid!r} (first seen at line {stock_seen[pid]})"
                )
            snapshot = StockSnapshot(pid, _parse_int(on_hand_text, 0, "on_hand"))
        except ValueError as exc:
            problems.append(f"{stock_file}:{line_no}: {exc}")
            continue
        stock_seen[pid] = line_no
        snapshots.append(snapshot)
        stock_lines.append((line_no, pid))

    # Cross-file checks only make sense once every file parsed cleanly.
    if not problems:
        known = set(catalog_seen)
        for line_no, pid in delivery_lines:
            if pid not in known:
                problems.append(f"{deliveries_file}:{line_no}: product {pid!r} not in catalog")
        for line_no, pid in stock_lines:
            if pid not in known:
                problems.append(f"{stock_file}:{line_no}: product {pid!r} not in catalog")

    if problems:
        raise InputError("\n".join(problems))
    return records, entries, snapshots


def aggregate_monthly(records, start_year: int, n_years: int, product_ids=None):
    """Pivot delivery records into per-product monthly series.

    Every record must fall inside [start_year, start_year + n_years); a
    record outside the window is an error, not a filter. Products listed
    in `product_ids` but absent from the records still get an all-zero
    series, so catalog-only products are planned rather than forgotten.
    """
    if n_years < 1:
        raise ValueError(f"n_years must be >= 1, got {n_years}")
    slots = 12 * n_years
    end_year = start_year + n_years - 1
    totals = {}
    if product_ids is not None:
        for pid in product_ids:
            totals[pid] = [0] * slots
    for rec in records:
        if not start_year <= rec.year <= end_year:
            raise ValueError(
                f"delivery for {rec.product_id} dated {rec.year}-{rec.month:02d} "
                f"falls outside the {start_year}..{end_year} history window"
            )
        if rec.product_id not in totals:
            totals[rec.product_id] = [0] * slots
        totals[rec.product_id][(rec.year - start_year) * 12 + rec.month - 1] += rec.quantity
    return {
        pid: MonthlySeries(pid, start_year, tuple(values))
        for pid, values in sorted(totals.items())
    }


def annual_total(series: MonthlySeries, year: int) -> int:
    """Sum of one covered calendar year's 12 monthly values."""
    return sum(series.year_slice(year))


def resolve_on_hand(snapshots, product_ids):
    """Map every product to its on-hand level, defaulting absentees to 0.

    A cataloged product without a stock snapshot is planned as if the
    depot were empty; the gap is logged because it usually means the
    stock extract is stale.
    """
    levels = {snap.product_id: snap.on_hand for snap in snapshots}
    resolved = {}
    for pid in sorted(product_ids):
        if pid not in levels:
            logger.warning("no stock snapshot for %s; assuming 0 boxes on hand", pid)
        resolved[pid] = levels.get(pid, 0)
    return resolved
