#!/usr/bin/env python3
"""Regenerate the bundled synthetic dataset under data/.

Deterministic (fixed seed): 50 products, three years of monthly delivery
history (2019-2021), a catalog with prices/urgency/packaging, and an
on-hand stock snapshot. Three products are handcrafted so their whole
planning chain can be checked by hand:

  DG-0001  flat 100 boxes/month            -> M 100, QS 400, QC 250
  DG-0002  100/month with December at 200  -> M 1300/12, QS 1300/3
  DG-0003  cataloged but never delivered   -> all-zero series

DG-0047 is deliberately missing from stock.csv to exercise the
default-to-zero path.
"""

import csv
import math
import random
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "data"
START_YEAR = 2019
N_YEARS = 3
SEED = 770203

NAMES = [
    "Amoxicillin 500mg caps", "Paracetamol 1g tabs", "Ibuprofen 400mg tabs",
    "Omeprazole 20mg caps", "Metformin 850mg tabs", "Amlodipine 5mg tabs",
    "Atorvastatin 20mg tabs", "Salbutamol 100mcg inhaler", "Ceftriaxone 1g vial",
    "Insulin glargine 100IU pen", "Enoxaparin 40mg syringe", "Diclofenac 50mg tabs",
    "Azithromycin 250mg tabs", "Ciprofloxacin 500mg tabs", "Doxycycline 100mg caps",
    "Prednisolone 5mg tabs", "Loratadine 10mg tabs", "Ranitidine 150mg tabs",
    "Furosemide 40mg tabs", "Captopril 25mg tabs", "Hydrochlorothiazide 25mg tabs",
    "Warfarin 5mg tabs", "Clopidogrel 75mg tabs", "Levothyroxine 100mcg tabs",
    "Carbamazepine 200mg tabs", "Valproate 500mg tabs", "Haloperidol 5mg tabs",
    "Diazepam 5mg tabs", "Tramadol 50mg caps", "Morphine 10mg amp",
    "Ondansetron 8mg tabs", "Metoclopramide 10mg tabs", "Oral rehydration salts",
    "Ferrous sulfate 200mg tabs", "Folic acid 5mg tabs", "Vitamin B complex tabs",
    "Calcium carbonate 500mg tabs", "Gentamicin 80mg amp", "Benzylpenicillin 1MU vial",
    "Metronidazole 500mg tabs", "Fluconazole 150mg caps", "Aciclovir 200mg tabs",
    "Artemether-lumefantrine tabs", "Albendazole 400mg tabs", "Chlorhexidine 5% solution",
    "Povidone iodine 10% solution", "Sodium chloride 0.9% 500ml", "Glucose 5% 500ml",
    "Lidocaine 2% vial", "Tetanus toxoid vial",
]

PACKAGING = [
    (24, (400, 300, 200)),
    (10, (300, 300, 300)),
    (12, (350, 250, 200)),
    (6, (600, 400, 300)),
    (48, (280, 190, 160)),
    (20, (450, 350, 220)),
    (36, (500, 320, 240)),
]


def seasonal_factor(pattern: str, month: int) -> float:
    if pattern == "winter":
        return 1.0 + 0.6 * math.cos(2 * math.pi * (month - 1) / 12)
    if pattern == "summer":
        return 1.0 + 0.6 * math.cos(2 * math.pi * (month - 7) / 12)
    return 1.0


def main():
    rng = random.Random(SEED)
    product_ids = [f"DG-{i:04d}" for i in range(1, 51)]

    catalog_rows = []
    stock_rows = []
    delivery_rows = []

    for i, pid in enumerate(product_ids):
        name = NAMES[i]
        if pid == "DG-0001":
            price, urgency, (bpc, dims) = 12.5, 0, PACKAGING[0]
            stock_rows.append((pid, 150))
            for year in range(START_YEAR, START_YEAR + N_YEARS):
                for month in range(1, 13):
                    delivery_rows.append((pid, f"{year}-{month:02d}", 100))
            catalog_rows.append((pid, name, price, urgency, bpc, *dims))
            continue
        if pid == "DG-0002":
            price, urgency, (bpc, dims) = 48.0, 1, PACKAGING[1]
            stock_rows.append((pid, 0))
            for year in range(START_YEAR, START_YEAR + N_YEARS):
                for month in range(1, 13):
                    qty = 200 if month == 12 else 100
                    delivery_rows.append((pid, f"{year}-{month:02d}", qty))
            catalog_rows.append((pid, name, price, urgency, bpc, *dims))
            continue
        if pid == "DG-0003":
            price, urgency, (bpc, dims) = 5.0, 0, PACKAGING[2]
            stock_rows.append((pid, 0))
            catalog_rows.append((pid, name, price, urgency, bpc, *dims))
            continue

        base = rng.randint(15, 350)
        pattern = rng.choice(["flat", "flat", "winter", "summer", "sparse"])
        price = round(rng.uniform(0.8, 120.0), 2)
        urgency = 1 if rng.random() < 0.15 else 0
        bpc, dims = rng.choice(PACKAGING)
        catalog_rows.append((pid, name, price, urgency, bpc, *dims))
        if pid != "DG-0047":
            stock_rows.append((pid, rng.randint(0, 5 * base)))

        for year in range(START_YEAR, START_YEAR + N_YEARS):
            for month in range(1, 13):
                if pattern == "sparse" and rng.random() < 0.55:
                    continue
                factor = seasonal_factor(pattern, month)
                qty = max(0, round(base * factor * rng.uniform(0.85, 1.15)))
                if qty == 0:
                    continue
                if rng.random() < 0.5:
                    date = f"{year}-{month:02d}"
                else:
                    date = f"{year}-{month:02d}-{rng.randint(1, 28):02d}"
                if qty > 1 and rng.random() < 0.15:
                    # occasionally split a month into two delivery lines
                    first = rng.randint(1, qty - 1)
                    delivery_rows.append((pid, date, first))
                    delivery_rows.append((pid, f"{year}-{month:02d}", qty - first))
                else:
                    delivery_rows.append((pid, date, qty))

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    with open(OUT_DIR / "deliveries.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["product_id", "date", "quantity"])
        writer.writerows(delivery_rows)
    with open(OUT_DIR / "catalog.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([
            "product_id", "name", "unit_price", "urgency", "boxes_per_carton",
            "carton_l_mm", "carton_w_mm", "carton_h_mm",
        ])
        writer.writerows(catalog_rows)
    with open(OUT_DIR / "stock.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["product_id", "on_hand"])
        writer.writerows(stock_rows)
    print(f"wrote {len(delivery_rows)} delivery rows, {len(catalog_rows)} catalog rows, "
          f"{len(stock_rows)} stock rows under {OUT_DIR}")


if __name__ == "__main__":
    main()
