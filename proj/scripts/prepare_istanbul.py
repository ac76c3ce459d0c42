#!/usr/bin/env python3
"""Download and prepare the Istanbul stock exchange dataset for replication.

The raw file is the UCI "Istanbul Stock Exchange" dataset (id 247):
    https://archive.ics.uci.edu/dataset/247/istanbul+stock+exchange
It ships daily relative return series for the Istanbul exchange and seven
international indices. This script renames and reorders the columns into the
causal ordering used throughout the replication suite

    NIK, EU, ISE, EM, BVSP, DAX, FTSE, SP

and writes data/istanbul.csv next to this repository's data directory.

Assumptions (the raw source leaves them open):
  * the USD-based ISE column ("ISE.1" in the xlsx export) is used, matching
    the USD-based international indices;
  * rows are kept in file order, one trading day per row, no further
    transformation: the shipped values are already relative returns;
  * no rows are dropped. If a local copy differs in row count by a couple of
    trading days, entrywise tolerances may drift; the acceptance suite then
    reports deviations against this recipe while the order-selection argmin
    pattern remains the binding check.

Usage:
    python3 scripts/prepare_istanbul.py [raw_file.{csv,xlsx}] [output.csv]

When no raw file is given the script attempts to download the zip from the
UCI archive (requires network access).
"""

import csv
import io
import sys
import urllib.request
import zipfile
from pathlib import Path

UCI_ZIP = "https://archive.ics.uci.edu/static/public/247/istanbul+stock+exchange.zip"

# raw header name (lower-cased, dots stripped) -> output name
COLUMN_MAP = {
    "nikkei": "NIK",
    "nik": "NIK",
    "eu": "EU",
    "ise1": "ISE",  # USD-based ISE series
    "em": "EM",
    "bovespa": "BVSP",
    "bvsp": "BVSP",
    "dax": "DAX",
    "ftse": "FTSE",
    "sp": "SP",
}
ORDER = ["NIK", "EU", "ISE", "EM", "BVSP", "DAX", "FTSE", "SP"]


def normalize(name: str) -> str:
    return name.strip().lower().replace(".", "").replace("_", "").replace(" ", "")


def rows_from_csv(text: str):
    sample = text[:2048]
    delimiter = ";" if sample.count(";") > sample.count(",") else ","
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    rows = [row for row in reader if any(cell.strip() for cell in row)]
    return rows


def rows_from_xlsx(path: Path):
    try:
        from openpyxl import load_workbook
    except ImportError:
        sys.exit("reading .xlsx requires openpyxl; install it or export a CSV")
    sheet = load_workbook(path, read_only=True).active
    return [[("" if c is None else str(c)) for c in row]
            for row in sheet.iter_rows(values_only=True)]


def fetch_uci() -> list:
    print(f"downloading {UCI_ZIP} ...")
    with urllib.request.urlopen(UCI_ZIP) as resp:
        payload = resp.read()
    with zipfile.ZipFile(io.BytesIO(payload)) as zf:
        for name in zf.namelist():
            if name.lower().endswith(".csv"):
                return rows_from_csv(zf.read(name).decode("utf-8-sig"))
            if name.lower().endswith(".xlsx"):
                tmp = Path("/tmp/istanbul_raw.xlsx")
                tmp.write_bytes(zf.read(name))
                return rows_from_xlsx(tmp)
    sys.exit("no usable table found inside the UCI archive")


def main() -> int:
    out_path = Path(sys.argv[2]) if len(sys.argv) > 2 else (
        Path(__file__).resolve().parent.parent / "data" / "istanbul.csv")

    if len(sys.argv) > 1:
        raw = Path(sys.argv[1])
        rows = (rows_from_xlsx(raw) if raw.suffix.lower() == ".xlsx"
                else rows_from_csv(raw.read_text(encoding="utf-8-sig")))
    else:
        rows = fetch_uci()

    # locate the header row: the first row naming at least 6 known series
    header_idx = None
    for i, row in enumerate(rows[:5]):
        hits = sum(1 for cell in row if normalize(cell) in COLUMN_MAP)
        if hits >= 6:
            header_idx = i
            break
    if header_idx is None:
        sys.exit("could not locate a header row naming the return series")

    header = rows[header_idx]
    picked = {}
    # later duplicates win so that ISE.1 (USD) shadows the TL-based ISE column
    for col, cell in enumerate(header):
        key = normalize(cell)
        if key in COLUMN_MAP:
            picked[COLUMN_MAP[key]] = col
        elif key == "ise" and "ISE" not in picked:
            picked["ISE"] = col
    missing = [name for name in ORDER if name not in picked]
    if missing:
        sys.exit(f"missing series in the raw file: {missing}")

    out_path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with out_path.open("w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(ORDER)
        for row in rows[header_idx + 1:]:
            try:
                values = [float(row[picked[name]]) for name in ORDER]
            except (ValueError, IndexError):
                continue  # trailing junk or a repeated header
            writer.writerow(f"{v:.10g}" for v in values)
            n += 1

    print(f"wrote {out_path} ({n} rows, {len(ORDER)} columns)")
    if n < 500:
        print("warning: fewer rows than the published study (534); "
              "entrywise tolerances may drift")
    return 0


if __name__ == "__main__":
    sys.exit(main())
