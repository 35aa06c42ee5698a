"""CSV/JSON export of growth series.

CSV files start with one ``# meta: {...}`` comment line, then the columns
``n, gamma, log_gamma, loglog_ratio, sphere``.  ``log_gamma`` carries 20
significant digits; ``loglog_ratio`` is ``log log gamma(n) / log n`` and is
left blank where undefined.  Only ``n`` and ``gamma`` are read back.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import Context, Decimal
from pathlib import Path

from .growth import GrowthSeries

COLUMNS = ("n", "gamma", "log_gamma", "loglog_ratio", "sphere")

SERIES_SCHEMA = {
    "type": "object",
    "required": ["radius", "generators", "values", "meta"],
    "properties": {
        "radius": {"type": "integer", "minimum": 0},
        "generators": {"const": ["a", "b", "c", "d"]},
        "values": {"type": "array", "items": {"type": "string", "pattern": "^[0-9]+$"}},
        "meta": {"type": "object"},
        "rows": {"type": "array"},
    },
}

_CTX = Context(prec=20)


def _log(x) -> Decimal:
    return Decimal(x).ln(_CTX)


def series_rows(series: GrowthSeries) -> list[dict]:
    rows = []
    spheres = series.spheres
    for n, g in enumerate(series.values):
        log_g = _log(g) if g > 0 else None
        ratio = None
        if n >= 2 and log_g is not None and log_g > 0:
            ratio = log_g.ln(_CTX) / _log(n)
        rows.append(
            {
                "n": n,
                "gamma": g,
                "log_gamma": "" if log_g is None else f"{log_g:.19E}",
                "loglog_ratio": "" if ratio is None else f"{ratio:.19E}",
                "sphere": spheres[n],
            }
        )
    return rows


def _jsonable_meta(meta):
    return json.loads(json.dumps(meta, default=str))


def series_to_csv(series: GrowthSeries) -> str:
    buf = io.StringIO()
    buf.write("# meta: " + json.dumps(_jsonable_meta(series.meta), sort_keys=True) + "\n")
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(series_rows(series))
    return buf.getvalue()


def series_from_csv(text: str) -> GrowthSeries:
    lines = text.splitlines()
    meta = {}
    if lines and lines[0].startswith("# meta:"):
        meta = json.loads(lines[0][len("# meta:"):])
        lines = lines[1:]
    values = []
    for i, row in enumerate(csv.DictReader(lines)):
        if int(row["n"]) != i:
            raise ValueError(f"row {i} has n = {row['n']}")
        values.append(int(row["gamma"]))
    return GrowthSeries(values, meta)


def series_to_json(series: GrowthSeries) -> str:
    doc = {
        "radius": series.radius,
        "generators": ["a", "b", "c", "d"],
        # decimal strings so that no JSON reader rounds large values
        "values": [str(v) for v in series.values],
        "meta": _jsonable_meta(series.meta),
        "rows": series_rows(series),
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def series_from_json(text: str, validate: bool = True) -> GrowthSeries:
    doc = json.loads(text)
    if validate:
        import jsonschema

        jsonschema.validate(doc, SERIES_SCHEMA)
    return GrowthSeries([int(v) for v in doc["values"]], doc["meta"])


def export_series(series: GrowthSeries, path, fmt: str | None = None) -> Path:
    """Write ``series`` as CSV or JSON (inferred from the suffix when ``fmt`` is None)."""
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".").lower()
    if fmt == "csv":
        text = series_to_csv(series)
    elif fmt == "json":
        text = series_to_json(series)
    else:
        raise ValueError(f"unknown series format {fmt!r}; use csv or json")
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write series to {path}: {exc}") from exc
    return path


def load_series(path, fmt: str | None = None) -> GrowthSeries:
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".").lower()
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read series from {path}: {exc}") from exc
    if fmt == "csv":
        return series_from_csv(text)
    if fmt == "json":
        return series_from_json(text)
    raise ValueError(f"unknown series format {fmt!r}; use csv or json")
