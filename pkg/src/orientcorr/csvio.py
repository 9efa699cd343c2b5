"""Versioned CSV output with exact and decimal columns side by side."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import rational_from_str, rational_to_str
from .report import to_decimal

SCHEMA_PREFIX = "# orientcorr-csv"
SCHEMA_VERSION = 1


def schema_line(table: str) -> str:
    return f"{SCHEMA_PREFIX} v{SCHEMA_VERSION} {table}"


def expand_row(row: dict, digits: int, exact: bool = True) -> dict:
    """Fractions become an ``a/b`` column plus a ``<name>_dec`` column."""
    out = {}
    for k, v in row.items():
        if type(v).__name__ == "mpq":
            v = Fraction(int(v.numerator), int(v.denominator))
        if isinstance(v, Fraction):
            if exact:
                out[k] = rational_to_str(v)
            out[k + "_dec"] = to_decimal(v, digits)
        elif v is None:
            out[k] = ""
        elif isinstance(v, float):
            out[k] = repr(v)
        elif isinstance(v, (int, str)):
            out[k] = v
        else:
            out[k] = to_decimal(v, digits)
    return out


def write_csv(table: str, rows: Sequence[dict], digits: int = 17, exact: bool = True,
              fh=None, notes: Iterable[str] = ()) -> str:
    """Write rows (dicts sharing keys) and return the text."""
    buf = io.StringIO()
    buf.write(schema_line(table) + "\n")
    for note in notes:
        buf.write(f"# {note}\n")
    expanded = [expand_row(r, digits, exact) for r in rows]
    fields: list[str] = []
    for r in expanded:
        for k in r:
            if k not in fields:
                fields.append(k)
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(expanded)
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def read_csv(text: str) -> tuple[str, list[dict]]:
    """Parse text written by :func:`write_csv`.

    Returns the table name and the rows; ``a/b`` columns come back as
    Fractions, integer columns as ints, everything else as strings.
    """
    lines = text.splitlines()
    if not lines or not lines[0].startswith(SCHEMA_PREFIX):
        raise ValueError("missing schema line")
    parts = lines[0].split()
    version = int(parts[2].lstrip("v"))
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {version}")
    table = parts[3] if len(parts) > 3 else ""
    body = [ln for ln in lines[1:] if not ln.startswith("#")]
    rows = []
    for r in csv.DictReader(body):
        parsed = {}
        for k, v in r.items():
            if k.endswith("_dec") or v == "":
                parsed[k] = v if v != "" else None
            elif "/" in v:
                parsed[k] = rational_from_str(v)
            else:
                try:
                    parsed[k] = int(v)
                except ValueError:
                    parsed[k] = v
        rows.append(parsed)
    return table, rows
