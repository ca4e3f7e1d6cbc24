"""Machine-readable result records.

Every experiment emits flat records with the fixed field order

    op, params, n, q, value, ci, seed

``params`` is a JSON object of the remaining inputs, ``ci`` is the 95%
half-width (or null for exact values) and ``q`` and ``value`` are written as
strings when they are exact fractions.  JSON output is one object per line;
CSV output has a header row and stores ``params`` as embedded JSON.
"""

from __future__ import annotations

__all__ = ["FIELDS", "Record", "write_records", "format_records"]

import csv
import io
import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, TextIO

FIELDS = ("op", "params", "n", "q", "value", "ci", "seed")


def _plain(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "item") and callable(v.item):  # numpy scalars
        return v.item()
    return v


@dataclass(frozen=True)
class Record:
    op: str
    value: Any
    n: int | None = None
    q: Any = None
    ci: float | None = None
    seed: int | None = None
    params: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {k: _plain(getattr(self, k)) for k in FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), separators=(",", ":"))


def write_records(records: Iterable[Record], stream: TextIO, fmt: str = "json") -> None:
    if fmt == "json":
        for r in records:
            stream.write(r.to_json() + "\n")
    elif fmt == "csv":
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(FIELDS)
        for r in records:
            d = r.as_dict()
            d["params"] = json.dumps(d["params"], separators=(",", ":"), sort_keys=True)
            w.writerow(["" if d[k] is None else d[k] for k in FIELDS])
    else:
        raise ValueError(f"unknown format {fmt!r} (json or csv)")


def format_records(records: Iterable[Record], fmt: str = "json") -> str:
    buf = io.StringIO()
    write_records(records, buf, fmt)
    return buf.getvalue()
