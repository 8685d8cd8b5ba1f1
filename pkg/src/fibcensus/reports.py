"""Serialisation of census rows and reports to CSV, JSON and plain text.

All output is LF-terminated and locale-independent so that identical runs give
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Mapping, Sequence

SCHEMA_VERSION = 1

FORMATS = ("csv", "json", "text")


def to_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def to_json_lines(rows: Iterable[Mapping[str, Any]]) -> str:
    return "".join(json.dumps(dict(r), ensure_ascii=True, separators=(", ", ": ")) + "\n" for r in rows)


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def to_text(pairs: Mapping[str, Any]) -> str:
    width = max(len(k) for k in pairs)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs.items())


def census_rows_csv(records: Iterable) -> str:
    return to_csv(("a", "k", "count"), ((r.a, r.k, r.count) for r in records))


def census_rows_json(records: Iterable) -> str:
    return to_json([{"a": r.a, "k": r.k, "count": r.count} for r in records])
