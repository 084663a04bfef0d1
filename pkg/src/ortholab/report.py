"""CSV, JSON and plain-text emitters.

Floats are written with 17 significant digits so every value read back
is bit-identical to the one written.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence, TextIO


def fmt(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) or hasattr(value, "__float__"):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(value)


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], stream: TextIO,
              footer: Iterable[str] = ()) -> None:
    """Header row, comma-separated rows, then ``# ``-prefixed footer lines."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    for line in footer:
        stream.write(f"# {line}\n")


def csv_string(header, rows, footer=()) -> str:
    buf = io.StringIO()
    write_csv(header, rows, buf, footer)
    return buf.getvalue()


def read_csv(text: str) -> tuple[list[str], list[list[float]]]:
    """Parse output of :func:`write_csv`, skipping footer lines."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    return header, [[float(v) for v in row] for row in reader]


def _json_default(obj):
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "__float__"):
        return float(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_json(obj: Any) -> str:
    # json writes the shortest repr that round-trips, so floats stay exact
    return json.dumps(obj, indent=2, default=_json_default)


def text_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    cells = [[str(h) for h in header]] + [[fmt(v) for v in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    out = []
    for n, row in enumerate(cells):
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if n == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out)
