"""Reading and writing request sequences.

Two formats: a CSV with header ``time,price`` and a JSON array of
``{"time": ..., "price": ...}`` objects.  Numbers may be written as decimals
(``"12.5"``), fractions (``"25/2"``) or JSON numbers; all are parsed exactly.
"""

from __future__ import annotations

import csv
import decimal
import io
import json
from pathlib import Path
from typing import Union

from .core import RequestSequence, format_rational, rational


class FormatError(ValueError):
    """A sequence file could not be parsed; ``field`` locates the problem."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"field '{field}': {message}")


def _parse(value, where):
    try:
        return rational(value)
    except (TypeError, ValueError) as exc:
        raise FormatError(where, str(exc)) from None


def sequence_from_csv(text: str) -> RequestSequence:
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r and any(c.strip() for c in r)]
    if not rows:
        return RequestSequence()
    header = [c.strip().lower() for c in rows[0]]
    if header != ["time", "price"]:
        raise FormatError("header", f"expected 'time,price', got {','.join(rows[0])!r}")
    pairs = []
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise FormatError(f"line {n}", "expected two columns")
        pairs.append((_parse(row[0], f"line {n}.time"), _parse(row[1], f"line {n}.price")))
    return RequestSequence(pairs)


def sequence_to_csv(seq: RequestSequence) -> str:
    lines = ["time,price"]
    lines += [f"{format_rational(t)},{format_rational(p)}" for t, p in seq]
    return "\n".join(lines) + "\n"


def sequence_from_json(text: str) -> RequestSequence:
    try:
        data = json.loads(text, parse_float=decimal.Decimal)
    except json.JSONDecodeError as exc:
        raise FormatError("json", str(exc)) from None
    if not isinstance(data, list):
        raise FormatError("json", "expected an array of {time, price} objects")
    pairs = []
    for i, item in enumerate(data):
        if not isinstance(item, dict) or "time" not in item or "price" not in item:
            raise FormatError(f"[{i}]", "expected an object with 'time' and 'price'")
        pairs.append((_parse(item["time"], f"[{i}].time"), _parse(item["price"], f"[{i}].price")))
    return RequestSequence(pairs)


def sequence_to_json(seq: RequestSequence) -> str:
    data = [{"time": format_rational(t), "price": format_rational(p)} for t, p in seq]
    return json.dumps(data, indent=1) + "\n"


def read_sequence(path: Union[str, Path]) -> RequestSequence:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError("file", str(exc)) from None
    if path.suffix.lower() == ".json":
        return sequence_from_json(text)
    return sequence_from_csv(text)


def write_sequence(seq: RequestSequence, path: Union[str, Path]) -> None:
    path = Path(path)
    text = sequence_to_json(seq) if path.suffix.lower() == ".json" else sequence_to_csv(seq)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
