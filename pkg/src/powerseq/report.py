"""Canonical serialization of results: JSON, JSON lines and CSV."""

from __future__ import annotations

import configparser
import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Sequence

from .polycore import MPoly, scalar_text

SCHEMA_VERSION = 1


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, MPoly):
        return obj.to_text()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    try:
        return scalar_text(obj)
    except (TypeError, AttributeError):
        raise TypeError(f"cannot serialize {type(obj).__name__}") from None


def render_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_default) + "\n"


def render_jsonl(records: Iterable) -> str:
    lines = [json.dumps(r, sort_keys=True, default=_default) for r in records]
    return "".join(line + "\n" for line in lines)


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return _default(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def read_config(path: str) -> dict[str, str]:
    """Plain ``key = value`` lines; '#' starts a comment."""
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#",))
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[config]\n" + fh.read())
    return dict(parser["config"])


def write_output(text: str, path: str | None, stream) -> None:
    if path is None or path == "-":
        stream.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
