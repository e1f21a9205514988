"""Reading and writing traces as JSON Lines or CSV.

JSON Lines: one object per line mapping variable names to booleans,
integers or decimal numbers; ``null`` leaves a variable unbound.  CSV: a
header row of variable names, then one row per state; cells are ``true`` /
``false`` (any case), numbers, or empty for unbound.

Decimals are read exactly (``0.25`` is 1/4).  Scientific notation is rejected.
A string ``"n/d"`` is accepted as an exact rational, which is how
non-terminating rationals are written back out.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import BadLassoStart, EmptyTrace, FormatError
from .trace import FiniteTrace, LassoTrace, State, Trace

_DECIMAL = re.compile(r"-?\d+(\.\d+)?")
_RATIONAL = re.compile(r"-?\d+/\d+")


def _parse_number(text: str, line: int):
    if _DECIMAL.fullmatch(text):
        return Fraction(text)
    if _RATIONAL.fullmatch(text):
        num, den = text.split("/")
        if int(den) == 0:
            raise FormatError(f"zero denominator in {text!r}", line)
        return Fraction(int(num), int(den))
    if "e" in text.lower():
        raise FormatError(f"scientific notation is not accepted: {text!r}", line)
    raise FormatError(f"not a number: {text!r}", line)


def _jsonl_records(text: str):
    records = []
    for n, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue

        def bad_float(s, n=n):
            return _parse_number(s, n)

        try:
            obj = json.loads(raw, parse_float=bad_float,
                             parse_constant=lambda c, n=n: _reject_constant(c, n))
        except json.JSONDecodeError as e:
            raise FormatError(f"invalid JSON: {e.msg}", n) from None
        if not isinstance(obj, dict):
            raise FormatError("each line must be a JSON object", n)
        state = {}
        for k, v in obj.items():
            if v is None:
                continue
            if isinstance(v, str) and _RATIONAL.fullmatch(v):
                v = _parse_number(v, n)
            if not isinstance(v, (bool, int, Fraction)):
                raise FormatError(f"unsupported value for {k!r}: {v!r}", n)
            state[k] = v
        records.append(_state(state, n))
    return records


def _reject_constant(c, line):
    raise FormatError(f"unsupported constant {c}", line)


def _state(d, line):
    try:
        return State(d)
    except (ValueError, TypeError) as e:
        raise FormatError(str(e), line) from None


def _csv_records(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if any(c.strip() for c in r)]
    if not rows:
        return []
    header = [h.strip() for h in rows[0]]
    if any(not h for h in header):
        raise FormatError("empty column name in header", 1)
    records = []
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise FormatError(f"expected {len(header)} cells, got {len(row)}", n)
        state = {}
        for name, cell in zip(header, row):
            cell = cell.strip()
            if not cell:
                continue
            low = cell.lower()
            if low in ("true", "false"):
                state[name] = low == "true"
            else:
                state[name] = _parse_number(cell, n)
        records.append(_state(state, n))
    return records


def records_to_trace(records, lasso_start: int | None = None) -> Trace:
    if not records:
        raise EmptyTrace("trace file contains no states")
    if lasso_start is None:
        return FiniteTrace(records)
    if not 0 <= lasso_start < len(records):
        raise BadLassoStart(
            f"lasso start {lasso_start} must be below the number of states ({len(records)})")
    return LassoTrace(records[:lasso_start], records[lasso_start:])


def parse_trace(text: str, fmt: str = "jsonl", lasso_start: int | None = None) -> Trace:
    if fmt == "jsonl":
        records = _jsonl_records(text)
    elif fmt == "csv":
        records = _csv_records(text)
    else:
        raise ValueError(f"unknown trace format {fmt!r}")
    return records_to_trace(records, lasso_start)


def load_trace(path, fmt: str = "jsonl", lasso_start: int | None = None) -> Trace:
    """Load a trace file.  With ``lasso_start`` the records from that index on
    form the repeating cycle."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_trace(text, fmt, lasso_start)


def _json_value(v):
    if isinstance(v, (bool, int)):
        return v
    d = v.denominator
    for f in (2, 5):
        while d % f == 0:
            d //= f
    if d == 1:
        # terminating decimal; emit it literally so it reads back exactly
        from .parser import _decimal
        return _RawNumber(_decimal(v))
    return f"{v.numerator}/{v.denominator}"


class _RawNumber(str):
    pass


def _dump_record(state: State) -> str:
    parts = []
    for k in state:
        v = _json_value(state[k])
        text = str(v) if isinstance(v, _RawNumber) else json.dumps(v)
        parts.append(f"{json.dumps(k)}: {text}")
    return "{" + ", ".join(parts) + "}"


def dump_trace(t: Trace) -> tuple[str, int | None]:
    """Serialize as JSON Lines; returns the text and the lasso start (if any)."""
    if isinstance(t, LassoTrace):
        states = list(t.prefix) + list(t.cycle)
        start = len(t.prefix)
    else:
        states = list(t.states)
        start = None
    return "".join(_dump_record(s) + "\n" for s in states), start


def dump_records(records) -> str:
    return "".join(_dump_record(r if isinstance(r, State) else State(r)) + "\n" for r in records)
