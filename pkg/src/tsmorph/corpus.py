"""Corpus ingestion and serialization.

Two corpus formats:

* per-file: a directory of ``*.csv`` files, each with header ``t,value``
  and rows ``0,<v0>``, ``1,<v1>``, ...; an empty value field marks a
  missing observation; the series id is the file stem;
* wide: a single CSV whose header row lists series ids, one column per
  series; empty cells mark missing observations.

Numbers are serialized as the shortest decimal that round-trips the
binary64 value, so write-then-read reproduces values bit-exactly.
Parse errors name the data row (1-based, header excluded) and the
1-based column of the offending field.
"""

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DuplicateIdError, EmptyFileError, ParseError
from .series import TimeSeries, interpolate_missing

CORPUS_FORMATS = ("per-file", "wide")


@dataclass(frozen=True)
class ManifestEntry:
    series_id: str
    path: str
    length: int
    missing_count: int


@dataclass(frozen=True)
class CorpusManifest:
    entries: tuple[ManifestEntry, ...]
    format: str


def _parse_value(token: str, where: str) -> float:
    token = token.strip()
    if token == "":
        return float("nan")
    try:
        value = float(token)
    except ValueError as exc:
        raise ParseError(f"{where}: not a number: {token!r}") from exc
    if not np.isfinite(value):
        raise ParseError(f"{where}: non-finite value: {token!r}")
    return value


def read_series_csv(path: str | Path) -> TimeSeries:
    """Read one per-file series; empty value fields become missing slots."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8-sig") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise EmptyFileError(f"{path}: file is empty")
    header = [cell.strip() for cell in rows[0]]
    if header != ["t", "value"]:
        raise ParseError(f"{path}: header must be 't,value', got {rows[0]!r}")
    if len(rows) == 1:
        raise EmptyFileError(f"{path}: no data rows")
    values = []
    for line, row in enumerate(rows[1:], start=1):
        if len(row) != 2:
            raise ParseError(f"{path}: line {line}: expected 2 fields, got {len(row)}")
        index_token = row[0].strip()
        try:
            index = int(index_token)
        except ValueError as exc:
            raise ParseError(
                f"{path}: line {line}, column 1: not an integer: {index_token!r}"
            ) from exc
        if index != line - 1:
            raise ParseError(
                f"{path}: line {line}, column 1: expected t={line - 1}, got {index}"
            )
        values.append(_parse_value(row[1], f"{path}: line {line}, column 2"))
    return TimeSeries(np.array(values), id=path.stem)


def write_series_csv(path: str | Path, series: TimeSeries) -> None:
    """Write one per-file series; missing slots become empty value fields."""
    lines = ["t,value"]
    for t, value in enumerate(series.values):
        lines.append(f"{t}," if np.isnan(value) else f"{t},{float(value)!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_wide_csv(path: str | Path) -> list[TimeSeries]:
    """Read a wide corpus: header of series ids, one column per series."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8-sig") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise EmptyFileError(f"{path}: file is empty")
    ids = [cell.strip() for cell in rows[0]]
    if not ids or any(not sid for sid in ids):
        raise ParseError(f"{path}: header row must name every series")
    seen = set()
    for sid in ids:
        if sid in seen:
            raise DuplicateIdError(f"{path}: duplicate series id {sid!r}")
        seen.add(sid)
    if len(rows) == 1:
        raise EmptyFileError(f"{path}: no data rows")
    columns: list[list[float]] = [[] for _ in ids]
    for line, row in enumerate(rows[1:], start=1):
        if len(row) != len(ids):
            raise ParseError(
                f"{path}: line {line}: expected {len(ids)} fields, got {len(row)}"
            )
        for col, token in enumerate(row):
            columns[col].append(
                _parse_value(token, f"{path}: line {line}, column {col + 1}")
            )
    return [TimeSeries(np.array(col), id=sid) for sid, col in zip(ids, columns)]


def load_corpus(
    path: str | Path,
    format: str = "per-file",
    interpolate: bool = False,
) -> tuple[CorpusManifest, list[TimeSeries]]:
    """Load a corpus. Missing markers are preserved unless `interpolate`
    is set, in which case gaps are repaired by linear interpolation with
    constant boundary extension. The manifest records the pre-repair
    missing counts."""
    if format not in CORPUS_FORMATS:
        raise ValueError(f"unknown corpus format {format!r}; choose from {CORPUS_FORMATS}")
    path = Path(path)
    if format == "per-file":
        if not path.is_dir():
            raise ParseError(f"{path}: per-file corpus must be a directory")
        files = sorted(path.glob("*.csv"))
        if not files:
            raise EmptyFileError(f"{path}: no CSV files found")
        series_list = [read_series_csv(f) for f in files]
        paths = [str(f) for f in files]
    else:
        series_list = read_wide_csv(path)
        paths = [str(path)] * len(series_list)
    seen: set[str] = set()
    for s in series_list:
        if s.id in seen:
            raise DuplicateIdError(f"duplicate series id {s.id!r}")
        seen.add(s.id)  # type: ignore[arg-type]
    entries = tuple(
        ManifestEntry(
            series_id=s.id or "",
            path=p,
            length=len(s),
            missing_count=s.missing_count,
        )
        for s, p in zip(series_list, paths)
    )
    if interpolate:
        series_list = [interpolate_missing(s) for s in series_list]
    return CorpusManifest(entries=entries, format=format), series_list


def dump_json(obj, path: str | Path | None) -> str:
    """Serialize to deterministic, diffable JSON; write when a path is given."""
    text = json.dumps(obj, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_json(source: str | Path):
    path = Path(source)
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def read_series_csv_text(text: str, series_id: str | None = None) -> TimeSeries:
    """Parse the per-file CSV schema from a string (external protocol helper)."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [cell.strip() for cell in rows[0]] != ["t", "value"]:
        raise ParseError("payload header must be 't,value'")
    values = [
        _parse_value(row[1], f"payload line {line}, column 2")
        for line, row in enumerate(rows[1:], start=1)
    ]
    if not values:
        raise EmptyFileError("payload has no data rows")
    return TimeSeries(np.array(values), id=series_id)
