"""File formats: headerless numeric CSV matrices, the site dataset CSV, JSON."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import MatrixParseError

GEO_HEADER = ["site", "Twin", "Rwin", "Ewin", "Tsum", "Rsum", "Esum"]


def format_number(v: float) -> str:
    return format(float(v), ".17g")


def _parse_field(text, path, line, col):
    s = text.strip()
    try:
        v = float(s)
    except ValueError:
        raise MatrixParseError(path, line, col, f"non-numeric field {text!r}") from None
    # float() also accepts "nan"/"inf"
    if not math.isfinite(v):
        raise MatrixParseError(path, line, col, f"non-finite field {text!r}")
    return v


def parse_matrix(text: str, path: str = "<string>") -> np.ndarray:
    """Parse the CSV matrix format. Line and column numbers in errors are 1-based."""
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        fields = raw.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise MatrixParseError(path, lineno, min(len(fields), width) + 1, f"expected {width} fields, found {len(fields)}")
        rows.append([_parse_field(f, path, lineno, c) for c, f in enumerate(fields, start=1)])
    if not rows:
        raise MatrixParseError(path, 0, 0, "no data rows")
    return np.array(rows, dtype=np.float64)


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text(encoding="utf-8"), str(path))


def format_matrix(M) -> str:
    M = np.atleast_2d(np.asarray(M, dtype=np.float64))
    return "".join(",".join(format_number(v) for v in row) + "\n" for row in M)


def write_matrix(path, M) -> None:
    Path(path).write_text(format_matrix(M), encoding="utf-8")


def read_geo_csv(source):
    """Read a site dataset from a path or an open text stream."""
    from .apps.geoloc import GeoDataset

    if isinstance(source, (str, Path)):
        name = str(source)
        with open(source, encoding="utf-8", newline="") as fh:
            text = fh.read()
    else:
        name = getattr(source, "name", "<stream>")
        text = source.read()

    reader = csv.reader(io.StringIO(text))
    names, values = [], []
    header_seen = False
    for row in reader:
        lineno = reader.line_num
        if not row or all(not f.strip() for f in row):
            continue
        if not header_seen:
            if [f.strip() for f in row] != GEO_HEADER:
                raise MatrixParseError(name, lineno, 1, f"header must be {','.join(GEO_HEADER)}")
            header_seen = True
            continue
        if len(row) != 7:
            raise MatrixParseError(name, lineno, min(len(row), 7) + 1, f"expected 7 fields, found {len(row)}")
        names.append(row[0].strip())
        values.append([_parse_field(f, name, lineno, c) for c, f in enumerate(row[1:], start=2)])
    if not values:
        raise MatrixParseError(name, 0, 0, "no site rows")
    data = np.array(values)
    return GeoDataset(names, data[:, :3], data[:, 3:])


def write_geo_csv(path, data) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(GEO_HEADER)
        for name, win, summ in zip(data.site_names, data.winter, data.summer):
            w.writerow([name, *(format_number(v) for v in win), *(format_number(v) for v in summ)])


def write_scatter(path, report) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["site", "ax", "bx", "score"])
        for s in report.sites:
            w.writerow([s.name, format_number(s.ax), format_number(s.bx), format_number(s.score)])


def dumps(obj) -> str:
    # repr-based float output is the shortest string that round-trips exactly.
    return json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False)


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")
