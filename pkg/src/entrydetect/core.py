"""Readings, traces, datasets, CSV I/O, feature extraction and scaling."""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyDataset,
    IndexOutOfRange,
    InvalidTrace,
    MalformedHeader,
    NonpositiveRadius,
    RangeViolation,
    RowParseError,
)

CSV_COLUMNS = ("num_satellites", "snr_db", "rss_dbm", "entrance", "distance_m", "note")
FEATURE_NAMES = ("num_satellites", "snr_db", "rss_dbm")

RSS_RANGE = (-120.0, 0.0)
SNR_RANGE = (0.0, 60.0)
DEFAULT_RADIUS = 1.0

RAW3 = "raw3"
WINDOWED6 = "windowed6"
SCHEMA_WIDTH = {RAW3: 3, WINDOWED6: 6}


class Label(enum.Enum):
    OUTSIDE = "Outside"
    ENTRANCE = "Entrance"
    INSIDE = "Inside"

    @classmethod
    def parse(cls, text):
        for label in cls:
            if label.value.lower() == text.strip().lower():
                return label
        raise ValueError(f"unknown label {text!r}")


def label_from_distance(d, radius=DEFAULT_RADIUS):
    """Entrance iff ``|d| <= radius``; positive distances are outside."""
    if not radius > 0:
        raise NonpositiveRadius(f"radius must be positive, got {radius}")
    if abs(d) <= radius:
        return Label.ENTRANCE
    return Label.OUTSIDE if d > 0 else Label.INSIDE


@dataclass(frozen=True)
class SensorReading:
    num_satellites: int
    snr_db: float
    rss_dbm: float
    distance_m: float
    entrance: bool
    note: Label | None = None

    def __post_init__(self):
        check_reading(self)


def check_reading(r, line=None):
    if isinstance(r.num_satellites, bool) or not isinstance(r.num_satellites, (int, np.integer)):
        raise RangeViolation(line, "num_satellites", r.num_satellites)
    if r.num_satellites < 0:
        raise RangeViolation(line, "num_satellites", r.num_satellites)
    if not (math.isfinite(r.snr_db) and SNR_RANGE[0] <= r.snr_db <= SNR_RANGE[1]):
        raise RangeViolation(line, "snr_db", r.snr_db)
    if not (math.isfinite(r.rss_dbm) and RSS_RANGE[0] <= r.rss_dbm <= RSS_RANGE[1]):
        raise RangeViolation(line, "rss_dbm", r.rss_dbm)
    if not math.isfinite(r.distance_m):
        raise RangeViolation(line, "distance_m", r.distance_m)
    if r.note is not None and (r.note is Label.ENTRANCE) != bool(r.entrance):
        raise RangeViolation(line, "note", r.note.value)


@dataclass(frozen=True)
class Trace:
    """One approach walk, ordered from outside to inside."""

    readings: tuple[SensorReading, ...]
    id: str = "trace"

    def __post_init__(self):
        object.__setattr__(self, "readings", tuple(self.readings))
        if not self.readings:
            raise InvalidTrace(f"{self.id}: empty trace")
        d = [r.distance_m for r in self.readings]
        if any(b >= a for a, b in zip(d, d[1:])):
            raise InvalidTrace(f"{self.id}: distance_m must be strictly decreasing")

    def __len__(self):
        return len(self.readings)

    @property
    def distances(self):
        return np.array([r.distance_m for r in self.readings])


def split_traces(readings, prefix="trace"):
    """Cut a flat reading list into traces wherever distance stops decreasing."""
    traces, current = [], []
    for r in readings:
        if current and r.distance_m >= current[-1].distance_m:
            traces.append(Trace(current, f"{prefix}-{len(traces)}"))
            current = []
        current.append(r)
    if current:
        traces.append(Trace(current, f"{prefix}-{len(traces)}"))
    return traces


# ---------------------------------------------------------------- CSV

def _parse_float(text, line, column):
    try:
        value = float(text)
    except ValueError:
        raise RowParseError(line, column, f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise RangeViolation(line, column, value)
    return value


def parse_csv(text):
    """Parse a reading CSV. Accepts LF or CRLF; the ``note`` column is optional."""
    rows = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(rows)
    except StopIteration:
        raise MalformedHeader("empty document") from None
    header = [h.strip() for h in header]
    if tuple(header) not in (CSV_COLUMNS, CSV_COLUMNS[:-1]):
        raise MalformedHeader(f"expected {','.join(CSV_COLUMNS)}, got {','.join(header)}")
    has_note = len(header) == len(CSV_COLUMNS)

    readings = []
    for row in rows:
        line = rows.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise RowParseError(line, None, f"expected {len(header)} fields, got {len(row)}")
        cells = dict(zip(header, (c.strip() for c in row)))

        sats_text = cells["num_satellites"]
        try:
            sats = int(sats_text)
        except ValueError:
            raise RowParseError(line, "num_satellites", f"not an integer: {sats_text!r}") from None
        snr = _parse_float(cells["snr_db"], line, "snr_db")
        rss = _parse_float(cells["rss_dbm"], line, "rss_dbm")
        dist = _parse_float(cells["distance_m"], line, "distance_m")

        flag = cells["entrance"].lower()
        if flag not in ("yes", "no"):
            raise RowParseError(line, "entrance", f"expected Yes/No, got {cells['entrance']!r}")

        note = None
        if has_note and cells["note"]:
            try:
                note = Label.parse(cells["note"])
            except ValueError as exc:
                raise RowParseError(line, "note", str(exc)) from None

        try:
            readings.append(SensorReading(sats, snr, rss, dist, flag == "yes", note))
        except RangeViolation as exc:
            raise RangeViolation(line, exc.field, exc.value) from None
    return readings


def format_number(x):
    """Shortest text that parses back to exactly ``x``; integral values drop the fraction."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return f"{x:.0f}"
    return repr(x)


def write_csv(readings):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in readings:
        writer.writerow([
            str(int(r.num_satellites)),
            format_number(r.snr_db),
            format_number(r.rss_dbm),
            "Yes" if r.entrance else "No",
            format_number(r.distance_m),
            r.note.value if r.note is not None else "",
        ])
    return out.getvalue()


# ---------------------------------------------------------------- features

def features_raw(reading):
    return np.array([reading.num_satellites, reading.snr_db, reading.rss_dbm], dtype=float)


def _ols_slope(y):
    n = len(y)
    if n < 2:
        return 0.0
    t = np.arange(n, dtype=float)
    tc = t - t.mean()
    return float(np.dot(tc, y - y.mean()) / np.dot(tc, tc))


def features_windowed(trace, i, w):
    """Window means of the three signals followed by their OLS slopes per sample."""
    if w < 2:
        raise IndexOutOfRange(f"window length must be >= 2, got {w}")
    if not 0 <= i < len(trace):
        raise IndexOutOfRange(f"index {i} outside trace of length {len(trace)}")
    block = np.array([features_raw(r) for r in trace.readings[max(0, i - w + 1): i + 1]])
    means = block.mean(axis=0)
    slopes = [_ols_slope(block[:, j]) for j in range(block.shape[1])]
    return np.concatenate([means, slopes])


@dataclass(frozen=True)
class Dataset:
    X: np.ndarray
    y: np.ndarray
    schema: str = RAW3

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=bool)
        if X.ndim != 2 or X.shape[0] == 0:
            raise EmptyDataset("dataset needs at least one row")
        if y.shape != (X.shape[0],):
            raise DimensionMismatch(f"{X.shape[0]} rows but {y.shape} targets")
        if self.schema in SCHEMA_WIDTH and X.shape[1] != SCHEMA_WIDTH[self.schema]:
            raise DimensionMismatch(f"schema {self.schema} needs {SCHEMA_WIDTH[self.schema]} columns")
        if not np.all(np.isfinite(X)):
            raise DimensionMismatch("feature values must be finite")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    def __len__(self):
        return self.X.shape[0]

    @property
    def n_features(self):
        return self.X.shape[1]

    def subset(self, idx):
        return Dataset(self.X[idx], self.y[idx], self.schema)


def dataset_from_readings(readings):
    readings = list(readings)
    if not readings:
        raise EmptyDataset("no readings")
    X = np.array([features_raw(r) for r in readings])
    y = np.array([r.entrance for r in readings])
    return Dataset(X, y, RAW3)


def dataset_from_traces(traces, schema=RAW3, window=5):
    if schema == RAW3:
        return dataset_from_readings(r for t in traces for r in t.readings)
    if schema != WINDOWED6:
        raise ValueError(f"unknown feature schema {schema!r}")
    rows, targets = [], []
    for t in traces:
        for i, r in enumerate(t.readings):
            rows.append(features_windowed(t, i, window))
            targets.append(r.entrance)
    if not rows:
        raise EmptyDataset("no readings")
    return Dataset(np.array(rows), np.array(targets), WINDOWED6)


# ---------------------------------------------------------------- scaling

@dataclass(frozen=True)
class Scaler:
    means: np.ndarray
    stds: np.ndarray = field()

    def __post_init__(self):
        means = np.array(self.means, dtype=float)
        stds = np.array(self.stds, dtype=float)
        if means.shape != stds.shape or means.ndim != 1:
            raise DimensionMismatch("means and stds must be 1-D of equal length")
        if np.any(~(stds > 0)):
            raise ValueError("stds must be strictly positive")
        means.setflags(write=False)
        stds.setflags(write=False)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "stds", stds)

    def _check(self, v):
        v = np.asarray(v, dtype=float)
        if v.shape[-1] != self.means.shape[0]:
            raise DimensionMismatch(f"expected {self.means.shape[0]} features, got {v.shape[-1]}")
        return v

    def apply(self, v):
        return (self._check(v) - self.means) / self.stds

    def invert(self, z):
        return self._check(z) * self.stds + self.means

    def to_dict(self):
        return {"means": self.means.tolist(), "stds": self.stds.tolist()}

    @classmethod
    def from_dict(cls, d):
        return cls(d["means"], d["stds"])


def fit_scaler(dataset):
    X = dataset.X if isinstance(dataset, Dataset) else np.asarray(dataset, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyDataset("cannot fit a scaler on zero rows")
    stds = X.std(axis=0)
    stds[stds < 1e-12] = 1.0
    return Scaler(X.mean(axis=0), stds)


def apply_scaler(scaler, v):
    return scaler.apply(v)
