"""From per-reading decisions to one entrance position per trace."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .classifiers import predict
from .core import features_raw
from .errors import BadWindow, DimensionMismatch, NoEntranceDetected

DEFAULT_WINDOW = 3


@dataclass(frozen=True)
class DetectionResult:
    trace_id: str
    estimated_index: int
    estimated_position_m: float
    position_error_m: float
    positives: tuple[int, ...]

    def to_json(self):
        d = asdict(self)
        d["positives"] = list(self.positives)
        return json.dumps(d)

    def summary(self):
        return (f"{self.trace_id}: entrance at reading {self.estimated_index} "
                f"(d = {self.estimated_position_m:+.2f} m), error {self.position_error_m:.2f} m, "
                f"{len(self.positives)} positive readings")


def classify_trace(model, trace):
    n = getattr(model, "n_features", None)
    if n != 3:
        raise DimensionMismatch(f"trace classification needs a raw 3-feature model, got {n} features")
    return [bool(predict(model, features_raw(r))) for r in trace.readings]


def smooth(predictions, window=DEFAULT_WINDOW):
    """Centred sliding majority vote, window truncated at the ends.

    A position is positive only when positives are a strict majority of its
    (possibly truncated) window; a split vote stays negative.
    """
    if isinstance(window, bool) or int(window) != window or window < 1 or window % 2 == 0:
        raise BadWindow(f"window must be a positive odd integer, got {window}")
    p = [bool(x) for x in predictions]
    if window == 1:
        return p
    half = window // 2
    out = []
    for i in range(len(p)):
        chunk = p[max(0, i - half): i + half + 1]
        out.append(2 * sum(chunk) > len(chunk))
    return out


def longest_run(flags):
    """``(start, length)`` of the longest run of True; the earliest wins ties."""
    best = (0, 0)
    start = None
    for i, f in enumerate(list(flags) + [False]):
        if f and start is None:
            start = i
        elif not f and start is not None:
            if i - start > best[1]:
                best = (start, i - start)
            start = None
    return best


def detect_from_predictions(trace, predictions, window=DEFAULT_WINDOW):
    flags = smooth(predictions, window)
    start, length = longest_run(flags)
    if length == 0:
        raise NoEntranceDetected(f"{trace.id}: no reading classified as entrance")
    idx = start + (length - 1) // 2
    pos = float(trace.readings[idx].distance_m)
    return DetectionResult(trace.id, idx, pos, abs(pos),
                           tuple(i for i, f in enumerate(flags) if f))


def estimate_entrance(model, trace, window=DEFAULT_WINDOW):
    return detect_from_predictions(trace, classify_trace(model, trace), window)


def error_summary(errors):
    """Median and 90th percentile of position errors.

    Missed traces should be passed as ``inf``. Quantiles use the "higher"
    rule (no interpolation), which never under-reports.
    """
    e = np.asarray(errors, dtype=float)
    return {
        "n": int(e.size),
        "missed": int(np.sum(~np.isfinite(e))),
        "median": float(np.quantile(e, 0.5, method="higher")),
        "p90": float(np.quantile(e, 0.9, method="higher")),
        "mean_detected": float(e[np.isfinite(e)].mean()) if np.isfinite(e).any() else float("nan"),
        "max_detected": float(e[np.isfinite(e)].max()) if np.isfinite(e).any() else float("nan"),
    }
