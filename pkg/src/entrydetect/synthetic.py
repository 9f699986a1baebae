"""Synthetic approach walks.

Mean curves:

* Wi-Fi RSS follows log-distance path loss from a single access point
  placed inside the building, clamped at 1 m.
* GPS SNR and satellite count follow a logistic step centred on the
  entrance plane, so the value at ``d = 0`` is exactly the midpoint of the
  indoor and outdoor asymptotes.

Per-trace noise streams come from :func:`derive_seed`, a SplitMix64 mix of
``(seed, trace_index)``. The rule is part of the reproducibility contract
and must not change.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    DEFAULT_RADIUS,
    Label,
    RSS_RANGE,
    SNR_RANGE,
    SensorReading,
    Trace,
    dataset_from_traces,
    label_from_distance,
)
from .errors import InvalidSpec, NonpositiveRadius

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SignalModelParams:
    rss_p1_dbm: float = -30.0
    rss_exponent: float = 2.2
    ap_distance_m: float = -6.0
    snr_out_db: float = 33.0
    snr_in_db: float = 14.0
    sats_out: float = 20.0
    sats_in: float = 4.0
    transition_w_m: float = 2.0
    noise_rss_db: float = 3.0
    noise_snr_db: float = 3.0
    noise_sats: float = 2.0

    def validate(self):
        problems = []
        if not self.snr_out_db > self.snr_in_db >= 0:
            problems.append("need snr_out_db > snr_in_db >= 0")
        if not self.sats_out > self.sats_in >= 0:
            problems.append("need sats_out > sats_in >= 0")
        if not self.rss_exponent > 0:
            problems.append("rss_exponent must be positive")
        if not self.transition_w_m > 0:
            problems.append("transition_w_m must be positive")
        if not min(self.noise_rss_db, self.noise_snr_db, self.noise_sats) >= 0:
            problems.append("noise stds must be non-negative")
        if not self.ap_distance_m < 0:
            problems.append("ap_distance_m must be negative (inside)")
        if problems:
            raise InvalidSpec("; ".join(problems))
        return self

    def noiseless(self):
        return replace(self, noise_rss_db=0.0, noise_snr_db=0.0, noise_sats=0.0)


@dataclass(frozen=True)
class TrajectorySpec:
    start_m: float = 10.0
    end_m: float = -4.0
    step_m: float = 0.5

    def validate(self):
        if not self.step_m > 0:
            raise InvalidSpec(f"step_m must be positive, got {self.step_m}")
        if not self.start_m > self.end_m:
            raise InvalidSpec("start_m must exceed end_m")
        return self

    def positions(self):
        self.validate()
        # tolerance keeps the end point when (start - end) / step is integral
        n = int(math.floor((self.start_m - self.end_m) / self.step_m + 1e-9)) + 1
        return self.start_m - self.step_m * np.arange(n)


def _logistic(x):
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def round_half_away(x):
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def expected_rss(params, d):
    gap = max(abs(d - params.ap_distance_m), 1.0)
    return params.rss_p1_dbm - 10.0 * params.rss_exponent * math.log10(gap)


def expected_snr(params, d):
    return params.snr_in_db + (params.snr_out_db - params.snr_in_db) * _logistic(d / params.transition_w_m)


def expected_sats_real(params, d):
    """Satellite mean before rounding."""
    return params.sats_in + (params.sats_out - params.sats_in) * _logistic(d / params.transition_w_m)


def expected_sats(params, d):
    return round_half_away(expected_sats_real(params, d))


def derive_seed(seed, index):
    """SplitMix64 finalizer of ``seed * 0x9E3779B97F4A7C15 + index + 1`` (mod 2**64)."""
    z = (int(seed) * 0x9E3779B97F4A7C15 + int(index) + 1) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def gen_trace(params=None, spec=None, radius=DEFAULT_RADIUS, seed=0, trace_id=None):
    params = (params or SignalModelParams()).validate()
    spec = (spec or TrajectorySpec()).validate()
    if not radius > 0:
        raise NonpositiveRadius(f"radius must be positive, got {radius}")
    if int(seed) < 0:
        raise InvalidSpec("seed must be non-negative")

    rng = np.random.default_rng(int(seed))
    positions = spec.positions()
    # one standard-normal triple per reading, drawn regardless of the noise
    # stds so zero-noise runs consume the same stream
    z = rng.standard_normal((len(positions), 3))

    readings = []
    for d, (z_snr, z_rss, z_sats) in zip(positions, z):
        d = float(d)
        snr = min(max(expected_snr(params, d) + params.noise_snr_db * z_snr, SNR_RANGE[0]), SNR_RANGE[1])
        rss = min(max(expected_rss(params, d) + params.noise_rss_db * z_rss, RSS_RANGE[0]), RSS_RANGE[1])
        sats = max(0, round_half_away(expected_sats_real(params, d) + params.noise_sats * z_sats))
        label = label_from_distance(d, radius)
        readings.append(SensorReading(sats, float(snr), float(rss), d, label is Label.ENTRANCE, label))
    return Trace(readings, trace_id if trace_id is not None else f"seed-{seed}")


def gen_traces(params=None, spec=None, radius=DEFAULT_RADIUS, n_traces=1, seed=0, workers=1):
    if n_traces < 1:
        raise InvalidSpec(f"n_traces must be >= 1, got {n_traces}")

    def one(i):
        return gen_trace(params, spec, radius, derive_seed(seed, i), trace_id=f"trace-{i}")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, range(n_traces)))
    return [one(i) for i in range(n_traces)]


def gen_dataset(params=None, spec=None, radius=DEFAULT_RADIUS, n_traces=1, seed=0, workers=1):
    """Generate ``n_traces`` walks and pool their raw features into one dataset."""
    traces = gen_traces(params, spec, radius, n_traces, seed, workers)
    return traces, dataset_from_traces(traces)
