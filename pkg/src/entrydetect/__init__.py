"""Entrance-position detection from GPS signal quality and Wi-Fi RSS."""

from .core import (
    Dataset,
    Label,
    Scaler,
    SensorReading,
    Trace,
    apply_scaler,
    dataset_from_readings,
    dataset_from_traces,
    features_raw,
    features_windowed,
    fit_scaler,
    label_from_distance,
    parse_csv,
    split_traces,
    write_csv,
)
from .estimator import DetectionResult, classify_trace, estimate_entrance, smooth
from .evaluation import CvConfig, Metrics, benchmark_all, evaluate, stratified_kfold
from .synthetic import SignalModelParams, TrajectorySpec, gen_dataset, gen_trace

__version__ = "0.1.0"
