from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Scaler, fit_scaler
from ..errors import BadK, DimensionMismatch, EmptyDataset

DEFAULT_K = 5


@dataclass(frozen=True)
class KnnModel:
    k: int
    scaler: Scaler
    rows: np.ndarray      # standardized training rows
    targets: np.ndarray

    @property
    def n_features(self):
        return self.rows.shape[1]


def train_knn(dataset, k=DEFAULT_K):
    if dataset is None or len(dataset) == 0:
        raise EmptyDataset("kNN needs training rows")
    if isinstance(k, bool) or int(k) != k or k < 1 or k % 2 == 0:
        raise BadK(f"k must be a positive odd integer, got {k}")
    if k > len(dataset):
        raise BadK(f"k={k} exceeds the {len(dataset)} training rows")
    scaler = fit_scaler(dataset)
    rows = scaler.apply(dataset.X)
    rows.setflags(write=False)
    return KnnModel(int(k), scaler, rows, dataset.y.copy())


def predict_knn(model, v):
    """Return ``(is_entrance, (yes_votes, no_votes))``.

    Neighbours are ranked by standardized Euclidean distance, ties going to
    the earlier training row.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (model.n_features,):
        raise DimensionMismatch(f"expected {model.n_features} features, got shape {v.shape}")
    z = model.scaler.apply(v)
    dist = np.sqrt(((model.rows - z) ** 2).sum(axis=1))
    nearest = np.argsort(dist, kind="stable")[: model.k]
    yes = int(model.targets[nearest].sum())
    no = model.k - yes
    return yes > no, (yes, no)
