from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, SingleClassDataset

VAR_FLOOR_REL = 1e-2
VAR_FLOOR_ABS = 1e-9


@dataclass(frozen=True)
class NaiveBayesModel:
    """Gaussian naive Bayes over raw features.

    Arrays are indexed by class: row 0 is "no entrance", row 1 is "entrance".
    """

    log_priors: np.ndarray   # (2,)
    means: np.ndarray        # (2, n_features)
    variances: np.ndarray    # (2, n_features)

    @property
    def n_features(self):
        return self.means.shape[1]


def train_nb(dataset):
    X, y = dataset.X, dataset.y
    if y.all() or not y.any():
        raise SingleClassDataset("naive Bayes needs both classes present")
    floor = np.maximum(VAR_FLOOR_ABS, VAR_FLOOR_REL * X.var(axis=0))
    priors, means, variances = [], [], []
    for cls in (False, True):
        part = X[y == cls]
        priors.append(len(part) / len(X))
        means.append(part.mean(axis=0))
        variances.append(np.maximum(part.var(axis=0), floor))
    return NaiveBayesModel(np.log(priors), np.array(means), np.array(variances))


def predict_nb(model, v):
    """Return ``(is_entrance, (log_post_no, log_post_yes))``, unnormalized.

    An exact tie goes to "no entrance".
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (model.n_features,):
        raise DimensionMismatch(f"expected {model.n_features} features, got shape {v.shape}")
    log_lik = -0.5 * (np.log(2 * math.pi * model.variances) + (v - model.means) ** 2 / model.variances)
    post = model.log_priors + log_lik.sum(axis=1)
    return bool(post[1] > post[0]), (float(post[0]), float(post[1]))
