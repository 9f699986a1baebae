"""Linear SVM trained by stochastic subgradient descent on the primal.

Objective: ``lam/2 * ||w||^2 + mean(max(0, 1 - y (w.x + b)))`` over
standardized features, step ``1/(lam*t)`` with ``t`` counting updates
across all epochs. The bias is not regularized. After every epoch the full
objective is evaluated and the best iterate seen so far is what gets
returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core import Scaler, fit_scaler
from ..errors import BadHyperparameter, DimensionMismatch, SingleClassDataset

DEFAULT_LAMBDA = 0.01
DEFAULT_EPOCHS = 200
DEFAULT_SEED = 42


@dataclass(frozen=True)
class SvmModel:
    w: np.ndarray
    b: float
    scaler: Scaler
    lam: float
    epochs: int
    objective_trace: tuple = field(default=(), compare=False)

    @property
    def n_features(self):
        return self.w.shape[0]


def objective(w, b, Z, t, lam):
    margins = t * (Z @ w + b)
    return 0.5 * lam * float(w @ w) + float(np.maximum(0.0, 1.0 - margins).mean())


def train_svm(dataset, lam=DEFAULT_LAMBDA, epochs=DEFAULT_EPOCHS, seed=DEFAULT_SEED):
    if not (isinstance(lam, (int, float)) and lam > 0 and np.isfinite(lam)):
        raise BadHyperparameter(f"lambda must be positive, got {lam}")
    if isinstance(epochs, bool) or int(epochs) != epochs or epochs < 1:
        raise BadHyperparameter(f"epochs must be a positive integer, got {epochs}")
    y = dataset.y
    if y.all() or not y.any():
        raise SingleClassDataset("SVM needs both classes present")

    scaler = fit_scaler(dataset)
    Z = scaler.apply(dataset.X)
    t = np.where(y, 1.0, -1.0)
    rows = Z.tolist()
    signs = t.tolist()
    n_feat = Z.shape[1]
    rng = np.random.default_rng(seed)

    # the inner loop runs on plain floats; numpy per-sample overhead dominates
    # for 3-6 dimensional vectors
    w = [0.0] * n_feat
    b = 0.0
    step = 0
    best = (objective(np.zeros(n_feat), 0.0, Z, t, lam), [0.0] * n_feat, 0.0)
    history = []
    for _ in range(int(epochs)):
        for i in rng.permutation(len(rows)).tolist():
            step += 1
            eta = 1.0 / (lam * step)
            x, yi = rows[i], signs[i]
            margin = yi * (sum(wj * xj for wj, xj in zip(w, x)) + b)
            shrink = 1.0 - eta * lam
            if margin < 1.0:
                w = [shrink * wj + eta * yi * xj for wj, xj in zip(w, x)]
                b += eta * yi
            else:
                w = [shrink * wj for wj in w]
        obj = objective(np.array(w), b, Z, t, lam)
        if obj < best[0]:
            best = (obj, list(w), b)
        history.append(best[0])

    return SvmModel(np.array(best[1]), float(best[2]), scaler, float(lam), int(epochs), tuple(history))


def predict_svm(model, v):
    """Return ``(is_entrance, margin)``; a zero margin counts as "no"."""
    v = np.asarray(v, dtype=float)
    if v.shape != (model.n_features,):
        raise DimensionMismatch(f"expected {model.n_features} features, got shape {v.shape}")
    margin = float(model.scaler.apply(v) @ model.w + model.b)
    return margin > 0.0, margin
