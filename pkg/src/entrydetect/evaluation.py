"""Stratified cross-validation, confusion-matrix metrics and the four-way benchmark."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .classifiers import ALGOS, AlgoChoice, predict_many
from .errors import BadHyperparameter, TooFewMinoritySamples

DEFAULT_FOLDS = 5
DEFAULT_CV_SEED = 42
TABLE_COLUMNS = ("algo", "accuracy", "precision", "recall", "f1", "tp", "fp", "fn", "tn")


@dataclass(frozen=True)
class Metrics:
    tp: int
    fp: int
    fn: int
    tn: int

    @classmethod
    def from_predictions(cls, truth, pred):
        truth = np.asarray(truth, dtype=bool)
        pred = np.asarray(pred, dtype=bool)
        return cls(int(np.sum(truth & pred)), int(np.sum(~truth & pred)),
                   int(np.sum(truth & ~pred)), int(np.sum(~truth & ~pred)))

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn

    @property
    def accuracy(self):
        return (self.tp + self.tn) / self.total if self.total else 0.0

    @property
    def precision(self):
        d = self.tp + self.fp
        return self.tp / d if d else 0.0

    @property
    def recall(self):
        d = self.tp + self.fn
        return self.tp / d if d else 0.0

    @property
    def f1(self):
        d = 2 * self.tp + self.fp + self.fn
        return 2 * self.tp / d if d else 0.0

    def as_row(self):
        return {"accuracy": self.accuracy, "precision": self.precision, "recall": self.recall,
                "f1": self.f1, **asdict(self)}

    def __add__(self, other):
        return Metrics(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn)


@dataclass(frozen=True)
class CvConfig:
    folds: int = DEFAULT_FOLDS
    seed: int = DEFAULT_CV_SEED
    stratified: bool = True


def stratified_kfold(dataset, config=CvConfig()):
    """Return ``[(train_idx, test_idx), ...]``.

    Each class (negatives first) is shuffled by one seeded generator and
    dealt round-robin into the folds; the deal counter carries over from
    one class to the next so fold sizes also differ by at most one.
    """
    k = config.folds
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise BadHyperparameter(f"folds must be an integer >= 2, got {k}")
    y = np.asarray(dataset.y, dtype=bool)
    minority = min(int(y.sum()), int((~y).sum()))
    if k > minority:
        raise TooFewMinoritySamples(f"{k} folds but only {minority} samples in the minority class")

    rng = np.random.default_rng(config.seed)
    assignment = np.empty(len(y), dtype=int)
    dealt = 0
    for cls in (False, True):
        idx = np.flatnonzero(y == cls)
        idx = idx[rng.permutation(len(idx))]
        assignment[idx] = (dealt + np.arange(len(idx))) % k
        dealt += len(idx)

    all_idx = np.arange(len(y))
    return [(all_idx[assignment != f], all_idx[assignment == f]) for f in range(k)]


def _run_fold(algo, dataset, train_idx, test_idx):
    model = algo.train(dataset.subset(train_idx))
    pred = predict_many(model, dataset.X[test_idx])
    return Metrics.from_predictions(dataset.y[test_idx], pred)


def evaluate(algo, dataset, config=CvConfig(), workers=1):
    """Pooled cross-validated metrics.

    Scalers live inside the models, so each fold's standardization sees only
    its own training rows.
    """
    if isinstance(algo, str):
        algo = AlgoChoice(algo)
    folds = stratified_kfold(dataset, config)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda f: _run_fold(algo, dataset, *f), folds))
    else:
        parts = [_run_fold(algo, dataset, *f) for f in folds]
    total = Metrics(0, 0, 0, 0)
    for m in parts:
        total = total + m
    return total


def benchmark_all(dataset, config=CvConfig(), workers=1):
    """All four classifiers with default hyperparameters, rows in knn, svm, nb, tree order."""
    return [(name, evaluate(AlgoChoice(name), dataset, config, workers)) for name in ALGOS]


def table_to_csv(rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for name, m in rows:
        r = m.as_row()
        writer.writerow([name] + [repr(r[c]) if isinstance(r[c], float) else r[c]
                                  for c in TABLE_COLUMNS[1:]])
    return out.getvalue()


def table_to_json(rows):
    return json.dumps([{"algo": name, **m.as_row()} for name, m in rows], indent=1) + "\n"
