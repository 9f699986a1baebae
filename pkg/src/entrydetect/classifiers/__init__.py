"""The four entrance classifiers and a name-based dispatch layer."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnknownAlgo
from .knn import DEFAULT_K, KnnModel, predict_knn, train_knn
from .nb import NaiveBayesModel, predict_nb, train_nb
from .svm import DEFAULT_EPOCHS, DEFAULT_LAMBDA, DEFAULT_SEED, SvmModel, predict_svm, train_svm
from .tree import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MIN_LEAF,
    Node,
    Rule,
    TreeModel,
    apply_tree,
    extract_rules,
    parse_rule,
    predict_tree,
    train_tree,
)

# benchmark row order
ALGOS = ("knn", "svm", "nb", "tree")

DEFAULT_PARAMS = {
    "knn": {"k": DEFAULT_K},
    "svm": {"lam": DEFAULT_LAMBDA, "epochs": DEFAULT_EPOCHS, "seed": DEFAULT_SEED},
    "nb": {},
    "tree": {"max_depth": DEFAULT_MAX_DEPTH, "min_samples_leaf": DEFAULT_MIN_LEAF},
}

_TRAIN = {"knn": train_knn, "svm": train_svm, "nb": train_nb, "tree": train_tree}
_MODEL_ALGO = {KnnModel: "knn", SvmModel: "svm", NaiveBayesModel: "nb", TreeModel: "tree"}


@dataclass(frozen=True)
class AlgoChoice:
    """A classifier name plus hyperparameters, filled from defaults."""

    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in _TRAIN:
            raise UnknownAlgo(f"unknown algorithm {self.name!r}")
        unknown = set(self.params) - set(DEFAULT_PARAMS[self.name])
        if unknown:
            raise TypeError(f"{self.name} does not take {sorted(unknown)}")
        object.__setattr__(self, "params", {**DEFAULT_PARAMS[self.name], **self.params})

    def train(self, dataset):
        return _TRAIN[self.name](dataset, **self.params)


def train(algo, dataset, **params):
    return AlgoChoice(algo, params).train(dataset)


def algo_of(model):
    try:
        return _MODEL_ALGO[type(model)]
    except KeyError:
        raise UnknownAlgo(f"not a trained model: {type(model).__name__}") from None


def predict(model, v):
    """Binary entrance decision for one feature vector, whatever the model type."""
    algo = algo_of(model)
    if algo == "knn":
        return predict_knn(model, v)[0]
    if algo == "svm":
        return predict_svm(model, v)[0]
    if algo == "nb":
        return predict_nb(model, v)[0]
    return predict_tree(model, v)


def predict_many(model, X):
    return [predict(model, x) for x in X]


__all__ = [
    "ALGOS", "DEFAULT_PARAMS", "AlgoChoice", "KnnModel", "NaiveBayesModel", "Node", "Rule",
    "SvmModel", "TreeModel", "algo_of", "apply_tree", "extract_rules", "parse_rule", "predict",
    "predict_knn", "predict_many", "predict_nb", "predict_svm", "predict_tree", "train",
    "train_knn", "train_nb", "train_svm", "train_tree",
]
