"""JSON model documents (``*.model.json``).

Every document carries ``format_version``, ``algo`` and ``scaler`` (null for
the models that work on raw features). Floats are written with ``repr``
precision, so a load after a save reproduces every prediction bit for bit.
Unknown fields are rejected.
"""

from __future__ import annotations

import json

import numpy as np

from ..core import Scaler
from ..errors import MalformedDocument, UnknownAlgo, VersionMismatch
from . import algo_of
from .knn import KnnModel
from .nb import NaiveBayesModel
from .svm import SvmModel
from .tree import Node, TreeModel

FORMAT_VERSION = 1

_FIELDS = {
    "knn": {"k", "n_features", "rows", "targets"},
    "nb": {"n_features", "log_priors", "means", "variances"},
    "svm": {"n_features", "w", "b", "lambda", "epochs"},
    "tree": {"n_features", "max_depth", "min_samples_leaf", "root"},
}
_COMMON = {"format_version", "algo", "scaler"}


def _node_to_dict(node):
    if node.is_leaf:
        return {"counts": list(node.counts)}
    return {
        "counts": list(node.counts),
        "feature": node.feature,
        "threshold": node.threshold,
        "left": _node_to_dict(node.left),
        "right": _node_to_dict(node.right),
    }


def _node_from_dict(d):
    if set(d) == {"counts"}:
        return Node(_counts(d["counts"]))
    if set(d) != {"counts", "feature", "threshold", "left", "right"}:
        raise MalformedDocument(f"bad tree node fields {sorted(d)}")
    thr = float(d["threshold"])
    if not np.isfinite(thr):
        raise MalformedDocument("tree threshold must be finite")
    return Node(_counts(d["counts"]), int(d["feature"]), thr,
                _node_from_dict(d["left"]), _node_from_dict(d["right"]))


def _counts(c):
    no, yes = (int(x) for x in c)
    if no < 0 or yes < 0 or no + yes == 0:
        raise MalformedDocument(f"bad leaf counts {c}")
    return no, yes


def model_to_dict(model):
    algo = algo_of(model)
    doc = {"format_version": FORMAT_VERSION, "algo": algo, "scaler": None}
    if algo == "knn":
        doc.update(scaler=model.scaler.to_dict(), k=model.k, n_features=model.n_features,
                   rows=model.rows.tolist(), targets=[bool(t) for t in model.targets])
    elif algo == "nb":
        doc.update(n_features=model.n_features, log_priors=model.log_priors.tolist(),
                   means=model.means.tolist(), variances=model.variances.tolist())
    elif algo == "svm":
        doc.update(scaler=model.scaler.to_dict(), n_features=model.n_features,
                   w=model.w.tolist(), b=model.b, epochs=model.epochs)
        doc["lambda"] = model.lam
    else:
        doc.update(n_features=model.n_features, max_depth=model.max_depth,
                   min_samples_leaf=model.min_samples_leaf, root=_node_to_dict(model.root))
    return doc


def save_model(model):
    return json.dumps(model_to_dict(model), indent=1) + "\n"


def _array(values, shape):
    arr = np.array(values, dtype=float)
    if arr.shape != shape or not np.all(np.isfinite(arr)):
        raise MalformedDocument(f"expected a finite array of shape {shape}")
    return arr


def model_from_dict(doc):
    if not isinstance(doc, dict):
        raise MalformedDocument("model document must be a JSON object")
    if "format_version" not in doc:
        raise MalformedDocument("missing format_version")
    if doc["format_version"] != FORMAT_VERSION:
        raise VersionMismatch(f"format_version {doc['format_version']!r}, expected {FORMAT_VERSION}")
    algo = doc.get("algo")
    if algo not in _FIELDS:
        raise UnknownAlgo(f"unknown algo {algo!r}")
    expected = _COMMON | _FIELDS[algo]
    if set(doc) != expected:
        extra, missing = sorted(set(doc) - expected), sorted(expected - set(doc))
        raise MalformedDocument(f"{algo} document: unexpected {extra}, missing {missing}")

    n = int(doc["n_features"])
    if algo == "knn":
        scaler = Scaler.from_dict(doc["scaler"])
        targets = np.array(doc["targets"], dtype=bool)
        rows = _array(doc["rows"], (len(targets), n))
        rows.setflags(write=False)
        return KnnModel(int(doc["k"]), scaler, rows, targets)
    if algo == "nb":
        return NaiveBayesModel(_array(doc["log_priors"], (2,)), _array(doc["means"], (2, n)),
                               _array(doc["variances"], (2, n)))
    if algo == "svm":
        return SvmModel(_array(doc["w"], (n,)), float(doc["b"]), Scaler.from_dict(doc["scaler"]),
                        float(doc["lambda"]), int(doc["epochs"]))
    if doc["scaler"] is not None:
        raise MalformedDocument("tree models carry no scaler")
    return TreeModel(_node_from_dict(doc["root"]), n, int(doc["max_depth"]),
                     int(doc["min_samples_leaf"]))


def load_model(text):
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from None
    try:
        return model_from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (MalformedDocument, UnknownAlgo, VersionMismatch)):
            raise
        raise MalformedDocument(str(exc)) from None
