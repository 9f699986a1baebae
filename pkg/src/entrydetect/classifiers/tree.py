"""CART classification tree (Gini) and rule extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import FEATURE_NAMES, format_number
from ..errors import BadHyperparameter, DimensionMismatch, EmptyDataset

DEFAULT_MAX_DEPTH = 4
DEFAULT_MIN_LEAF = 1


@dataclass(frozen=True)
class Node:
    counts: tuple[int, int]          # (no, yes) training rows reaching this node
    feature: int | None = None
    threshold: float | None = None
    left: Node | None = None         # value <= threshold
    right: Node | None = None

    @property
    def is_leaf(self):
        return self.feature is None

    @property
    def majority(self):
        return self.counts[1] > self.counts[0]


@dataclass(frozen=True)
class TreeModel:
    root: Node
    n_features: int
    max_depth: int
    min_samples_leaf: int

    def leaves(self):
        """Leaves in left-first preorder; a leaf's position is its id."""
        out, stack = [], [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node)
            else:
                stack.append(node.right)
                stack.append(node.left)
        return out

    def depth(self):
        def walk(node):
            return 0 if node.is_leaf else 1 + max(walk(node.left), walk(node.right))
        return walk(self.root)


def _best_split(X, y, min_leaf):
    """Exhaustive midpoint search.

    Returns ``(feature, threshold)`` or None. Scores are compared exactly as
    rationals so that equal Gini decreases tie-break deterministically to
    the lower feature index and then the lower threshold.
    """
    n = len(y)
    n_yes = int(y.sum())
    # maximizing sum_child (sum_c count_c^2) / n_child == maximizing Gini decrease
    best_num, best_den = n_yes ** 2 + (n - n_yes) ** 2, n
    best = None
    for j in range(X.shape[1]):
        order = np.argsort(X[:, j], kind="stable")
        vals = X[order, j]
        cum_yes = np.cumsum(y[order]).tolist()
        vals_l = vals.tolist()
        for i in range(min_leaf - 1, n - min_leaf):
            a, b = vals_l[i], vals_l[i + 1]
            if a == b:
                continue
            nl, nr = i + 1, n - i - 1
            ly = cum_yes[i]
            ry = n_yes - ly
            num = (ly * ly + (nl - ly) ** 2) * nr + (ry * ry + (nr - ry) ** 2) * nl
            den = nl * nr
            if num * best_den > best_num * den:
                best_num, best_den = num, den
                mid = (a + b) / 2.0
                if not a <= mid < b:
                    mid = a
                best = (j, mid)
    return best


def train_tree(dataset, max_depth=DEFAULT_MAX_DEPTH, min_samples_leaf=DEFAULT_MIN_LEAF):
    if dataset is None or len(dataset) == 0:
        raise EmptyDataset("tree needs training rows")
    if isinstance(max_depth, bool) or int(max_depth) != max_depth or max_depth < 1:
        raise BadHyperparameter(f"max_depth must be >= 1, got {max_depth}")
    if isinstance(min_samples_leaf, bool) or int(min_samples_leaf) != min_samples_leaf or min_samples_leaf < 1:
        raise BadHyperparameter(f"min_samples_leaf must be >= 1, got {min_samples_leaf}")

    def grow(X, y, depth):
        n_yes = int(y.sum())
        counts = (len(y) - n_yes, n_yes)
        if n_yes in (0, len(y)) or depth >= max_depth or len(y) < 2 * min_samples_leaf:
            return Node(counts)
        split = _best_split(X, y, int(min_samples_leaf))
        if split is None:
            return Node(counts)
        j, thr = split
        mask = X[:, j] <= thr
        return Node(counts, j, thr,
                    grow(X[mask], y[mask], depth + 1),
                    grow(X[~mask], y[~mask], depth + 1))

    root = grow(dataset.X, dataset.y.astype(int), 0)
    return TreeModel(root, dataset.n_features, int(max_depth), int(min_samples_leaf))


def _check(model, v):
    v = np.asarray(v, dtype=float)
    if v.shape != (model.n_features,):
        raise DimensionMismatch(f"expected {model.n_features} features, got shape {v.shape}")
    return v


def apply_tree(model, v):
    """Index of the leaf that ``v`` lands in (see :meth:`TreeModel.leaves`)."""
    v = _check(model, v)
    leaf_id = 0
    node = model.root
    while not node.is_leaf:
        if v[node.feature] <= node.threshold:
            node = node.left
        else:
            leaf_id += _count_leaves(node.left)
            node = node.right
    return leaf_id


def _count_leaves(node):
    return 1 if node.is_leaf else _count_leaves(node.left) + _count_leaves(node.right)


def predict_tree(model, v):
    v = _check(model, v)
    node = model.root
    while not node.is_leaf:
        node = node.left if v[node.feature] <= node.threshold else node.right
    return node.majority


@dataclass(frozen=True)
class Rule:
    """Conjunction of ``(feature, op, threshold)`` literals ending in an Entrance leaf."""

    conditions: tuple[tuple[int, str, float], ...]
    leaf_id: int
    counts: tuple[int, int]

    def matches(self, v):
        for j, op, thr in self.conditions:
            if (v[j] <= thr) != (op == "<="):
                return False
        return True

    def render(self, names=FEATURE_NAMES):
        sym = {"<=": "≤", ">": ">"}
        if not self.conditions:
            return "always → Entrance"
        lits = [f"{names[j]} {sym[op]} {format_number(thr)}" for j, op, thr in self.conditions]
        return " and ".join(lits) + " → Entrance"

    def __str__(self):
        return self.render()


def extract_rules(model):
    """One rule per leaf whose majority class is Entrance, literals ordered root to leaf."""
    rules = []

    def walk(node, path, leaf_id):
        if node.is_leaf:
            if node.majority:
                rules.append(Rule(tuple(path), leaf_id, node.counts))
            return leaf_id + 1
        leaf_id = walk(node.left, path + [(node.feature, "<=", node.threshold)], leaf_id)
        return walk(node.right, path + [(node.feature, ">", node.threshold)], leaf_id)

    walk(model.root, [], 0)
    return rules


def parse_rule(text, names=FEATURE_NAMES):
    """Inverse of :meth:`Rule.render`; returns the condition tuple."""
    body, sep, head = text.rpartition("→")
    if not sep or head.strip() != "Entrance":
        raise ValueError(f"not a rule: {text!r}")
    body = body.strip()
    if body == "always":
        return ()
    conditions = []
    for lit in body.split(" and "):
        name, op, thr = lit.split()
        conditions.append((names.index(name), {"≤": "<=", ">": ">"}[op], float(thr)))
    return tuple(conditions)
