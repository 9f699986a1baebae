import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entrydetect import Dataset
from entrydetect.classifiers import (
    Node,
    Rule,
    TreeModel,
    apply_tree,
    extract_rules,
    parse_rule,
    predict_tree,
    train_tree,
)
from entrydetect.errors import BadHyperparameter, DimensionMismatch, EmptyDataset

from .conftest import random_queries
from .oracles import rules_predict, tree_as_tuples, tree_bruteforce


def accuracy(model, ds):
    return np.mean([predict_tree(model, x) == t for x, t in zip(ds.X, ds.y)])


def test_table1_depth3_perfect(table1):
    m = train_tree(table1, max_depth=3)
    assert accuracy(m, table1) == 1.0
    assert predict_tree(m, [9, 19, -54]) is True


def test_table1_depth1_split(table1):
    m = train_tree(table1, max_depth=1)
    # three splits tie on Gini decrease; the lowest feature index wins
    assert (m.root.feature, m.root.threshold) == (0, 11.5)
    assert m.root.left.counts == (2, 1)
    assert m.root.right.counts == (4, 0)
    assert predict_tree(m, [20, 30, -60]) is False
    assert m.depth() == 1


@pytest.mark.parametrize("depth", [1, 2, 3, 4])
def test_matches_bruteforce_table1(table1, depth):
    m = train_tree(table1, max_depth=depth)
    assert tree_as_tuples(m.root) == tree_bruteforce(table1.X.tolist(), table1.y.tolist(), depth)


@pytest.mark.parametrize("depth,min_leaf", [(2, 1), (3, 5), (4, 1)])
def test_matches_bruteforce_synthetic(synth200, depth, min_leaf):
    ds = synth200.subset(np.arange(80))
    m = train_tree(ds, max_depth=depth, min_samples_leaf=min_leaf)
    assert tree_as_tuples(m.root) == tree_bruteforce(ds.X.tolist(), ds.y.tolist(), depth, min_leaf)


def test_pure_input_single_leaf():
    m = train_tree(Dataset([[1.0, 2, 3], [4.0, 5, 6]], [True, True]))
    assert m.root.is_leaf
    assert predict_tree(m, [100, 100, 100]) is True


def test_threshold_goes_left():
    left, right = Node((0, 1)), Node((1, 0))
    m = TreeModel(Node((1, 1), 0, 2.5, left, right), 3, 1, 1)
    assert predict_tree(m, [2.5, 0, 0]) is True
    assert predict_tree(m, [np.nextafter(2.5, 3), 0, 0]) is False


def test_leaf_tie_predicts_no():
    m = TreeModel(Node((2, 2)), 3, 1, 1)
    assert predict_tree(m, [0, 0, 0]) is False


def test_leaf_size_and_depth_limits(synth200):
    m = train_tree(synth200, max_depth=3, min_samples_leaf=10)
    assert m.depth() <= 3
    assert all(sum(leaf.counts) >= 10 for leaf in m.leaves())


@pytest.mark.parametrize("kwargs", [{"max_depth": 0}, {"min_samples_leaf": 0}, {"max_depth": 1.5}])
def test_bad_hyperparameters(table1, kwargs):
    with pytest.raises(BadHyperparameter):
        train_tree(table1, **kwargs)


def test_empty():
    with pytest.raises(EmptyDataset):
        train_tree(None)


def test_dimension_mismatch(table1):
    with pytest.raises(DimensionMismatch):
        predict_tree(train_tree(table1), [1, 2])


def test_depth_monotone_accuracy(synth200):
    accs = [accuracy(train_tree(synth200, max_depth=d), synth200) for d in range(1, 8)]
    assert all(a <= b for a, b in zip(accs, accs[1:]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_depth_monotone_accuracy_random(seed):
    rng = np.random.default_rng(seed)
    X = rng.integers(0, 5, size=(40, 3)).astype(float)
    y = rng.random(40) < 0.4
    if y.all() or not y.any():
        y[0] = not y[0]
    ds = Dataset(X, y)
    accs = [accuracy(train_tree(ds, max_depth=d), ds) for d in range(1, 6)]
    assert all(a <= b for a, b in zip(accs, accs[1:]))


def test_rule_template_shape():
    m = TreeModel(Node((6, 1), 0, 9.5, Node((0, 1)), Node((6, 0))), 3, 1, 1)
    (rule,) = extract_rules(m)
    assert str(rule) == "num_satellites ≤ 9.5 → Entrance"
    assert parse_rule(str(rule)) == rule.conditions


def test_no_entrance_leaf_no_rules():
    assert extract_rules(TreeModel(Node((3, 0)), 3, 1, 1)) == []


@pytest.mark.parametrize("depth", [2, 3])
def test_table1_rules_replay(table1, depth):
    m = train_tree(table1, max_depth=depth)
    rules = extract_rules(m)
    if depth == 3:
        assert rules
    for rule in rules:
        for x in table1.X:
            assert rule.matches(x) == (apply_tree(m, x) == rule.leaf_id)
            assert Rule(parse_rule(str(rule)), rule.leaf_id, rule.counts).matches(x) == rule.matches(x)


def test_rules_ordered_root_to_leaf(table1):
    m = train_tree(table1, max_depth=3)
    for rule in extract_rules(m):
        node = m.root
        for j, op, thr in rule.conditions:
            assert (node.feature, node.threshold) == (j, thr)
            node = node.left if op == "<=" else node.right
        assert node.is_leaf and node.majority


def test_agrees_with_rule_replay(table1, synth200):
    for ds, depth in ((table1, 3), (synth200, 4), (synth200, 6)):
        m = train_tree(ds, max_depth=depth)
        rules = extract_rules(m)
        for q in random_queries(ds, 200, seed=depth):
            assert predict_tree(m, q) == rules_predict(rules, q)


def test_leaf_ids(synth200):
    m = train_tree(synth200, max_depth=4)
    leaves = m.leaves()
    for x in synth200.X:
        leaf = leaves[apply_tree(m, x)]
        node = m.root
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        assert node is leaf
