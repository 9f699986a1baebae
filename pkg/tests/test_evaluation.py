import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entrydetect import Dataset
from entrydetect.classifiers import AlgoChoice
from entrydetect.errors import BadHyperparameter, TooFewMinoritySamples
from entrydetect.evaluation import (
    CvConfig,
    Metrics,
    benchmark_all,
    evaluate,
    stratified_kfold,
    table_to_csv,
    table_to_json,
)


def imbalanced(n=100, pos=20):
    X = np.arange(3 * n, dtype=float).reshape(n, 3)
    y = np.zeros(n, dtype=bool)
    y[np.random.default_rng(0).choice(n, pos, replace=False)] = True
    return Dataset(X, y)


def test_kfold_exact_class_counts():
    ds = imbalanced()
    folds = stratified_kfold(ds, CvConfig(5, 42))
    assert len(folds) == 5
    for train, test in folds:
        assert ds.y[test].sum() == 4
        assert (~ds.y[test]).sum() == 16
        assert len(train) == 80


@given(st.integers(2, 60), st.integers(2, 80), st.integers(2, 10), st.integers(0, 2**32))
def test_kfold_partition_property(pos, neg, k, seed):
    if k > min(pos, neg):
        return
    y = np.array([True] * pos + [False] * neg)
    ds = Dataset(np.zeros((len(y), 3)), y)
    folds = stratified_kfold(ds, CvConfig(k, seed))
    tests = np.concatenate([t for _, t in folds])
    assert sorted(tests.tolist()) == list(range(len(y)))
    for train, test in folds:
        assert not set(train) & set(test)
        assert len(train) + len(test) == len(y)
        assert abs(y[test].sum() - pos / k) < 1
        assert abs((~y[test]).sum() - neg / k) < 1


def test_kfold_too_few_minority():
    ds = Dataset(np.zeros((5, 3)), [True, False, False, False, False])
    with pytest.raises(TooFewMinoritySamples):
        stratified_kfold(ds, CvConfig(2, 0))


def test_kfold_bad_fold_count():
    with pytest.raises(BadHyperparameter):
        stratified_kfold(imbalanced(), CvConfig(1, 0))


def test_kfold_determinism():
    a = stratified_kfold(imbalanced(), CvConfig(5, 7))
    b = stratified_kfold(imbalanced(), CvConfig(5, 7))
    c = stratified_kfold(imbalanced(), CvConfig(5, 8))
    assert all(np.array_equal(x[1], y[1]) for x, y in zip(a, b))
    assert not all(np.array_equal(x[1], y[1]) for x, y in zip(a, c))


def test_metrics_perfect():
    m = Metrics.from_predictions([True, False, True], [True, False, True])
    assert (m.accuracy, m.precision, m.recall, m.f1) == (1, 1, 1, 1)


def test_metrics_constant_false():
    truth = [True] * 20 + [False] * 80
    m = Metrics.from_predictions(truth, [False] * 100)
    assert m.accuracy == 0.8
    assert m.recall == 0 and m.precision == 0 and m.f1 == 0
    assert (m.tp, m.fp, m.fn, m.tn) == (0, 0, 20, 80)


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_metric_identities(tp, fp, fn, tn):
    m = Metrics(tp, fp, fn, tn)
    total = tp + fp + fn + tn
    assert m.accuracy == (float(Fraction(tp + tn, total)) if total else 0.0)
    assert m.precision == (float(Fraction(tp, tp + fp)) if tp + fp else 0.0)
    assert m.recall == (float(Fraction(tp, tp + fn)) if tp + fn else 0.0)
    p, r = Fraction(tp, tp + fp) if tp + fp else 0, Fraction(tp, tp + fn) if tp + fn else 0
    assert m.f1 == pytest.approx(float(2 * p * r / (p + r)) if p + r else 0.0, abs=1e-15)
    for v in (m.accuracy, m.precision, m.recall, m.f1):
        assert 0 <= v <= 1


def test_evaluate_with_separable_threshold_data():
    # feature 0 equals the label, so a depth-1 tree is perfect
    y = np.array([True] * 10 + [False] * 30)
    ds = Dataset(np.column_stack([y.astype(float), np.arange(40.0), np.zeros(40)]), y)
    m = evaluate(AlgoChoice("tree", {"max_depth": 1}), ds, CvConfig(5, 1))
    assert m.accuracy == 1.0 and m.total == 40


def test_no_leakage_scaler_depends_on_train_rows_only(synth200):
    cfg = CvConfig(5, 42)
    folds = stratified_kfold(synth200, cfg)
    train_idx, test_idx = folds[0]
    model = AlgoChoice("knn").train(synth200.subset(train_idx))
    X = synth200.X.copy()
    X[test_idx] += 1000.0
    perturbed = Dataset(X, synth200.y)
    model2 = AlgoChoice("knn").train(perturbed.subset(stratified_kfold(perturbed, cfg)[0][0]))
    assert model.scaler.means.tolist() == model2.scaler.means.tolist()
    assert model.scaler.stds.tolist() == model2.scaler.stds.tolist()


def test_evaluate_parallel_equals_sequential(synth200):
    algo = AlgoChoice("svm", {"epochs": 3})
    assert evaluate(algo, synth200, workers=4) == evaluate(algo, synth200)


def test_benchmark_rows_and_determinism(synth200):
    ds = synth200
    fast = CvConfig(5, 42)
    rows = benchmark_all(ds, fast)
    assert [name for name, _ in rows] == ["knn", "svm", "nb", "tree"]
    assert all(m.total == len(ds) for _, m in rows)
    assert table_to_csv(rows) == table_to_csv(benchmark_all(ds, fast))


def test_table_formats():
    rows = [("knn", Metrics(4, 1, 1, 14))]
    text = table_to_csv(rows)
    assert text.splitlines()[0] == "algo,accuracy,precision,recall,f1,tp,fp,fn,tn"
    assert text.splitlines()[1] == "knn,0.9,0.8,0.8,0.8,4,1,1,14"
    (rec,) = json.loads(table_to_json(rows))
    assert rec["algo"] == "knn" and rec["tp"] == 4 and rec["accuracy"] == 0.9
