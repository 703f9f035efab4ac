"""Hierarchical classifier: architecture, tasks, training harness."""

import numpy as np
import numpy.testing as npt
import pytest

from mocapsynth.classifier import (
    HierarchicalClassifier,
    HierarchicalNetSpec,
    TaskSpec,
    balance_classes,
    cluster_views,
    evaluate,
    filter_for_task,
    labels_of,
    parameter_count,
    train_classifier,
    validation_split,
)
from mocapsynth.dataset import MotionSequence, TrialMeta
from mocapsynth.dataset.synthetic import separable_sequences
from mocapsynth.errors import ContractError, DataError, LabelError, ShapeError
from mocapsynth.nn import Tensor, softmax


def meta(**overrides) -> TrialMeta:
    base = dict(
        participant="p01",
        bowl_size="medium",
        weight_g=1140,
        balance="balanced",
        orientation="facing",
        strategy="B",
        frame_rate=119.88,
    )
    base.update(overrides)
    return TrialMeta(**base)


def seq_with(rng, **meta_overrides) -> MotionSequence:
    return MotionSequence(rng.normal(size=(32, 48)), meta=meta(**meta_overrides))


# -- architecture -----------------------------------------------------------------


def test_default_parameter_count_near_reported_total():
    for n_classes in (2, 5):
        spec = HierarchicalNetSpec(n_classes=n_classes)
        count = parameter_count(spec)
        assert 4500 <= count <= 5800
        assert HierarchicalClassifier(spec).num_parameters() == count


def test_parameter_count_closed_form_one_filter():
    spec = HierarchicalNetSpec(n_classes=2, branch_filters=(1, 1, 1), dense_width=1)
    # per branch: 3*w*1+1 (w=21,15,21) + (3+1) + (3+1); concat 3*4*1=12
    want = (64 + 4 + 4) + (46 + 4 + 4) + (64 + 4 + 4) + (12 * 1 + 1) + (1 * 2 + 2)
    assert parameter_count(spec) == want
    assert HierarchicalClassifier(spec).num_parameters() == want


def test_branch_shape_chain():
    spec = HierarchicalNetSpec(n_classes=3)
    model = HierarchicalClassifier(spec, seed=1)
    rng = np.random.default_rng(0)
    x = Tensor(rng.normal(size=(4, 32, 21)))
    shapes = []
    for layer in model.branches[0].layers:
        x = layer.forward(x)
        shapes.append(x.shape)
    assert shapes == [
        (4, 32, 4), (4, 32, 4), (4, 16, 4),
        (4, 16, 8), (4, 16, 8), (4, 8, 8),
        (4, 8, 8), (4, 8, 8), (4, 4, 8),
        (4, 32),
    ]


def test_forward_logits_shape_and_input_validation():
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=5), seed=2)
    rng = np.random.default_rng(1)
    views = cluster_views(rng.normal(size=(6, 32, 48)))
    logits = model.forward(tuple(Tensor(v) for v in views))
    assert logits.shape == (6, 5)
    bad = (Tensor(np.zeros((6, 32, 21))), Tensor(np.zeros((6, 32, 21))), Tensor(np.zeros((6, 32, 21))))
    with pytest.raises(ShapeError):
        model.forward(bad)


def test_zero_input_gives_exactly_uniform_softmax():
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=4), seed=3)
    views = (Tensor(np.zeros((2, 32, 21))), Tensor(np.zeros((2, 32, 15))), Tensor(np.zeros((2, 32, 21))))
    probs = softmax(model.forward(views)).data
    npt.assert_array_equal(probs, np.full((2, 4), 0.25))


def test_logit_shift_invariance_of_prediction():
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=3), seed=4)
    rng = np.random.default_rng(2)
    views = tuple(Tensor(v) for v in cluster_views(rng.normal(size=(8, 32, 48))))
    logits = model.forward(views).data
    assert np.array_equal(logits.argmax(axis=1), (logits + 7.3).argmax(axis=1))


def test_checkpoint_round_trip(tmp_path):
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=5), seed=5)
    rng = np.random.default_rng(3)
    views = tuple(Tensor(v) for v in cluster_views(rng.normal(size=(3, 32, 48))))
    before = model.forward(views).data
    model.save(tmp_path / "clf.bin", {"task": "strategy"})
    loaded, extra = HierarchicalClassifier.load(tmp_path / "clf.bin")
    assert extra == {"task": "strategy"}
    npt.assert_array_equal(loaded.forward(views).data, before)


def test_spec_validation():
    with pytest.raises(ShapeError):
        HierarchicalNetSpec(n_classes=1)
    with pytest.raises(ShapeError):
        HierarchicalNetSpec(n_classes=2, branch_filters=(0, 1, 1))


# -- tasks -----------------------------------------------------------------------


def test_weight_task_filter_and_balance():
    rng = np.random.default_rng(4)
    seqs = (
        [seq_with(rng, weight_g=640) for _ in range(218)]
        + [seq_with(rng, weight_g=1140) for _ in range(287)]
        + [seq_with(rng, weight_g=1640, bowl_size="largest") for _ in range(300)]
    )
    spec = TaskSpec("weight")
    kept = filter_for_task(seqs, spec)
    assert len(kept) == 518  # the middle class drops out
    balanced = balance_classes(kept, spec, seed=0)
    assert len(balanced) == 436
    labels = labels_of(balanced, spec)
    assert (labels == 0).sum() == 218 and (labels == 1).sum() == 218


def test_weight_task_split_sizes():
    rng = np.random.default_rng(5)
    seqs = [seq_with(rng, weight_g=640) for _ in range(218)] + [
        seq_with(rng, weight_g=1640, bowl_size="largest") for _ in range(218)
    ]
    train, val = validation_split(seqs, TaskSpec("weight").n_validation, seed=1)
    assert len(val) == 50 and len(train) == 386
    assert {id(s) for s in train}.isdisjoint({id(s) for s in val})


def test_strategy_task_filters_to_top_five():
    rng = np.random.default_rng(6)
    seqs = [seq_with(rng, strategy=s) for s in "ABCDEFGHI"]
    spec = TaskSpec("strategy")
    kept = filter_for_task(seqs, spec)
    assert sorted(s.meta.strategy for s in kept) == list("ABCDG")
    assert spec.n_classes == 5
    with pytest.raises(LabelError):
        spec.label_of(seq_with(rng, strategy="E"))


def test_balance_task_labels():
    rng = np.random.default_rng(7)
    spec = TaskSpec("balance")
    assert spec.label_of(seq_with(rng, balance="balanced")) == 0
    assert spec.label_of(seq_with(rng, balance="unbalanced")) == 1
    assert spec.n_validation == 100


def test_validation_split_is_deterministic():
    rng = np.random.default_rng(8)
    seqs = [seq_with(rng) for _ in range(40)]
    t1, v1 = validation_split(seqs, 10, seed=5)
    t2, v2 = validation_split(seqs, 10, seed=5)
    assert [s.name for s in v1] == [s.name for s in v2]
    with pytest.raises(DataError):
        validation_split(seqs, 40, seed=5)


def test_unknown_task_rejected():
    with pytest.raises(ContractError):
        TaskSpec("speed")


# -- evaluation -------------------------------------------------------------------


def test_evaluate_perfect_and_constant_predictors():
    # route predictions through a model whose weights are forced by hand:
    # bias-only head makes a constant predictor
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=2), seed=9)
    for p in model.parameters():
        p.data = np.zeros_like(p.data)
    model.head.layers[-1].bias.data = np.array([0.0, 1.0])  # always class 1
    rng = np.random.default_rng(9)
    views = cluster_views(rng.normal(size=(40, 32, 48)))
    labels = np.array([0, 1] * 20)
    acc, confusion = evaluate(model, views, labels)
    assert acc == 0.5
    npt.assert_array_equal(confusion, [[0, 20], [0, 20]])
    # rows sum to per-class counts
    npt.assert_array_equal(confusion.sum(axis=1), [20, 20])


def test_evaluate_twice_is_identical():
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=3), seed=10)
    rng = np.random.default_rng(10)
    views = cluster_views(rng.normal(size=(30, 32, 48)))
    labels = rng.integers(0, 3, 30)
    a1, c1 = evaluate(model, views, labels)
    a2, c2 = evaluate(model, views, labels)
    assert a1 == a2
    npt.assert_array_equal(c1, c2)


def test_evaluate_rejects_bad_labels():
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=2), seed=11)
    views = cluster_views(np.zeros((4, 32, 48)))
    with pytest.raises(LabelError):
        evaluate(model, views, np.array([0, 1, 2, 0]))
    with pytest.raises(DataError):
        evaluate(model, cluster_views(np.zeros((0, 32, 48))), np.array([], dtype=int))


# -- training ---------------------------------------------------------------------


def test_overfits_tiny_set():
    # capacity check: a handful of samples must be memorized
    rng = np.random.default_rng(12)
    x = rng.normal(size=(10, 32, 48))
    y = np.arange(10) % 2
    views = cluster_views(x)
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=2, branch_filters=(2, 2, 2), dense_width=8), seed=12)
    report = train_classifier(model, views, y, views, y, epochs=60, batch=10, seed=12)
    assert max(report.train_acc) == 1.0
    assert report.n_parameters == model.num_parameters()


def test_training_report_and_restored_best_weights():
    train_x, train_y, val_x, val_y = separable_sequences(n_train=60, n_val=30, seed=13)
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=3, branch_filters=(2, 4, 4), dense_width=16), seed=13)
    report = train_classifier(
        model, cluster_views(train_x), train_y, cluster_views(val_x), val_y, epochs=8, batch=16, seed=13
    )
    assert len(report.val_acc) == 8 and len(report.train_loss) == 8
    assert 0 <= report.best_epoch < 8
    # the kept weights must reproduce the best recorded validation accuracy
    acc, confusion = evaluate(model, cluster_views(val_x), val_y)
    assert acc == pytest.approx(max(report.val_acc))
    assert confusion.sum() == 30
    npt.assert_array_equal(confusion.sum(axis=1), np.bincount(val_y, minlength=3))


def test_training_is_deterministic():
    train_x, train_y, val_x, val_y = separable_sequences(n_train=30, n_val=12, seed=14)
    views, vviews = cluster_views(train_x), cluster_views(val_x)

    def run():
        model = HierarchicalClassifier(
            HierarchicalNetSpec(n_classes=3, branch_filters=(2, 2, 2), dense_width=8), seed=14
        )
        report = train_classifier(model, views, train_y, vviews, val_y, epochs=3, batch=8, seed=14)
        return model, report

    m1, r1 = run()
    m2, r2 = run()
    assert r1.train_loss == r2.train_loss
    assert r1.val_acc == r2.val_acc
    for p1, p2 in zip(m1.parameters(), m2.parameters()):
        npt.assert_array_equal(p1.data, p2.data)


def test_training_rejects_empty_and_bad_labels():
    model = HierarchicalClassifier(HierarchicalNetSpec(n_classes=2), seed=15)
    empty = cluster_views(np.zeros((0, 32, 48)))
    some = cluster_views(np.zeros((4, 32, 48)))
    with pytest.raises(DataError):
        train_classifier(model, empty, np.array([]), some, np.zeros(4, dtype=int), epochs=1)
    with pytest.raises(LabelError):
        train_classifier(model, some, np.array([0, 1, 3, 0]), some, np.zeros(4, dtype=int), epochs=1)
