"""Classifier training loop and evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DataError, LabelError, NumericalError
from ..nn import Adam, Tensor, cross_entropy, no_grad
from ..seeding import derive_rng
from .network import HierarchicalClassifier

Views = tuple[np.ndarray, np.ndarray, np.ndarray]


@dataclass
class TrainReport:
    train_loss: list[float] = field(default_factory=list)
    train_acc: list[float] = field(default_factory=list)
    val_loss: list[float] = field(default_factory=list)
    val_acc: list[float] = field(default_factory=list)
    confusion: np.ndarray | None = None  # rows actual, columns predicted
    best_epoch: int = -1
    n_parameters: int = 0

    def to_dict(self) -> dict:
        return {
            "train_loss": self.train_loss,
            "train_acc": self.train_acc,
            "val_loss": self.val_loss,
            "val_acc": self.val_acc,
            "confusion": self.confusion.tolist() if self.confusion is not None else None,
            "best_epoch": self.best_epoch,
            "n_parameters": self.n_parameters,
        }


def predict_logits(model: HierarchicalClassifier, views: Views, batch: int = 256) -> np.ndarray:
    outs = []
    n = views[0].shape[0]
    with no_grad():
        for lo in range(0, n, batch):
            sub = tuple(Tensor(v[lo : lo + batch]) for v in views)
            outs.append(model.forward(sub, training=False).data)
    return np.concatenate(outs, axis=0)


def evaluate(
    model: HierarchicalClassifier, views: Views, labels: np.ndarray
) -> tuple[float, np.ndarray]:
    """Accuracy and confusion matrix (rows actual, columns predicted)."""
    n_classes = model.spec.n_classes
    labels = np.asarray(labels, dtype=int)
    if labels.size == 0:
        raise DataError("cannot evaluate on an empty set")
    if labels.min() < 0 or labels.max() >= n_classes:
        raise LabelError(f"label outside [0, {n_classes}): {labels.min()}..{labels.max()}")
    preds = predict_logits(model, views).argmax(axis=1)
    confusion = np.zeros((n_classes, n_classes), dtype=int)
    np.add.at(confusion, (labels, preds), 1)
    accuracy = float(np.trace(confusion) / labels.size)
    return accuracy, confusion


def _onehot(labels: np.ndarray, n_classes: int) -> np.ndarray:
    return np.eye(n_classes)[labels]


def train_classifier(
    model: HierarchicalClassifier,
    train_views: Views,
    train_labels: np.ndarray,
    val_views: Views,
    val_labels: np.ndarray,
    epochs: int = 400,
    batch: int = 32,
    lr: float = 1e-3,
    seed: int = 0,
) -> TrainReport:
    """Cross-entropy training with Adam; weights end at the best-validation epoch."""
    n = train_views[0].shape[0]
    if n == 0 or val_views[0].shape[0] == 0:
        raise DataError("empty training or validation split")
    train_labels = np.asarray(train_labels, dtype=int)
    val_labels = np.asarray(val_labels, dtype=int)
    n_classes = model.spec.n_classes
    if train_labels.max() >= n_classes or train_labels.min() < 0:
        raise LabelError("training label outside the task's class range")

    report = TrainReport(n_parameters=model.num_parameters())
    params = model.parameters()
    opt = Adam(params, lr=lr)
    onehot = _onehot(train_labels, n_classes)
    best_acc = -1.0
    best_state: list[np.ndarray] = []

    for epoch in range(epochs):
        rng = derive_rng(seed, "epoch", epoch)
        order = rng.permutation(n)
        drop_rng = derive_rng(seed, "dropout", epoch)
        losses = []
        correct = 0
        for lo in range(0, n, batch):
            sel = order[lo : lo + batch]
            sub = tuple(Tensor(v[sel]) for v in train_views)
            logits = model.forward(sub, training=True, rng=drop_rng)
            loss = cross_entropy(logits, onehot[sel])
            if not np.isfinite(loss.item()):
                raise NumericalError(f"loss diverged at epoch {epoch}, batch {lo // batch}")
            opt.zero_grad()
            loss.backward()
            opt.step()
            losses.append(loss.item())
            correct += int((logits.data.argmax(axis=1) == train_labels[sel]).sum())
        report.train_loss.append(float(np.mean(losses)))
        report.train_acc.append(correct / n)

        val_logits = predict_logits(model, val_views)
        vl = cross_entropy(Tensor(val_logits), _onehot(val_labels, n_classes)).item()
        va = float((val_logits.argmax(axis=1) == val_labels).mean())
        report.val_loss.append(vl)
        report.val_acc.append(va)
        if va > best_acc:
            best_acc = va
            best_state = [p.data.copy() for p in params]
            report.best_epoch = epoch

    for p, saved in zip(params, best_state):
        p.data = saved
    _, report.confusion = evaluate(model, val_views, val_labels)
    return report
