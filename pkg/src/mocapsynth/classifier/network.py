"""Hierarchical three-branch 1-d CNN over overlapping body clusters.

Each cluster (21/15/21 features wide) runs through its own stack of
widening convolutions with halving max-pools; the first convolution of
every branch is dilated (one zero between taps) to widen its receptive
field. Branch outputs are flattened, concatenated, and classified by a
small dense head.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..container import read_container, write_container
from ..errors import ContractError, ShapeError
from ..nn import Sequential, Tensor, concat
from ..nn.layers import Activation, Conv1D, Dense, Dropout, Flatten, MaxPool
from ..seeding import derive_rng

BRANCH_WIDTHS = (21, 15, 21)
SEQ_LEN = 32


@dataclass(frozen=True)
class HierarchicalNetSpec:
    n_classes: int
    branch_filters: tuple[int, int, int] = (4, 8, 8)
    dense_width: int = 32
    dropout: float = 0.25
    kernel: int = 3
    first_spacing: int = 1

    def __post_init__(self):
        if self.n_classes < 2:
            raise ShapeError(f"need at least 2 classes, got {self.n_classes}")
        if any(f < 1 for f in self.branch_filters) or self.dense_width < 1 or self.kernel < 1:
            raise ShapeError("filter counts, dense width, and kernel must be positive")

    def to_dict(self) -> dict:
        return {
            "n_classes": self.n_classes,
            "branch_filters": list(self.branch_filters),
            "dense_width": self.dense_width,
            "dropout": self.dropout,
            "kernel": self.kernel,
            "first_spacing": self.first_spacing,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HierarchicalNetSpec":
        d = dict(d)
        d["branch_filters"] = tuple(d["branch_filters"])
        return cls(**d)


class HierarchicalClassifier:
    """Three parallel conv branches -> concat -> dense head -> logits."""

    def __init__(self, spec: HierarchicalNetSpec, seed: int = 0):
        self.spec = spec
        f1, f2, f3 = spec.branch_filters
        self.branches: list[Sequential] = []
        for b, width in enumerate(BRANCH_WIDTHS):
            rng = derive_rng(seed, "branch", b)
            self.branches.append(
                Sequential(
                    [
                        Conv1D(spec.kernel, width, f1, spacing=spec.first_spacing, rng=rng),
                        Activation("relu"),
                        MaxPool(2),
                        Conv1D(spec.kernel, f1, f2, rng=rng),
                        Activation("relu"),
                        MaxPool(2),
                        Conv1D(spec.kernel, f2, f3, rng=rng),
                        Activation("relu"),
                        MaxPool(2),
                        Flatten(),
                    ]
                )
            )
        concat_width = 3 * (SEQ_LEN // 8) * f3
        rng = derive_rng(seed, "head")
        self.head = Sequential(
            [
                Dense(concat_width, spec.dense_width, rng=rng),
                Activation("relu"),
                Dropout(spec.dropout),
                Dense(spec.dense_width, spec.n_classes, rng=rng),
            ]
        )

    def forward(
        self,
        views: tuple[Tensor, Tensor, Tensor],
        training: bool = False,
        rng: np.random.Generator | None = None,
    ) -> Tensor:
        """views: three (B, 32, width) tensors -> (B, n_classes) logits."""
        for v, width in zip(views, BRANCH_WIDTHS):
            if v.ndim != 3 or v.shape[1] != SEQ_LEN or v.shape[2] != width:
                raise ShapeError(f"branch input must be (B, {SEQ_LEN}, {width}), got {v.shape}")
        outs = [branch.forward(v, training=training, rng=rng) for branch, v in zip(self.branches, views)]
        h = concat(outs, axis=1)
        return self.head.forward(h, training=training, rng=rng)

    __call__ = forward

    def parameters(self) -> list[Tensor]:
        params: list[Tensor] = []
        for branch in self.branches:
            params.extend(branch.parameters())
        params.extend(self.head.parameters())
        return params

    def num_parameters(self) -> int:
        return sum(p.size for p in self.parameters())

    def state_arrays(self) -> dict[str, np.ndarray]:
        out = {}
        for b, branch in enumerate(self.branches):
            for key, arr in branch.state_arrays().items():
                out[f"branch{b}.{key}"] = arr
        for key, arr in self.head.state_arrays().items():
            out[f"head.{key}"] = arr
        return out

    def load_state(self, arrays: dict[str, np.ndarray]) -> None:
        for b, branch in enumerate(self.branches):
            prefix = f"branch{b}."
            branch.load_state({k[len(prefix):]: v for k, v in arrays.items() if k.startswith(prefix)})
        self.head.load_state({k[5:]: v for k, v in arrays.items() if k.startswith("head.")})

    def save(self, path: str | Path, extra: dict | None = None) -> None:
        meta = {"architecture": {"hierarchical": self.spec.to_dict()}, "extra": extra or {}}
        write_container(path, "model", meta, self.state_arrays())

    @classmethod
    def load(cls, path: str | Path) -> tuple["HierarchicalClassifier", dict]:
        meta, arrays = read_container(path, expect_kind="model")
        arch = meta.get("architecture", {})
        if "hierarchical" not in arch:
            raise ContractError("checkpoint does not hold a hierarchical classifier")
        model = cls(HierarchicalNetSpec.from_dict(arch["hierarchical"]))
        model.load_state(arrays)
        return model, meta.get("extra", {})


def parameter_count(spec: HierarchicalNetSpec) -> int:
    """Closed-form trainable parameter count for a spec."""
    f1, f2, f3 = spec.branch_filters
    k = spec.kernel
    total = 0
    for width in BRANCH_WIDTHS:
        total += k * width * f1 + f1
        total += k * f1 * f2 + f2
        total += k * f2 * f3 + f3
    concat_width = 3 * (SEQ_LEN // 8) * f3
    total += concat_width * spec.dense_width + spec.dense_width
    total += spec.dense_width * spec.n_classes + spec.n_classes
    return total
