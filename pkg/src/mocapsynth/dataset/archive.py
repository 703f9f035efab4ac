"""Sequence-set archives: stacked 32x48 matrices, labels, and norm stats."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..container import read_container, write_container
from ..errors import ContractError
from .preprocess import MotionSequence, NormStats
from .trials import TrialMeta

KIND = "sequences"


def save_sequences(
    path: str | Path,
    sequences: list[MotionSequence],
    stats: NormStats | None = None,
    extra: dict | None = None,
) -> None:
    if not sequences:
        raise ContractError("refusing to write an empty sequence archive")
    flags = {seq.normalized for seq in sequences}
    if len(flags) != 1:
        raise ContractError("archive mixes normalized and unnormalized sequences")
    data = np.stack([seq.data for seq in sequences])
    meta = {
        "normalized": sequences[0].normalized,
        "names": [seq.name for seq in sequences],
        "labels": [seq.meta.to_dict() if seq.meta else None for seq in sequences],
        "extra": extra or {},
    }
    arrays = {"data": data}
    if stats is not None:
        arrays.update(stats.to_arrays())
    write_container(path, KIND, meta, arrays)


def load_sequences(path: str | Path) -> tuple[list[MotionSequence], NormStats | None, dict]:
    meta, arrays = read_container(path, expect_kind=KIND)
    normalized = bool(meta["normalized"])
    sequences = []
    for i, data in enumerate(arrays["data"]):
        label = meta["labels"][i]
        sequences.append(
            MotionSequence(
                data,
                normalized=normalized,
                meta=TrialMeta.from_dict(label) if label else None,
                name=meta["names"][i],
            )
        )
    stats = NormStats.from_arrays(arrays) if "norm_mean" in arrays else None
    return sequences, stats, meta.get("extra", {})
