"""Model checkpoints: layer specs plus weights in one container file."""

from __future__ import annotations

import json
from pathlib import Path

from ..container import read_container, write_container
from ..errors import ContractError
from .layers import Sequential

KIND = "model"


def save_model(path: str | Path, model: Sequential, meta: dict | None = None) -> None:
    header = {
        "architecture": model.spec(),
        "extra": meta or {},
    }
    write_container(path, KIND, header, model.state_arrays())


def load_model(path: str | Path, expect_architecture: list[dict] | None = None) -> tuple[Sequential, dict]:
    """Rebuild the saved model; optionally insist on a known architecture."""
    meta, arrays = read_container(path, expect_kind=KIND)
    arch = meta["architecture"]
    if expect_architecture is not None and json.dumps(arch, sort_keys=True) != json.dumps(
        expect_architecture, sort_keys=True
    ):
        raise ContractError("checkpoint architecture does not match the expected layout")
    model = Sequential.from_spec(arch)
    model.load_state(arrays)
    return model, meta.get("extra", {})
