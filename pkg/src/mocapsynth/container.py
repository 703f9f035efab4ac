"""Versioned binary container for sequence archives and model checkpoints.

Layout: 8-byte magic, little-endian uint64 header length, UTF-8 JSON
header, then the raw bytes of each named array in header order. Arrays
are always stored little-endian; writes are atomic (temp file + rename)
and byte-deterministic for identical content.
"""

from __future__ import annotations

import json
import os
import struct
from pathlib import Path

import numpy as np

from .errors import TrialFormatError

MAGIC = b"MCSYNTH1"
VERSION = 1


def _canonical_dtype(arr: np.ndarray) -> np.dtype:
    dt = arr.dtype.newbyteorder("<")
    if dt.kind not in "fiub":
        raise TrialFormatError(f"unsupported array dtype {arr.dtype}")
    return dt


def write_container(path: str | Path, kind: str, meta: dict, arrays: dict[str, np.ndarray]) -> None:
    path = Path(path)
    entries = []
    blobs = []
    for name in sorted(arrays):
        arr = np.ascontiguousarray(arrays[name])
        dt = _canonical_dtype(arr)
        blobs.append(arr.astype(dt, copy=False).tobytes())
        entries.append({"dtype": dt.str, "name": name, "shape": list(arr.shape)})
    header = {"arrays": entries, "kind": kind, "meta": meta, "version": VERSION}
    header_bytes = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")

    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<Q", len(header_bytes)))
        fh.write(header_bytes)
        for blob in blobs:
            fh.write(blob)
    os.replace(tmp, path)


def read_container(path: str | Path, expect_kind: str | None = None) -> tuple[dict, dict[str, np.ndarray]]:
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise TrialFormatError(f"{path}: bad magic {magic!r}")
        (hlen,) = struct.unpack("<Q", fh.read(8))
        header = json.loads(fh.read(hlen).decode("utf-8"))
        if header.get("version") != VERSION:
            raise TrialFormatError(f"{path}: unsupported container version {header.get('version')}")
        if expect_kind is not None and header.get("kind") != expect_kind:
            raise TrialFormatError(f"{path}: expected kind {expect_kind!r}, found {header.get('kind')!r}")
        arrays: dict[str, np.ndarray] = {}
        for entry in header["arrays"]:
            dt = np.dtype(entry["dtype"])
            count = int(np.prod(entry["shape"], dtype=np.int64)) if entry["shape"] else 1
            raw = fh.read(count * dt.itemsize)
            if len(raw) != count * dt.itemsize:
                raise TrialFormatError(f"{path}: truncated array {entry['name']!r}")
            arrays[entry["name"]] = np.frombuffer(raw, dtype=dt).reshape(entry["shape"]).copy()
    return header["meta"], arrays
