"""Trial records: typed metadata plus a frames-by-coordinates matrix.

One trial is stored on disk as a CSV of 48 columns (16 markers x x,y,z,
header row naming each column) and a JSON sidecar with the recording
metadata. Writing is canonical, so load followed by save is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import TrialFormatError
from ..markers import CSV_COLUMNS, CSV_COLUMNS_NO_C7, N_MARKERS

BOWL_SIZES = ("small", "medium", "large", "largest")
WEIGHTS_G = (640, 1140, 1640)
WEIGHT_NAMES = {640: "heavy", 1140: "heavier", 1640: "heaviest"}
BALANCES = ("balanced", "unbalanced")
ORIENTATIONS = ("facing", "left", "right")
STRATEGIES = tuple("ABCDEFGHI")
FRAME_RATE_HZ = 119.88


@dataclass(frozen=True)
class TrialMeta:
    participant: str
    bowl_size: str
    weight_g: int
    balance: str
    orientation: str
    strategy: str
    frame_rate: float = FRAME_RATE_HZ

    def __post_init__(self):
        checks = (
            ("bowl_size", self.bowl_size, BOWL_SIZES),
            ("weight_g", self.weight_g, WEIGHTS_G),
            ("balance", self.balance, BALANCES),
            ("orientation", self.orientation, ORIENTATIONS),
            ("strategy", self.strategy, STRATEGIES),
        )
        for field, value, allowed in checks:
            if value not in allowed:
                raise TrialFormatError(f"unknown value {value!r} for field {field!r}")
        if self.bowl_size == "largest" and self.weight_g == 640:
            raise TrialFormatError("largest bowl cannot carry the 640 g load")

    @property
    def weight_name(self) -> str:
        return WEIGHT_NAMES[self.weight_g]

    def to_dict(self) -> dict:
        return {
            "participant": self.participant,
            "bowl_size": self.bowl_size,
            "weight_g": self.weight_g,
            "balance": self.balance,
            "orientation": self.orientation,
            "strategy": self.strategy,
            "frame_rate": self.frame_rate,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrialMeta":
        required = {"participant", "bowl_size", "weight_g", "balance", "orientation", "strategy", "frame_rate"}
        missing = required - set(d)
        if missing:
            raise TrialFormatError(f"metadata missing fields: {sorted(missing)}")
        return cls(**{k: d[k] for k in required})


@dataclass
class Trial:
    name: str
    coords: np.ndarray  # (frames, 48) world-space meters
    meta: TrialMeta

    def __post_init__(self):
        arr = np.asarray(self.coords, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != N_MARKERS * 3:
            raise TrialFormatError(f"trial {self.name!r}: expected (N, 48) coordinates, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise TrialFormatError(f"trial {self.name!r}: non-finite coordinate values")
        self.coords = arr

    @property
    def n_frames(self) -> int:
        return self.coords.shape[0]

    def points(self) -> np.ndarray:
        """(frames, 16, 3) view of the coordinate matrix."""
        return self.coords.reshape(self.n_frames, N_MARKERS, 3)

    def bowl_track(self) -> np.ndarray:
        """(frames, 3) bowl marker trajectory."""
        return self.coords[:, -3:]

    def with_coords(self, coords: np.ndarray) -> "Trial":
        return Trial(self.name, coords, self.meta)


@dataclass
class LoadResult:
    trials: list[Trial]
    skipped_missing_c7: int


def save_trial(directory: str | Path, trial: Trial) -> tuple[Path, Path]:
    """Write <name>.csv and <name>.json in canonical form (LF, 6 decimals)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    csv_path = directory / f"{trial.name}.csv"
    json_path = directory / f"{trial.name}.json"
    write_sequence_csv(trial.coords, csv_path)
    json_path.write_bytes(
        (json.dumps(trial.meta.to_dict(), sort_keys=True, indent=2) + "\n").encode("utf-8")
    )
    return csv_path, json_path


def write_sequence_csv(coords: np.ndarray, path: str | Path) -> Path:
    """Write bare coordinates in the trial column layout, no sidecar.

    Used for generated sequences, which carry no recording metadata.
    """
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] != len(CSV_COLUMNS):
        raise TrialFormatError(f"expected (frames, {len(CSV_COLUMNS)}) coordinates, got {coords.shape}")
    path = Path(path)
    lines = [",".join(CSV_COLUMNS)]
    for row in coords:
        lines.append(",".join(f"{v:.6f}" for v in row))
    path.write_bytes(("\n".join(lines) + "\n").encode("utf-8"))
    return path


def read_sequence_csv(path: str | Path) -> np.ndarray:
    """Read a bare coordinate CSV (trial column layout, no sidecar)."""
    return _parse_csv(Path(path))


class MissingC7(Exception):
    """Internal signal: trial lacks the C7 marker columns."""


def _parse_csv(path: Path) -> np.ndarray:
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TrialFormatError(f"{path}: empty file")
    header = lines[0].split(",")
    if header == list(CSV_COLUMNS_NO_C7):
        raise MissingC7()
    if header != list(CSV_COLUMNS):
        raise TrialFormatError(f"{path}: unexpected header ({len(header)} columns)")
    rows = np.empty((len(lines) - 1, len(CSV_COLUMNS)), dtype=np.float64)
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise TrialFormatError(f"{path}: line {i}: expected {len(CSV_COLUMNS)} columns, got {len(parts)}")
        try:
            rows[i - 2] = [float(p) for p in parts]
        except ValueError as exc:
            raise TrialFormatError(f"{path}: line {i}: {exc}") from None
    return rows


def load_trial(csv_path: str | Path) -> Trial:
    csv_path = Path(csv_path)
    json_path = csv_path.with_suffix(".json")
    if not json_path.exists():
        raise TrialFormatError(f"{csv_path}: missing metadata sidecar {json_path.name}")
    coords = _parse_csv(csv_path)
    try:
        meta = TrialMeta.from_dict(json.loads(json_path.read_text(encoding="utf-8")))
    except json.JSONDecodeError as exc:
        raise TrialFormatError(f"{json_path}: invalid JSON: {exc}") from None
    return Trial(csv_path.stem, coords, meta)


def load_trials(directory: str | Path) -> LoadResult:
    """Load every trial CSV under `directory`; C7-less trials are skipped and counted."""
    directory = Path(directory)
    trials: list[Trial] = []
    skipped = 0
    for csv_path in sorted(directory.glob("*.csv")):
        try:
            trials.append(load_trial(csv_path))
        except MissingC7:
            skipped += 1
    return LoadResult(trials, skipped)
