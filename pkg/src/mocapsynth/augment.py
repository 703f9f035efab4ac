"""Label-preserving geometric augmentation of world-space motion sequences.

Every transform works on unnormalized coordinates. One augmented sample
composes a rotation about the bowl's starting point, a scale about the
torso center, and a floor-plane translation, each drawn independently.
The rotation pivot is defined on the original bowl position, so rotation
is applied first, then scale, then translation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .dataset.preprocess import MotionSequence
from .errors import InvalidFactorError, StateError
from .markers import BOWL, SHOULDERS, WAIST
from .seeding import derive_rng


@dataclass(frozen=True)
class AugmentSpec:
    translate_m: float = 0.20  # +- range along X and Y
    scale_lo: float = 0.85
    scale_hi: float = 1.15
    rotate_lo_deg: float = 0.0
    rotate_hi_deg: float = 60.0
    factor: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.scale_lo <= 0 or self.scale_hi < self.scale_lo:
            raise InvalidFactorError(f"bad scale range [{self.scale_lo}, {self.scale_hi}]")
        if self.factor < 1:
            raise InvalidFactorError(f"factor must be >= 1, got {self.factor}")

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "AugmentSpec":
        return cls(**json.loads(text))


def _require_world_space(seq: MotionSequence, op: str) -> None:
    if seq.normalized:
        raise StateError(f"{op} needs world-space coordinates, got a normalized sequence")


def translate_xy(seq: MotionSequence, dx: float, dy: float) -> MotionSequence:
    """Shift every marker in every frame by (dx, dy) on the floor plane."""
    _require_world_space(seq, "translate_xy")
    pts = seq.points().copy()
    pts[:, :, 0] += dx
    pts[:, :, 1] += dy
    return MotionSequence(pts.reshape(seq.data.shape), normalized=False, meta=seq.meta, name=seq.name)


def torso_centers(seq: MotionSequence) -> np.ndarray:
    """(32, 3) per-frame scaling pivot: midpoint of shoulder mean and waist mean."""
    pts = seq.points()
    shoulders = pts[:, list(SHOULDERS), :].mean(axis=1)
    waist = pts[:, list(WAIST), :].mean(axis=1)
    return 0.5 * (shoulders + waist)


def scale_about_torso(seq: MotionSequence, factor: float) -> MotionSequence:
    """Scale every marker (bowl included) about the per-frame torso center."""
    _require_world_space(seq, "scale_about_torso")
    if factor <= 0:
        raise InvalidFactorError(f"scale factor must be positive, got {factor}")
    pts = seq.points()
    centers = torso_centers(seq)[:, None, :]
    scaled = centers + factor * (pts - centers)
    return MotionSequence(scaled.reshape(seq.data.shape), normalized=False, meta=seq.meta, name=seq.name)


def rotate_about_bowl_start(seq: MotionSequence, angle_deg: float) -> MotionSequence:
    """Rotate all frames about the vertical axis through the bowl's frame-0 spot.

    Positive angles turn counter-clockwise seen from above (+Z).
    """
    _require_world_space(seq, "rotate_about_bowl_start")
    theta = math.radians(angle_deg % 360.0)
    c, s = math.cos(theta), math.sin(theta)
    pts = seq.points().copy()
    pivot = pts[0, BOWL, :2].copy()
    rel_x = pts[:, :, 0] - pivot[0]
    rel_y = pts[:, :, 1] - pivot[1]
    pts[:, :, 0] = pivot[0] + c * rel_x - s * rel_y
    pts[:, :, 1] = pivot[1] + s * rel_x + c * rel_y
    return MotionSequence(pts.reshape(seq.data.shape), normalized=False, meta=seq.meta, name=seq.name)


def augment_one(seq: MotionSequence, spec: AugmentSpec, rng: np.random.Generator) -> MotionSequence:
    """One independently drawn rotate -> scale -> translate composition."""
    angle = rng.uniform(spec.rotate_lo_deg, spec.rotate_hi_deg)
    factor = rng.uniform(spec.scale_lo, spec.scale_hi)
    dx = rng.uniform(-spec.translate_m, spec.translate_m)
    dy = rng.uniform(-spec.translate_m, spec.translate_m)
    out = rotate_about_bowl_start(seq, angle)
    out = scale_about_torso(out, factor)
    return translate_xy(out, dx, dy)


def augment_dataset(sequences: list[MotionSequence], spec: AugmentSpec) -> list[MotionSequence]:
    """factor copies per input, the first being the original; labels verbatim.

    The RNG is split per output sample from the master seed, so the result
    is deterministic and independent of evaluation order.
    """
    out: list[MotionSequence] = []
    for i, seq in enumerate(sequences):
        out.append(seq)
        for j in range(1, spec.factor):
            rng = derive_rng(spec.seed, "augment", i, j)
            aug = augment_one(seq, spec, rng)
            aug.name = f"{seq.name}+a{j}"
            out.append(aug)
    return out
