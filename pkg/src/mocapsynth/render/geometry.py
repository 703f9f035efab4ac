"""Per-frame sphere and cylinder geometry for a motion sequence."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateBoneError, StateError
from ..markers import BOWL, HEAD, MARKER_NAMES, N_BODY_MARKERS, WAIST
from .topology import HEAD_CENTER, PELVIS, SkeletonTopology, default_topology

SPHERE_RADIUS = 0.03
CYLINDER_RADIUS = 0.015
BOWL_RADIUS = 0.05


@dataclass(frozen=True)
class Sphere:
    center: np.ndarray
    radius: float
    tag: str


@dataclass(frozen=True)
class Cylinder:
    center: np.ndarray
    axis: np.ndarray
    length: float
    radius: float


@dataclass
class GeometryFrame:
    frame_index: int
    spheres: list[Sphere] = field(default_factory=list)
    cylinders: list[Cylinder] = field(default_factory=list)


def cylinder_between(p1, p2) -> tuple[np.ndarray, np.ndarray, float]:
    """Midpoint, unit direction and length of the segment p1 -> p2."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    delta = p2 - p1
    length = float(np.linalg.norm(delta))
    if length == 0.0:
        raise DegenerateBoneError("coincident endpoints leave the cylinder axis undefined")
    return (p1 + p2) / 2.0, delta / length, length


def _node_positions(frame_points: np.ndarray) -> dict[str, np.ndarray]:
    pos = {name: frame_points[i] for i, name in enumerate(MARKER_NAMES)}
    pos[PELVIS] = frame_points[list(WAIST)].mean(axis=0)
    pos[HEAD_CENTER] = frame_points[list(HEAD)].mean(axis=0)
    return pos


def build_geometry(seq, topo: SkeletonTopology | None = None) -> list[GeometryFrame]:
    """One GeometryFrame per time step: 18 spheres plus one cylinder per bone.

    Spheres cover the 15 body markers, the inferred pelvis and head
    center, and the bowl. A bone whose endpoints coincide in some frame
    is skipped for that frame with a warning; rendering never aborts.
    """
    if getattr(seq, "normalized", False):
        raise StateError("render world-space sequences; invert the normalizer first")
    topo = topo or default_topology()
    points = seq.points()
    frames = []
    for t in range(points.shape[0]):
        pos = _node_positions(points[t])
        frame = GeometryFrame(frame_index=t)
        for i in range(N_BODY_MARKERS):
            frame.spheres.append(Sphere(points[t, i].copy(), SPHERE_RADIUS, MARKER_NAMES[i]))
        frame.spheres.append(Sphere(pos[PELVIS], SPHERE_RADIUS, PELVIS))
        frame.spheres.append(Sphere(pos[HEAD_CENTER], SPHERE_RADIUS, HEAD_CENTER))
        frame.spheres.append(Sphere(points[t, BOWL].copy(), BOWL_RADIUS, "bowl"))
        for a, b in topo.bones:
            try:
                center, axis, length = cylinder_between(pos[a], pos[b])
            except DegenerateBoneError:
                warnings.warn(f"frame {t}: bone {a}-{b} has coincident endpoints, skipped")
                continue
            frame.cylinders.append(Cylinder(center, axis, length, CYLINDER_RADIUS))
        frames.append(frame)
    return frames
