"""Health checks on generator output and loss histories."""

from __future__ import annotations

import numpy as np

from ..errors import DataError, ShapeError


def _flat(samples: np.ndarray) -> np.ndarray:
    samples = np.asarray(samples, dtype=float)
    if samples.ndim < 2:
        raise ShapeError("need a batch of samples")
    return samples.reshape(samples.shape[0], -1)


def pairwise_distance_stats(samples: np.ndarray) -> dict:
    """Euclidean distance statistics over all unordered sample pairs.

    A collapsed generator produces near-identical outputs, which shows
    up here as a tiny mean distance.
    """
    x = _flat(samples)
    n = x.shape[0]
    if n < 2:
        raise DataError("pairwise statistics need at least two samples")
    sq = np.sum(x * x, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    iu = np.triu_indices(n, k=1)
    d = np.sqrt(np.maximum(d2[iu], 0.0))
    return {
        "n": n,
        "mean": float(d.mean()),
        "std": float(d.std()),
        "min": float(d.min()),
        "max": float(d.max()),
    }


def mode_collapsed(samples: np.ndarray, threshold: float) -> bool:
    """True when the mean pairwise distance falls below the threshold."""
    return pairwise_distance_stats(samples)["mean"] < threshold


def assign_modes(samples: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Index of the nearest center for each sample."""
    x = _flat(samples)
    c = _flat(centers)
    if x.shape[1] != c.shape[1]:
        raise ShapeError("samples and centers live in different spaces")
    d2 = (
        np.sum(x * x, axis=1)[:, None]
        + np.sum(c * c, axis=1)[None, :]
        - 2.0 * (x @ c.T)
    )
    return np.argmin(d2, axis=1)


def mode_fractions(samples: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Fraction of samples assigned to each center."""
    assign = assign_modes(samples, centers)
    counts = np.bincount(assign, minlength=len(centers))
    return counts / counts.sum()


def window_stationary(values, window: int = 10, tol: float = 0.05) -> bool:
    """True when the last `window` values all sit within tol of their mean."""
    values = np.asarray(values, dtype=float)
    if len(values) < window:
        return False
    tail = values[-window:]
    center = tail.mean()
    band = tol * max(abs(center), 1e-12)
    return bool(np.all(np.abs(tail - center) <= band))


def first_stationary_epoch(
    d_means, g_means, window: int = 10, tol: float = 0.05
):
    """Earliest epoch at which both loss traces have gone flat.

    Flat means every value in the trailing window lies within the
    relative tolerance of the window mean. Returns None when neither
    history settles.
    """
    d_means = list(d_means)
    g_means = list(g_means)
    n = min(len(d_means), len(g_means))
    for e in range(window, n + 1):
        if window_stationary(d_means[:e], window, tol) and window_stationary(
            g_means[:e], window, tol
        ):
            return e - 1
    return None
