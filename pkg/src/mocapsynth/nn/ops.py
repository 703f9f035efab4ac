"""Network building blocks composed from differentiable primitives.

Sequences are (batch, time, channels). Convolution is expressed as a
window gather followed by one matmul, so its backward pass reuses the
matmul/gather adjoints and stays differentiable to second order.
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractError, ShapeError
from .tensor import (
    Tensor,
    add,
    broadcast_to,
    gather_time,
    matmul,
    mul_const,
    repeat_time,
    reshape,
    tsum,
)


def conv_output_length(length: int, stride: int) -> int:
    """Output steps for same-padded convolution: ceil(length / stride)."""
    return -(-length // stride)


def conv_padding(kernel: int, spacing: int) -> tuple[int, int]:
    """Left/right zero padding that keeps stride-1 output length equal to input.

    A kernel of size K with `spacing` zeros between taps spans
    K + (K - 1) * spacing input steps.
    """
    reach = (kernel - 1) * (1 + spacing)
    left = reach // 2
    return left, reach - left


def conv_window_index(length: int, kernel: int, stride: int, spacing: int) -> np.ndarray:
    """(t_out, tap) -> padded input index."""
    t_out = conv_output_length(length, stride)
    starts = np.arange(t_out) * stride
    taps = np.arange(kernel) * (1 + spacing)
    return starts[:, None] + taps[None, :]


def conv1d(
    x: Tensor,
    weight: Tensor,
    bias: Tensor,
    stride: int = 1,
    spacing: int = 0,
) -> Tensor:
    """Same-padded 1-d convolution over the time axis.

    x: (B, T, Cin); weight: (K, Cin, Cout); bias: (Cout,).
    Returns (B, ceil(T / stride), Cout).
    """
    if x.ndim != 3:
        raise ShapeError(f"conv1d expects (B, T, C), got shape {x.shape}")
    if weight.ndim != 3:
        raise ShapeError(f"conv1d weight must be (K, Cin, Cout), got {weight.shape}")
    k, c_in, c_out = weight.shape
    if x.shape[2] != c_in:
        raise ShapeError(f"conv1d channel mismatch: input {x.shape[2]}, weight {c_in}")
    if stride < 1 or spacing < 0:
        raise ContractError(f"invalid stride={stride} spacing={spacing}")

    b, t, _ = x.shape
    left, right = conv_padding(k, spacing)
    # window taps in padded coordinates: original p sits at p + left, and the
    # window for output t starts at original t*stride - left, i.e. padded t*stride
    idx = conv_window_index(t, k, stride, spacing)
    t_out = idx.shape[0]

    from .tensor import pad_axis

    padded = pad_axis(x, 1, left, right)
    windows = gather_time(padded, idx)  # (B, Tout, K, Cin)
    flat = reshape(windows, (b * t_out, k * c_in))
    w2 = reshape(weight, (k * c_in, c_out))
    out = matmul(flat, w2)
    out = add(out, broadcast_to(reshape(bias, (1, c_out)), (b * t_out, c_out)))
    return reshape(out, (b, t_out, c_out))


def maxpool1d(x: Tensor, width: int = 2) -> Tensor:
    """Non-overlapping max pooling over time; odd tails repeat the last step.

    The winning positions are frozen from the forward values, so the op is
    locally linear and safe to differentiate twice.
    """
    if x.ndim != 3:
        raise ShapeError(f"maxpool1d expects (B, T, C), got shape {x.shape}")
    b, t, c = x.shape
    t_out = -(-t // width)
    idx = np.arange(t_out)[:, None] * width + np.arange(width)[None, :]
    idx = np.minimum(idx, t - 1)  # clamp: tail gradient folds onto the last step
    windows = gather_time(x, idx)  # (B, Tout, width, C)
    winners = np.argmax(windows.data, axis=2)
    mask = np.zeros(windows.shape, dtype=x.data.dtype)
    np.put_along_axis(mask, winners[:, :, None, :], 1.0, axis=2)
    return tsum(mul_const(windows, mask), axis=2)


def upsample1d(x: Tensor, factor: int = 2) -> Tensor:
    """Nearest-neighbour upsampling over time."""
    if factor < 1:
        raise ContractError(f"upsample factor must be >= 1, got {factor}")
    return repeat_time(x, factor)


def dense(x: Tensor, weight: Tensor, bias: Tensor) -> Tensor:
    """Affine map on feature vectors: (B, Fin) -> (B, Fout)."""
    if x.ndim != 2:
        raise ShapeError(f"dense expects (B, F), got shape {x.shape}")
    out = matmul(x, weight)
    return add(out, broadcast_to(reshape(bias, (1, bias.shape[0])), out.shape))


def flatten(x: Tensor) -> Tensor:
    """(B, ...) -> (B, product of the rest)."""
    b = x.shape[0]
    return reshape(x, (b, int(np.prod(x.shape[1:]))))


def dropout(x: Tensor, rate: float, rng: np.random.Generator) -> Tensor:
    """Inverted dropout; scaling keeps the expectation unchanged."""
    if not 0.0 <= rate < 1.0:
        raise ContractError(f"dropout rate must be in [0, 1), got {rate}")
    if rate == 0.0:
        return x
    keep = 1.0 - rate
    mask = (rng.random(x.shape) < keep).astype(x.data.dtype) / keep
    return mul_const(x, mask)
