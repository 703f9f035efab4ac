"""Dense tensors with reverse-mode automatic differentiation.

Values are numpy arrays (float64 by default, float32 optional). Each
operation records its inputs and a vector-Jacobian product; the vjp is
itself written with Tensor operations, so running a backward pass with
``create_graph=True`` yields gradients that can be differentiated again
(needed for the gradient-penalty term of the WGAN critic loss).
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from typing import Callable, Iterable, Sequence

import numpy as np

from ..errors import ContractError, NumericalError, ShapeError

_GRAD_MODE = [True]

# when True, every gradient produced during a backward pass is checked
# for NaN and the offending node is named in the raised error
NAN_GUARD = True

_DEFAULT_DTYPE = np.float64


def set_default_dtype(dtype) -> None:
    """Switch value precision (float64 for testing, float32 for speed)."""
    global _DEFAULT_DTYPE
    dtype = np.dtype(dtype)
    if dtype not in (np.dtype(np.float32), np.dtype(np.float64)):
        raise ContractError(f"unsupported dtype {dtype}")
    _DEFAULT_DTYPE = dtype.type


def default_dtype():
    return _DEFAULT_DTYPE


@contextmanager
def no_grad():
    _GRAD_MODE.append(False)
    try:
        yield
    finally:
        _GRAD_MODE.pop()


@contextmanager
def enable_grad():
    _GRAD_MODE.append(True)
    try:
        yield
    finally:
        _GRAD_MODE.pop()


def grad_enabled() -> bool:
    return _GRAD_MODE[-1]


class Tensor:
    __slots__ = ("data", "requires_grad", "grad", "op", "_prev", "_vjp")

    def __init__(self, data, requires_grad: bool = False):
        arr = np.asarray(data)
        if arr.dtype.kind != "f":
            arr = arr.astype(_DEFAULT_DTYPE)
        self.data = arr
        self.requires_grad = bool(requires_grad)
        self.grad: np.ndarray | None = None
        self.op = "leaf"
        self._prev: tuple[Tensor, ...] = ()
        self._vjp: Callable[[Tensor], tuple[Tensor | None, ...]] | None = None

    # -- basic introspection ------------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    def __repr__(self) -> str:
        return f"Tensor(op={self.op}, shape={self.shape}, requires_grad={self.requires_grad})"

    def item(self) -> float:
        return float(self.data.reshape(()))

    def detach(self) -> "Tensor":
        return Tensor(self.data)

    def zero_grad(self) -> None:
        self.grad = None

    # -- operators ----------------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __mul__(self, other):
        return mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(_ensure(other)))

    def __rsub__(self, other):
        return add(_ensure(other), neg(self))

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_ensure(other), self)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __matmul__(self, other):
        return matmul(self, other)

    def sum(self, axis=None, keepdims=False):
        return tsum(self, axis=axis, keepdims=keepdims)

    def mean(self, axis=None, keepdims=False):
        return tmean(self, axis=axis, keepdims=keepdims)

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return reshape(self, shape)

    def backward(self) -> None:
        """Accumulate d(self)/d(leaf) into the .grad of every leaf tensor."""
        if self.size != 1:
            raise ContractError(f"backward requires a scalar, got shape {self.shape}")
        grads = backward_pass(self, Tensor(np.ones_like(self.data)), create_graph=False)
        for node, g in grads.items():
            if node.requires_grad and node._vjp is None:
                node.grad = g.data.copy() if node.grad is None else node.grad + g.data


def _ensure(value) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def _make(data: np.ndarray, inputs: Sequence[Tensor], vjp, op: str) -> Tensor:
    out = Tensor(data)
    if grad_enabled() and any(t.requires_grad for t in inputs):
        out.requires_grad = True
        out._prev = tuple(inputs)
        out._vjp = vjp
        out.op = op
    return out


# -- backward machinery -----------------------------------------------------


def _topo_order(root: Tensor) -> list[Tensor]:
    """Post-order over the recorded graph; every node appears exactly once."""
    order: list[Tensor] = []
    seen: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for child in node._prev:
            if child.requires_grad and id(child) not in seen:
                stack.append((child, False))
    return order


def backward_pass(root: Tensor, seed: Tensor, create_graph: bool) -> dict[Tensor, Tensor]:
    """Run reverse-mode accumulation from `root`; returns node -> gradient."""
    mode = enable_grad if create_graph else no_grad
    grads: dict[int, Tensor] = {id(root): seed}
    by_id: dict[int, Tensor] = {id(root): root}
    result: dict[Tensor, Tensor] = {}
    with mode():
        for node in reversed(_topo_order(root)):
            g = grads.pop(id(node), None)
            by_id.pop(id(node), None)
            if g is None:
                continue
            if NAN_GUARD and not np.all(np.isfinite(g.data)):
                raise NumericalError(f"non-finite gradient at node {node.op!r}")
            result[node] = g
            if node._vjp is None:
                continue
            input_grads = node._vjp(g)
            for inp, gi in zip(node._prev, input_grads):
                if gi is None or not inp.requires_grad:
                    continue
                prev = grads.get(id(inp))
                grads[id(inp)] = gi if prev is None else add(prev, gi)
                by_id[id(inp)] = inp
    return result


def grad(
    output: Tensor,
    wrt: Iterable[Tensor],
    create_graph: bool = False,
) -> list[Tensor]:
    """Gradients of a scalar `output` for each tensor in `wrt`.

    Does not touch .grad; with create_graph=True the returned tensors are
    part of the graph and can be differentiated again.
    """
    if output.size != 1:
        raise ContractError(f"grad requires a scalar output, got shape {output.shape}")
    grads = backward_pass(output, Tensor(np.ones_like(output.data)), create_graph)
    out = []
    for w in wrt:
        g = grads.get(w)
        if g is None:
            g = Tensor(np.zeros_like(w.data))
        out.append(g)
    return out


# -- shape helpers ----------------------------------------------------------


def _unbroadcast(g: Tensor, shape: tuple[int, ...]) -> Tensor:
    """Reduce a broadcast gradient back to `shape`."""
    if g.shape == shape:
        return g
    extra = g.ndim - len(shape)
    if extra > 0:
        g = tsum(g, axis=tuple(range(extra)), keepdims=False)
    axes = tuple(i for i, n in enumerate(shape) if n == 1 and g.shape[i] != 1)
    if axes:
        g = tsum(g, axis=axes, keepdims=True)
    if g.shape != shape:
        g = reshape(g, shape)
    return g


# -- elementwise primitives ---------------------------------------------------


def add(a, b) -> Tensor:
    a, b = _ensure(a), _ensure(b)

    def vjp(g: Tensor):
        return _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)

    return _make(a.data + b.data, (a, b), vjp, "add")


def neg(a) -> Tensor:
    a = _ensure(a)
    return _make(-a.data, (a,), lambda g: (neg(g),), "neg")


def mul(a, b) -> Tensor:
    a, b = _ensure(a), _ensure(b)

    def vjp(g: Tensor):
        return _unbroadcast(mul(g, b), a.shape), _unbroadcast(mul(g, a), b.shape)

    return _make(a.data * b.data, (a, b), vjp, "mul")


def div(a, b) -> Tensor:
    a, b = _ensure(a), _ensure(b)

    def vjp(g: Tensor):
        ga = _unbroadcast(div(g, b), a.shape)
        gb = _unbroadcast(neg(div(mul(g, a), mul(b, b))), b.shape)
        return ga, gb

    return _make(a.data / b.data, (a, b), vjp, "div")


def power(a, exponent: float) -> Tensor:
    a = _ensure(a)
    exponent = float(exponent)

    def vjp(g: Tensor):
        return (mul(g, mul_const(power(a, exponent - 1.0), exponent)),)

    return _make(a.data**exponent, (a,), vjp, "pow")


def mul_const(a: Tensor, c: float | np.ndarray) -> Tensor:
    a = _ensure(a)
    return _make(a.data * c, (a,), lambda g: (mul_const(g, c),), "mul_const")


def texp(a) -> Tensor:
    a = _ensure(a)
    out = _make(np.exp(a.data), (a,), None, "exp")
    if out._prev or (grad_enabled() and a.requires_grad):
        out._vjp = lambda g: (mul(g, out),)
    return out


def tlog(a) -> Tensor:
    a = _ensure(a)
    return _make(np.log(a.data), (a,), lambda g: (div(g, a),), "log")


def tsqrt(a) -> Tensor:
    a = _ensure(a)
    out = _make(np.sqrt(a.data), (a,), None, "sqrt")
    if out.requires_grad:
        out._vjp = lambda g: (div(mul_const(g, 0.5), out),)
    return out


def tanh(a) -> Tensor:
    a = _ensure(a)
    out = _make(np.tanh(a.data), (a,), None, "tanh")
    if out.requires_grad:
        out._vjp = lambda g: (mul(g, add(1.0, neg(mul(out, out)))),)
    return out


def sigmoid(a) -> Tensor:
    a = _ensure(a)
    out = _make(1.0 / (1.0 + np.exp(-a.data)), (a,), None, "sigmoid")
    if out.requires_grad:
        out._vjp = lambda g: (mul(g, mul(out, add(1.0, neg(out)))),)
    return out


def relu(a) -> Tensor:
    a = _ensure(a)
    mask = (a.data > 0).astype(a.data.dtype)
    return _make(a.data * mask, (a,), lambda g: (mul_const(g, mask),), "relu")


def leaky_relu(a, slope: float = 0.2) -> Tensor:
    a = _ensure(a)
    mask = np.where(a.data > 0, 1.0, slope).astype(a.data.dtype)
    return _make(a.data * mask, (a,), lambda g: (mul_const(g, mask),), "leaky_relu")


def clip(a, lo: float, hi: float) -> Tensor:
    a = _ensure(a)
    mask = ((a.data >= lo) & (a.data <= hi)).astype(a.data.dtype)
    return _make(np.clip(a.data, lo, hi), (a,), lambda g: (mul_const(g, mask),), "clip")


# -- reductions and shape ops -------------------------------------------------


def tsum(a, axis=None, keepdims: bool = False) -> Tensor:
    a = _ensure(a)
    if isinstance(axis, int):
        axis = (axis,)

    def vjp(g: Tensor):
        if axis is None:
            return (broadcast_to(reshape(g, (1,) * a.ndim), a.shape),)
        if keepdims:
            return (broadcast_to(g, a.shape),)
        kept = list(g.shape)
        for ax in sorted(ax % a.ndim for ax in axis):
            kept.insert(ax, 1)
        return (broadcast_to(reshape(g, tuple(kept)), a.shape),)

    return _make(np.sum(a.data, axis=axis, keepdims=keepdims), (a,), vjp, "sum")


def tmean(a, axis=None, keepdims: bool = False) -> Tensor:
    a = _ensure(a)
    if axis is None:
        count = a.size
    else:
        axes = (axis,) if isinstance(axis, int) else axis
        count = 1
        for ax in axes:
            count *= a.shape[ax]
    return mul_const(tsum(a, axis=axis, keepdims=keepdims), 1.0 / count)


def reshape(a, shape: tuple[int, ...]) -> Tensor:
    a = _ensure(a)
    orig = a.shape
    return _make(a.data.reshape(shape), (a,), lambda g: (reshape(g, orig),), "reshape")


def broadcast_to(a, shape: tuple[int, ...]) -> Tensor:
    a = _ensure(a)
    orig = a.shape

    def vjp(g: Tensor):
        return (_unbroadcast(g, orig),)

    return _make(np.broadcast_to(a.data, shape).copy(), (a,), vjp, "broadcast")


def transpose2d(a) -> Tensor:
    a = _ensure(a)
    if a.ndim != 2:
        raise ShapeError(f"transpose2d expects a matrix, got shape {a.shape}")
    return _make(a.data.T.copy(), (a,), lambda g: (transpose2d(g),), "transpose")


def matmul(a, b) -> Tensor:
    a, b = _ensure(a), _ensure(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"matmul expects matrices, got {a.shape} @ {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul inner dims differ: {a.shape} @ {b.shape}")

    def vjp(g: Tensor):
        return matmul(g, transpose2d(b)), matmul(transpose2d(a), g)

    return _make(a.data @ b.data, (a, b), vjp, "matmul")


def concat(tensors: Sequence[Tensor], axis: int) -> Tensor:
    tensors = [_ensure(t) for t in tensors]
    sizes = [t.shape[axis] for t in tensors]
    offsets = np.cumsum([0] + sizes)

    def vjp(g: Tensor):
        return tuple(
            narrow(g, axis, int(offsets[i]), sizes[i]) for i in range(len(tensors))
        )

    return _make(np.concatenate([t.data for t in tensors], axis=axis), tensors, vjp, "concat")


def narrow(a, axis: int, start: int, length: int) -> Tensor:
    a = _ensure(a)
    total = a.shape[axis]
    index = [slice(None)] * a.ndim
    index[axis] = slice(start, start + length)

    def vjp(g: Tensor):
        return (pad_axis(g, axis, start, total - start - length),)

    return _make(a.data[tuple(index)].copy(), (a,), vjp, "narrow")


def pad_axis(a, axis: int, before: int, after: int) -> Tensor:
    a = _ensure(a)
    widths = [(0, 0)] * a.ndim
    widths[axis] = (before, after)
    length = a.shape[axis]

    def vjp(g: Tensor):
        return (narrow(g, axis, before, length),)

    return _make(np.pad(a.data, widths), (a,), vjp, "pad")


def gather_time(a, idx: np.ndarray) -> Tensor:
    """Index axis 1 of a (B, T, C) tensor with an integer array idx (T', K)."""
    a = _ensure(a)
    if a.ndim != 3:
        raise ShapeError(f"gather_time expects (B, T, C), got shape {a.shape}")
    T = a.shape[1]

    def vjp(g: Tensor):
        return (scatter_time(g, idx, T),)

    return _make(a.data[:, idx, :], (a,), vjp, "gather_time")


def scatter_time(g, idx: np.ndarray, length: int) -> Tensor:
    """Adjoint of gather_time: sum-scatter (B, T', K, C) back onto (B, length, C)."""
    g = _ensure(g)
    out = np.zeros((g.shape[0], length, g.shape[3]), dtype=g.data.dtype)
    np.add.at(out, (slice(None), idx), g.data)

    def vjp(gg: Tensor):
        return (gather_time(gg, idx),)

    return _make(out, (g,), vjp, "scatter_time")


def repeat_time(a, factor: int) -> Tensor:
    """Repeat each step along axis 1 of a (B, T, C) tensor `factor` times."""
    a = _ensure(a)
    if a.ndim != 3:
        raise ShapeError(f"repeat_time expects (B, T, C), got shape {a.shape}")
    B, T, C = a.shape

    def vjp(g: Tensor):
        return (tsum(reshape(g, (B, T, factor, C)), axis=2),)

    return _make(np.repeat(a.data, factor, axis=1), (a,), vjp, "repeat_time")


# -- composite activations ----------------------------------------------------


def softmax(a, axis: int = -1) -> Tensor:
    a = _ensure(a)
    # constant shift for stability; softmax is invariant to it so the
    # gradient ignoring the shift's input-dependence is exact
    shift = np.max(a.data, axis=axis, keepdims=True)
    e = texp(add(a, Tensor(-shift)))
    return div(e, tsum(e, axis=axis, keepdims=True))


def log_softmax(a, axis: int = -1) -> Tensor:
    a = _ensure(a)
    shift = np.max(a.data, axis=axis, keepdims=True)
    s = add(a, Tensor(-shift))
    return add(s, neg(tlog(tsum(texp(s), axis=axis, keepdims=True))))


def cross_entropy(logits: Tensor, onehot: np.ndarray) -> Tensor:
    """Mean negative log-likelihood of one-hot targets under softmax(logits)."""
    logp = log_softmax(logits, axis=-1)
    picked = tsum(mul_const(logp, onehot), axis=-1)
    return neg(tmean(picked))


def check_finite(t: Tensor, where: str) -> Tensor:
    if not np.all(np.isfinite(t.data)):
        raise NumericalError(f"non-finite value in {where}")
    return t
