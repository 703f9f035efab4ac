"""Composable layers over the autodiff tensors.

Each layer knows its trainable parameters, a JSON-friendly ``spec()``
used as an architecture fingerprint in checkpoints, and how to rebuild
itself from that spec. Stateful layers (batch norm) also carry buffers.
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractError, DegenerateBatchError, ShapeError
from .ops import conv1d, dense, dropout, flatten, maxpool1d, upsample1d
from .tensor import (
    Tensor,
    add,
    broadcast_to,
    default_dtype,
    div,
    leaky_relu,
    mul,
    neg,
    relu,
    reshape,
    sigmoid,
    tanh,
    tmean,
    tsqrt,
)

ACTIVATIONS = {
    "relu": relu,
    "leaky_relu": lambda x: leaky_relu(x, 0.2),
    "tanh": tanh,
    "sigmoid": sigmoid,
}


def glorot_uniform(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape).astype(default_dtype())


class Layer:
    name = "layer"

    def forward(self, x: Tensor, training: bool = False, rng: np.random.Generator | None = None) -> Tensor:
        raise NotImplementedError

    def parameters(self) -> list[Tensor]:
        return []

    def spec(self) -> dict:
        return {"layer": self.name}

    def state_arrays(self) -> dict[str, np.ndarray]:
        return {}

    def load_state(self, arrays: dict[str, np.ndarray]) -> None:
        return None


class Dense(Layer):
    name = "dense"

    def __init__(self, fin: int, fout: int, rng: np.random.Generator | None = None):
        self.fin, self.fout = fin, fout
        rng = rng or np.random.default_rng(0)
        self.weight = Tensor(glorot_uniform(rng, (fin, fout), fin, fout), requires_grad=True)
        self.bias = Tensor(np.zeros(fout, dtype=default_dtype()), requires_grad=True)

    def forward(self, x, training=False, rng=None):
        return dense(x, self.weight, self.bias)

    def parameters(self):
        return [self.weight, self.bias]

    def spec(self):
        return {"layer": self.name, "fin": self.fin, "fout": self.fout}

    def state_arrays(self):
        return {"weight": self.weight.data, "bias": self.bias.data}

    def load_state(self, arrays):
        self.weight.data = arrays["weight"].astype(default_dtype())
        self.bias.data = arrays["bias"].astype(default_dtype())


class Conv1D(Layer):
    name = "conv1d"

    def __init__(
        self,
        kernel: int,
        cin: int,
        cout: int,
        stride: int = 1,
        spacing: int = 0,
        rng: np.random.Generator | None = None,
    ):
        self.kernel, self.cin, self.cout = kernel, cin, cout
        self.stride, self.spacing = stride, spacing
        rng = rng or np.random.default_rng(0)
        self.weight = Tensor(
            glorot_uniform(rng, (kernel, cin, cout), kernel * cin, kernel * cout),
            requires_grad=True,
        )
        self.bias = Tensor(np.zeros(cout, dtype=default_dtype()), requires_grad=True)

    def forward(self, x, training=False, rng=None):
        return conv1d(x, self.weight, self.bias, stride=self.stride, spacing=self.spacing)

    def parameters(self):
        return [self.weight, self.bias]

    def spec(self):
        return {
            "layer": self.name,
            "kernel": self.kernel,
            "cin": self.cin,
            "cout": self.cout,
            "stride": self.stride,
            "spacing": self.spacing,
        }

    def state_arrays(self):
        return {"weight": self.weight.data, "bias": self.bias.data}

    def load_state(self, arrays):
        self.weight.data = arrays["weight"].astype(default_dtype())
        self.bias.data = arrays["bias"].astype(default_dtype())


class BatchNorm(Layer):
    """Per-feature normalisation with running statistics for evaluation.

    Works on (B, F) feature vectors and (B, T, C) sequences; for sequences
    the statistics pool over batch and time.
    """

    name = "batchnorm"

    def __init__(self, features: int, momentum: float = 0.9, eps: float = 1e-5):
        self.features = features
        self.momentum = momentum
        self.eps = eps
        self.gamma = Tensor(np.ones(features, dtype=default_dtype()), requires_grad=True)
        self.beta = Tensor(np.zeros(features, dtype=default_dtype()), requires_grad=True)
        self.running_mean = np.zeros(features, dtype=default_dtype())
        self.running_var = np.ones(features, dtype=default_dtype())

    def forward(self, x, training=False, rng=None):
        if x.ndim == 2:
            axes: tuple[int, ...] = (0,)
            pshape = (1, self.features)
        elif x.ndim == 3:
            axes = (0, 1)
            pshape = (1, 1, self.features)
        else:
            raise ShapeError(f"batchnorm expects 2- or 3-d input, got shape {x.shape}")
        if x.shape[-1] != self.features:
            raise ShapeError(f"batchnorm feature mismatch: {x.shape[-1]} != {self.features}")

        if training:
            if x.shape[0] < 2:
                raise DegenerateBatchError("batch statistics need at least 2 samples")
            mean = tmean(x, axis=axes, keepdims=True)
            centred = add(x, neg(broadcast_to(mean, x.shape)))
            var = tmean(mul(centred, centred), axis=axes, keepdims=True)
            m = self.momentum
            self.running_mean = m * self.running_mean + (1 - m) * mean.data.reshape(-1)
            self.running_var = m * self.running_var + (1 - m) * var.data.reshape(-1)
            denom = tsqrt(add(var, self.eps))
            normed = div(centred, broadcast_to(denom, x.shape))
        else:
            mean = self.running_mean.reshape(pshape)
            denom = np.sqrt(self.running_var.reshape(pshape) + self.eps)
            normed = Tensor((x.data - mean) / denom)
            if x.requires_grad:
                normed = div(add(x, Tensor(-mean)), Tensor(np.broadcast_to(denom, x.shape).copy()))
        scaled = mul(normed, broadcast_to(reshape(self.gamma, pshape), x.shape))
        return add(scaled, broadcast_to(reshape(self.beta, pshape), x.shape))

    def parameters(self):
        return [self.gamma, self.beta]

    def spec(self):
        return {"layer": self.name, "features": self.features, "momentum": self.momentum, "eps": self.eps}

    def state_arrays(self):
        return {
            "gamma": self.gamma.data,
            "beta": self.beta.data,
            "running_mean": self.running_mean,
            "running_var": self.running_var,
        }

    def load_state(self, arrays):
        self.gamma.data = arrays["gamma"].astype(default_dtype())
        self.beta.data = arrays["beta"].astype(default_dtype())
        self.running_mean = arrays["running_mean"].astype(default_dtype())
        self.running_var = arrays["running_var"].astype(default_dtype())


class Activation(Layer):
    name = "activation"

    def __init__(self, kind: str):
        if kind not in ACTIVATIONS:
            raise ContractError(f"unknown activation {kind!r}")
        self.kind = kind

    def forward(self, x, training=False, rng=None):
        return ACTIVATIONS[self.kind](x)

    def spec(self):
        return {"layer": self.name, "kind": self.kind}


class MaxPool(Layer):
    name = "maxpool"

    def __init__(self, width: int = 2):
        self.width = width

    def forward(self, x, training=False, rng=None):
        return maxpool1d(x, self.width)

    def spec(self):
        return {"layer": self.name, "width": self.width}


class Upsample(Layer):
    name = "upsample"

    def __init__(self, factor: int = 2):
        self.factor = factor

    def forward(self, x, training=False, rng=None):
        return upsample1d(x, self.factor)

    def spec(self):
        return {"layer": self.name, "factor": self.factor}


class Flatten(Layer):
    name = "flatten"

    def forward(self, x, training=False, rng=None):
        return flatten(x)


class Reshape(Layer):
    name = "reshape"

    def __init__(self, shape: tuple[int, ...]):
        self.shape = tuple(int(n) for n in shape)

    def forward(self, x, training=False, rng=None):
        return reshape(x, (x.shape[0],) + self.shape)

    def spec(self):
        return {"layer": self.name, "shape": list(self.shape)}


class Dropout(Layer):
    name = "dropout"

    def __init__(self, rate: float):
        self.rate = rate

    def forward(self, x, training=False, rng=None):
        if not training or self.rate == 0.0:
            return x
        if rng is None:
            raise ContractError("dropout in training mode needs an rng")
        return dropout(x, self.rate, rng)

    def spec(self):
        return {"layer": self.name, "rate": self.rate}


_LAYER_TYPES = {
    cls.name: cls
    for cls in (Dense, Conv1D, BatchNorm, Activation, MaxPool, Upsample, Flatten, Reshape, Dropout)
}


def layer_from_spec(spec: dict) -> Layer:
    kind = spec.get("layer")
    if kind not in _LAYER_TYPES:
        raise ContractError(f"unknown layer kind {kind!r}")
    args = {k: v for k, v in spec.items() if k != "layer"}
    if kind == "reshape":
        args["shape"] = tuple(args["shape"])
    return _LAYER_TYPES[kind](**args)


class Sequential:
    """A forward chain of layers with shared parameter bookkeeping."""

    def __init__(self, layers: list[Layer]):
        self.layers = list(layers)

    def forward(self, x: Tensor, training: bool = False, rng: np.random.Generator | None = None) -> Tensor:
        for layer in self.layers:
            x = layer.forward(x, training=training, rng=rng)
        return x

    __call__ = forward

    def parameters(self) -> list[Tensor]:
        out: list[Tensor] = []
        for layer in self.layers:
            out.extend(layer.parameters())
        return out

    def num_parameters(self) -> int:
        return sum(p.size for p in self.parameters())

    def spec(self) -> list[dict]:
        return [layer.spec() for layer in self.layers]

    def state_arrays(self) -> dict[str, np.ndarray]:
        out = {}
        for i, layer in enumerate(self.layers):
            for key, arr in layer.state_arrays().items():
                out[f"layer{i:03d}.{key}"] = arr
        return out

    def load_state(self, arrays: dict[str, np.ndarray]) -> None:
        for i, layer in enumerate(self.layers):
            prefix = f"layer{i:03d}."
            local = {
                key[len(prefix):]: arr for key, arr in arrays.items() if key.startswith(prefix)
            }
            if local:
                layer.load_state(local)

    @classmethod
    def from_spec(cls, specs: list[dict]) -> "Sequential":
        return cls([layer_from_spec(s) for s in specs])
