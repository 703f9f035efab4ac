from .tensor import (
    Tensor,
    add,
    backward_pass,
    broadcast_to,
    clip,
    concat,
    cross_entropy,
    div,
    enable_grad,
    grad,
    grad_enabled,
    leaky_relu,
    log_softmax,
    matmul,
    mul,
    mul_const,
    narrow,
    neg,
    no_grad,
    pad_axis,
    power,
    relu,
    reshape,
    sigmoid,
    softmax,
    tanh,
    texp,
    tlog,
    tmean,
    tsqrt,
    tsum,
    transpose2d,
)
from .ops import conv1d, conv_output_length, conv_padding, dense, dropout, flatten, maxpool1d, upsample1d
from .layers import (
    Activation,
    BatchNorm,
    Conv1D,
    Dense,
    Dropout,
    Flatten,
    Layer,
    MaxPool,
    Reshape,
    Sequential,
    Upsample,
    layer_from_spec,
)
from .optim import SGD, Adam
from .divergence import js_divergence, kl_divergence
from .gradcheck import check_gradients, numeric_gradient, relative_error
from .checkpoint import load_model, save_model
