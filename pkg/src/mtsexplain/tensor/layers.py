# -*- coding: utf8 -*-
# Copyright (c) 2021 mtsexplain contributors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to
# deal in the Software without restriction, including without limitation the
# rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
# sell copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
# FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
# IN THE SOFTWARE.

"""
Forward and backward implementations of the layer primitives used by the network
architectures. All spatial tensors are laid out as `(batch, channels, time, width)`.

Layers never store activations: #Layer.forward() returns the output together with an
opaque cache that the caller hands back to #Layer.backward(). This keeps every forward
pass invocation-local, so explanations on a frozen model can run concurrently.
"""

import abc
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import ForwardContext, Mode, Padding, Parameter, ShapeError, Tensor, \
  he_uniform, output_length, pad_amounts

__all__ = [
  'Gradients',
  'Layer',
  'Conv2d',
  'Conv1d',
  'Conv1x1',
  'BatchNorm',
  'ReLU',
  'Dropout',
  'ConcatWidth',
  'GlobalAveragePooling1d',
  'Flatten',
  'Dense',
  'ClassifierHead',
]


class Gradients(NamedTuple):
  #: Gradients with respect to each input, in the order the inputs were passed.
  inputs: Tuple[Tensor, ...]
  #: Gradients with respect to each parameter, in #Layer.named_parameters() order.
  params: Tuple[Tensor, ...] = ()


class Layer(metaclass=abc.ABCMeta):

  #: The number of input tensors accepted by #forward().
  arity = 1

  def named_parameters(self) -> List[Tuple[str, Parameter]]:
    return []

  def parameters(self) -> List[Parameter]:
    return [p for _, p in self.named_parameters()]

  def buffers(self) -> Dict[str, Tensor]:
    """
    Non-trainable state that must survive a checkpoint round-trip.
    """

    return {}

  def penalty(self) -> float:
    """
    Regularization term contributed to the training loss.
    """

    return 0.0

  def penalty_gradients(self) -> Tuple[Optional[Tensor], ...]:
    return tuple(None for _ in self.named_parameters())

  def describe(self) -> str:
    return type(self).__name__

  @abc.abstractmethod
  def forward(self, *inputs: Tensor, ctx: ForwardContext) -> Tuple[Tensor, Any]:
    pass

  @abc.abstractmethod
  def backward(self, grad: Tensor, cache: Any) -> Gradients:
    pass


def _check_rank(x: Tensor, rank: int, layer: Layer) -> None:
  if x.ndim != rank:
    raise ShapeError(f'{layer.describe()} expects a rank-{rank} input, got shape {x.shape}')


class _TimeConvolution(Layer):
  """
  Shared machinery for convolutions that slide along the time axis only.
  """

  def __init__(
    self,
    in_channels: int,
    filters: int,
    kernel_h: int,
    stride_h: int = 1,
    padding: Padding = Padding.SAME,
  ) -> None:
    if filters < 1:
      raise ValueError(f'filters must be positive, got {filters}')
    if in_channels < 1:
      raise ValueError(f'in_channels must be positive, got {in_channels}')
    if kernel_h < 1 or stride_h < 1:
      raise ValueError(f'kernel_h and stride_h must be positive, got {kernel_h} and {stride_h}')
    self.in_channels = in_channels
    self.filters = filters
    self.kernel_h = kernel_h
    self.stride_h = stride_h
    self.padding = padding

  def describe(self) -> str:
    return '{}({}->{}, k={}, s={}, {})'.format(type(self).__name__, self.in_channels,
      self.filters, self.kernel_h, self.stride_h, self.padding.value)

  def _windows(self, x: Tensor) -> Tuple[Tensor, Tuple[int, ...], int]:
    _check_rank(x, 4, self)
    if x.shape[1] != self.in_channels:
      raise ShapeError(f'{self.describe()} got {x.shape[1]} input channels')
    length = x.shape[2]
    out_len = output_length(length, self.kernel_h, self.stride_h, self.padding)
    before, after = pad_amounts(length, self.kernel_h, self.stride_h, self.padding)
    xp = np.pad(x, ((0, 0), (0, 0), (before, after), (0, 0)))
    # (batch, channel, out_time, width, kernel)
    win = sliding_window_view(xp, self.kernel_h, axis=2)[:, :, ::self.stride_h][:, :, :out_len]
    return win, xp.shape, before

  def _fold(self, dwin: Tensor, xp_shape: Tuple[int, ...], before: int, length: int) -> Tensor:
    dxp = np.zeros(xp_shape)
    span = self.stride_h * (dwin.shape[2] - 1) + 1
    for u in range(self.kernel_h):
      dxp[:, :, u:u + span:self.stride_h, :] += dwin[..., u]
    return dxp[:, :, before:before + length, :]


class Conv2d(_TimeConvolution):
  """
  `kernel_h × 1` filters applied to every observed variable independently. The output
  keeps the width of the input.
  """

  def __init__(
    self,
    in_channels: int,
    filters: int,
    kernel_h: int,
    stride_h: int = 1,
    padding: Padding = Padding.SAME,
    rng: Optional[np.random.Generator] = None,
  ) -> None:
    super().__init__(in_channels, filters, kernel_h, stride_h, padding)
    rng = rng if rng is not None else np.random.default_rng(0)
    fan_in = in_channels * kernel_h
    self.weight = Parameter(he_uniform(rng, (filters, in_channels, kernel_h), fan_in))
    self.bias = Parameter(np.zeros(filters))

  def named_parameters(self):
    return [('weight', self.weight), ('bias', self.bias)]

  def forward(self, x, *, ctx):
    win, xp_shape, before = self._windows(x)
    y = np.einsum('bctwu,fcu->bftw', win, self.weight.value, optimize=True)
    y += self.bias.value[None, :, None, None]
    return y, (win, xp_shape, before, x.shape[2])

  def backward(self, grad, cache):
    win, xp_shape, before, length = cache
    dw = np.einsum('bftw,bctwu->fcu', grad, win, optimize=True)
    db = grad.sum(axis=(0, 2, 3))
    dwin = np.einsum('bftw,fcu->bctwu', grad, self.weight.value, optimize=True)
    return Gradients((self._fold(dwin, xp_shape, before, length),), (dw, db))


class Conv1d(_TimeConvolution):
  """
  `kernel_h × in_width` filters spanning the full width of the input; the output has
  width 1.
  """

  def __init__(
    self,
    in_channels: int,
    filters: int,
    kernel_h: int,
    in_width: int,
    stride_h: int = 1,
    padding: Padding = Padding.SAME,
    rng: Optional[np.random.Generator] = None,
  ) -> None:
    super().__init__(in_channels, filters, kernel_h, stride_h, padding)
    if in_width < 1:
      raise ValueError(f'in_width must be positive, got {in_width}')
    rng = rng if rng is not None else np.random.default_rng(0)
    self.in_width = in_width
    fan_in = in_channels * kernel_h * in_width
    self.weight = Parameter(he_uniform(rng, (filters, in_channels, kernel_h, in_width), fan_in))
    self.bias = Parameter(np.zeros(filters))

  def named_parameters(self):
    return [('weight', self.weight), ('bias', self.bias)]

  def forward(self, x, *, ctx):
    _check_rank(x, 4, self)
    if x.shape[3] != self.in_width:
      raise ShapeError(f'{self.describe()} spans width {self.in_width}, got {x.shape[3]}')
    win, xp_shape, before = self._windows(x)
    y = np.einsum('bctwu,fcuw->bft', win, self.weight.value, optimize=True)
    y += self.bias.value[None, :, None]
    return y[..., None], (win, xp_shape, before, x.shape[2])

  def backward(self, grad, cache):
    win, xp_shape, before, length = cache
    g = grad[..., 0]
    dw = np.einsum('bft,bctwu->fcuw', g, win, optimize=True)
    db = g.sum(axis=(0, 2))
    dwin = np.einsum('bft,fcuw->bctwu', g, self.weight.value, optimize=True)
    return Gradients((self._fold(dwin, xp_shape, before, length),), (dw, db))


class Conv1x1(Layer):
  """
  Learned channel-wise pooling that projects `C` feature maps into one.
  """

  def __init__(self, in_channels: int, rng: Optional[np.random.Generator] = None) -> None:
    if in_channels < 1:
      raise ValueError(f'in_channels must be positive, got {in_channels}')
    rng = rng if rng is not None else np.random.default_rng(0)
    self.in_channels = in_channels
    self.weight = Parameter(he_uniform(rng, (in_channels,), in_channels))
    self.bias = Parameter(np.zeros(1))

  def named_parameters(self):
    return [('weight', self.weight), ('bias', self.bias)]

  def describe(self):
    return f'Conv1x1({self.in_channels}->1)'

  def forward(self, x, *, ctx):
    _check_rank(x, 4, self)
    if x.shape[1] != self.in_channels:
      raise ShapeError(f'{self.describe()} got {x.shape[1]} input channels')
    y = np.einsum('bctw,c->btw', x, self.weight.value)[:, None] + self.bias.value[0]
    return y, x

  def backward(self, grad, cache):
    x = cache
    dw = np.einsum('btw,bctw->c', grad[:, 0], x)
    db = np.array([grad.sum()])
    dx = grad * self.weight.value[None, :, None, None]
    return Gradients((dx,), (dw, db))


class BatchNorm(Layer):
  """
  Per-channel normalization over `(batch, time, width)`. Running statistics follow
  `running = momentum * running + (1 - momentum) * batch` and are only updated in
  #Mode.TRAIN.

  A layer trained on single-sample batches never saw cross-sample statistics, so with
  #per_sample set, #Mode.INFERENCE normalizes every sample over its own `(time, width)`
  extent instead of using the running statistics.
  """

  def __init__(self, channels: int, eps: float = 1e-5, momentum: float = 0.99) -> None:
    if eps <= 0:
      raise ValueError(f'eps must be positive, got {eps}')
    self.channels = channels
    self.eps = eps
    self.momentum = momentum
    self.gamma = Parameter(np.ones(channels))
    self.beta = Parameter(np.zeros(channels))
    self.running_mean = np.zeros(channels)
    self.running_var = np.ones(channels)
    self.sample_stats = np.zeros(1)

  @property
  def per_sample(self) -> bool:
    return bool(self.sample_stats[0])

  @per_sample.setter
  def per_sample(self, value: bool) -> None:
    self.sample_stats[0] = 1.0 if value else 0.0

  def named_parameters(self):
    return [('gamma', self.gamma), ('beta', self.beta)]

  def buffers(self):
    return {'running_mean': self.running_mean, 'running_var': self.running_var, 'sample_stats': self.sample_stats}

  def describe(self):
    return f'BatchNorm({self.channels})'

  def forward(self, x, *, ctx):
    _check_rank(x, 4, self)
    bc = (None, slice(None), None, None)
    axes: Optional[Tuple[int, ...]] = (0, 2, 3)
    if ctx.mode == Mode.INFERENCE:
      axes = (2, 3) if self.per_sample else None
    if axes is not None:
      mean = x.mean(axis=axes, keepdims=True)
      var = x.var(axis=axes, keepdims=True)
      if ctx.mode == Mode.TRAIN:
        self.running_mean *= self.momentum
        self.running_mean += (1.0 - self.momentum) * mean.reshape(-1)
        self.running_var *= self.momentum
        self.running_var += (1.0 - self.momentum) * var.reshape(-1)
    else:
      mean, var = self.running_mean[bc], self.running_var[bc]
    inv_std = 1.0 / np.sqrt(var + self.eps)
    xhat = (x - mean) * inv_std
    y = self.gamma.value[bc] * xhat + self.beta.value[bc]
    return y, (xhat, inv_std, axes)

  def backward(self, grad, cache):
    xhat, inv_std, axes = cache
    bc = (None, slice(None), None, None)
    dgamma = (grad * xhat).sum(axis=(0, 2, 3))
    dbeta = grad.sum(axis=(0, 2, 3))
    dxhat = grad * self.gamma.value[bc]
    if axes is None:
      dx = dxhat * inv_std
    else:
      n = int(np.prod([grad.shape[a] for a in axes]))
      dx = (inv_std / n) * (n * dxhat - dxhat.sum(axis=axes, keepdims=True)
        - xhat * (dxhat * xhat).sum(axis=axes, keepdims=True))
    return Gradients((dx,), (dgamma, dbeta))


class ReLU(Layer):
  """
  Elementwise `max(0, x)`. The subgradient at exactly zero is zero.
  """

  def forward(self, x, *, ctx):
    mask = x > 0
    return np.where(mask, x, 0.0), mask

  def backward(self, grad, cache):
    return Gradients((grad * cache,))


class Dropout(Layer):
  """
  Inverted dropout: survivors are scaled by `1 / (1 - rate)` at train time so that
  inference is the identity.
  """

  def __init__(self, rate: float) -> None:
    if not 0.0 <= rate < 1.0:
      raise ValueError(f'dropout rate must be in [0, 1), got {rate}')
    self.rate = rate

  def describe(self):
    return f'Dropout({self.rate})'

  def forward(self, x, *, ctx):
    if ctx.mode != Mode.TRAIN or self.rate == 0.0:
      return x, None
    if ctx.rng is None:
      raise ValueError('dropout in train mode requires a random generator')
    keep = ctx.rng.random(x.shape) >= self.rate
    scale = keep / (1.0 - self.rate)
    return x * scale, scale

  def backward(self, grad, cache):
    return Gradients((grad if cache is None else grad * cache,))


class ConcatWidth(Layer):
  """
  Appends the columns of the second input after those of the first.
  """

  arity = 2

  def forward(self, a, b, *, ctx):
    _check_rank(a, 4, self)
    _check_rank(b, 4, self)
    if a.shape[:3] != b.shape[:3]:
      raise ShapeError(f'cannot concatenate shapes {a.shape} and {b.shape}: mismatched leading axes')
    return np.concatenate([a, b], axis=3), a.shape[3]

  def backward(self, grad, cache):
    width = cache
    return Gradients((grad[..., :width], grad[..., width:]))


class GlobalAveragePooling1d(Layer):
  """
  Per-channel mean over the time axis of a width-1 feature map.
  """

  def forward(self, x, *, ctx):
    _check_rank(x, 4, self)
    if x.shape[3] != 1:
      raise ShapeError(f'global average pooling expects width 1, got {x.shape[3]}')
    return x[..., 0].mean(axis=2), x.shape[2]

  def backward(self, grad, cache):
    length = cache
    dx = np.repeat(grad[:, :, None, None] / length, length, axis=2)
    return Gradients((dx,))


class Flatten(Layer):

  def forward(self, x, *, ctx):
    return x.reshape(x.shape[0], -1), x.shape

  def backward(self, grad, cache):
    return Gradients((grad.reshape(cache),))


class Dense(Layer):
  """
  Fully connected layer `y = x W + b`. A positive *l2* adds `l2 * sum(W ** 2)` to the
  training loss.
  """

  def __init__(
    self,
    in_features: int,
    out_features: int,
    l2: float = 0.0,
    rng: Optional[np.random.Generator] = None,
  ) -> None:
    if in_features < 1 or out_features < 1:
      raise ValueError(f'dense dimensions must be positive, got {in_features}->{out_features}')
    rng = rng if rng is not None else np.random.default_rng(0)
    self.in_features = in_features
    self.out_features = out_features
    self.l2 = l2
    self.weight = Parameter(he_uniform(rng, (in_features, out_features), in_features))
    self.bias = Parameter(np.zeros(out_features))

  def named_parameters(self):
    return [('weight', self.weight), ('bias', self.bias)]

  def describe(self):
    return f'{type(self).__name__}({self.in_features}->{self.out_features})'

  def penalty(self):
    return self.l2 * float(np.sum(self.weight.value ** 2)) if self.l2 else 0.0

  def penalty_gradients(self):
    if not self.l2:
      return (None, None)
    return (2.0 * self.l2 * self.weight.value, None)

  def forward(self, x, *, ctx):
    _check_rank(x, 2, self)
    if x.shape[1] != self.in_features:
      raise ShapeError(f'{self.describe()} got {x.shape[1]} features')
    return x @ self.weight.value + self.bias.value, x

  def backward(self, grad, cache):
    x = cache
    return Gradients((grad @ self.weight.value.T,), (x.T @ grad, grad.sum(axis=0)))


class ClassifierHead(Dense):
  """
  The linear map in front of the softmax. Its outputs are the pre-softmax class scores.
  """

  def __init__(self, in_features: int, classes: int, rng: Optional[np.random.Generator] = None) -> None:
    if classes < 2:
      raise ValueError(f'a classifier needs at least 2 classes, got {classes}')
    super().__init__(in_features, classes, rng=rng)
