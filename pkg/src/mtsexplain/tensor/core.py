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

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

__all__ = [
  'Tensor',
  'ShapeError',
  'Mode',
  'ForwardContext',
  'Parameter',
  'Padding',
  'output_length',
  'pad_amounts',
  'as_tensor',
  'he_uniform',
]

#: The numeric currency of the package: a dense, row-major float64 array.
Tensor = np.ndarray


class ShapeError(Exception):
  pass


class Mode(enum.Enum):
  TRAIN = enum.auto()  #: Batch statistics with running-stat updates, dropout active.
  INFERENCE = enum.auto()  #: Running statistics, dropout disabled.
  CHECK = enum.auto()  #: Batch statistics without updates, dropout disabled (gradient checks).


@dataclass
class ForwardContext:
  """
  Per-invocation state of a forward pass. The *rng* is only consumed by dropout in
  #Mode.TRAIN and may be #None otherwise.
  """

  mode: Mode = Mode.INFERENCE
  rng: Optional[np.random.Generator] = None


class Parameter:
  """
  A trainable tensor together with its gradient accumulator and the Adam moment estimates.
  """

  def __init__(self, value: Tensor) -> None:
    self.value = np.array(value, dtype=np.float64)
    self.grad = np.zeros_like(self.value)
    self.m = np.zeros_like(self.value)
    self.v = np.zeros_like(self.value)
    self.step = 0

  def __repr__(self):
    return 'Parameter(shape={})'.format(self.value.shape)

  @property
  def size(self) -> int:
    return int(self.value.size)

  @property
  def shape(self) -> Tuple[int, ...]:
    return self.value.shape

  def zero_grad(self) -> None:
    self.grad.fill(0.0)


class Padding(enum.Enum):
  #: Zero padding so that a stride-1 convolution keeps the input extent. An odd total
  #: padding puts the extra element at the end of the axis.
  SAME = 'same'
  VALID = 'valid'


def output_length(length: int, kernel: int, stride: int, padding: Padding) -> int:
  if kernel < 1 or stride < 1:
    raise ValueError(f'kernel and stride must be positive, got kernel={kernel}, stride={stride}')
  if padding == Padding.SAME:
    return int(math.ceil(length / stride))
  if kernel > length:
    raise ShapeError(f'kernel exceeds input ({kernel} > {length})')
  return (length - kernel) // stride + 1


def pad_amounts(length: int, kernel: int, stride: int, padding: Padding) -> Tuple[int, int]:
  """
  Returns the number of zeros to insert before and after an axis of *length* elements.
  """

  if padding == Padding.VALID:
    output_length(length, kernel, stride, padding)
    return 0, 0
  out = output_length(length, kernel, stride, padding)
  total = max((out - 1) * stride + kernel - length, 0)
  before = total // 2
  return before, total - before


def as_tensor(value) -> Tensor:
  return np.asarray(value, dtype=np.float64)


def he_uniform(rng: np.random.Generator, shape: Tuple[int, ...], fan_in: int) -> Tensor:
  limit = math.sqrt(6.0 / fan_in)
  return rng.uniform(-limit, limit, size=shape)
