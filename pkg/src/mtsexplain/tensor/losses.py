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

import numpy as np

from .core import ShapeError, Tensor

__all__ = ['softmax', 'cross_entropy_loss', 'softmax_cross_entropy_grad']

PROBABILITY_FLOOR = 1e-12


def softmax(logits: Tensor) -> Tensor:
  shifted = logits - logits.max(axis=-1, keepdims=True)
  exp = np.exp(shifted)
  return exp / exp.sum(axis=-1, keepdims=True)


def _check_targets(probs: Tensor, onehot: Tensor) -> None:
  if probs.ndim != 2 or probs.shape != onehot.shape:
    raise ShapeError(f'probabilities {probs.shape} and one-hot labels {onehot.shape} do not match')


def cross_entropy_loss(probs: Tensor, onehot: Tensor) -> float:
  """
  Mean categorical cross-entropy of a batch. Probabilities are clamped to `[1e-12, 1]`
  before the logarithm.
  """

  _check_targets(probs, onehot)
  clamped = np.clip(probs, PROBABILITY_FLOOR, 1.0)
  return float(-np.sum(onehot * np.log(clamped)) / probs.shape[0])


def softmax_cross_entropy_grad(probs: Tensor, onehot: Tensor) -> Tensor:
  """
  Gradient of #cross_entropy_loss() of `softmax(logits)` with respect to the logits.
  """

  _check_targets(probs, onehot)
  return (probs - onehot) / probs.shape[0]
