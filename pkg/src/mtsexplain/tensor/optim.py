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

from typing import Iterable

import numpy as np

from .core import Parameter

__all__ = ['Adam']


class Adam:
  """
  Bias-corrected Adam. Every #step() consumes the accumulated gradients and zeroes them.
  """

  def __init__(
    self,
    lr: float = 1e-3,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
  ) -> None:
    self.lr = lr
    self.beta1 = beta1
    self.beta2 = beta2
    self.eps = eps

  def step(self, params: Iterable[Parameter]) -> None:
    for p in params:
      p.step += 1
      p.m *= self.beta1
      p.m += (1.0 - self.beta1) * p.grad
      p.v *= self.beta2
      p.v += (1.0 - self.beta2) * p.grad * p.grad
      m_hat = p.m / (1.0 - self.beta1 ** p.step)
      v_hat = p.v / (1.0 - self.beta2 ** p.step)
      p.value -= self.lr * m_hat / (np.sqrt(v_hat) + self.eps)
      p.zero_grad()
