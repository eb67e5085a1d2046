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
Central finite-difference verification of analytic gradients.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .core import ForwardContext, Mode, Tensor
from .layers import Layer

__all__ = [
  'GradientReport',
  'Target',
  'relative_error',
  'check_gradients',
  'check_layer',
]

#: Evaluates the scalar objective and returns it together with an activation signature
#: (e.g. the ReLU on/off pattern). Coordinates whose perturbation changes the signature
#: crossed a kink and are skipped.
Objective = Callable[[], Tuple[float, Optional[np.ndarray]]]


class Target(NamedTuple):
  name: str
  array: Tensor  #: Perturbed in place.
  analytic: Tensor
  indices: Optional[Sequence[Tuple[int, ...]]] = None  #: Defaults to every element.


@dataclass
class GradientReport:
  max_relative_error: float
  tolerance: float
  checked: int
  skipped: int = 0
  worst: Optional[str] = None

  @property
  def passed(self) -> bool:
    return self.max_relative_error < self.tolerance

  def __str__(self):
    return 'max relative error {:.3e} (tolerance {:.1e}, {} checked, {} skipped, worst: {})'.format(
      self.max_relative_error, self.tolerance, self.checked, self.skipped, self.worst)


def relative_error(analytic: float, numeric: float, floor: float = 1e-3) -> float:
  """
  `|a - n| / max(|a|, |n|, floor)`. The floor keeps vanishing gradients from turning
  float rounding into large relative errors.
  """

  return abs(analytic - numeric) / max(abs(analytic), abs(numeric), floor)


def check_gradients(
  objective: Objective,
  targets: Iterable[Target],
  tolerance: float = 1e-4,
  h: float = 1e-5,
) -> GradientReport:
  _, base_signature = objective()
  max_error = 0.0
  worst = None
  checked = skipped = 0

  for target in targets:
    array = target.array
    indices = target.indices if target.indices is not None else list(np.ndindex(array.shape))
    for index in indices:
      original = array[index]
      array[index] = original + h
      plus, sig_plus = objective()
      array[index] = original - h
      minus, sig_minus = objective()
      array[index] = original
      if base_signature is not None and (
          not np.array_equal(sig_plus, base_signature) or not np.array_equal(sig_minus, base_signature)):
        skipped += 1
        continue
      numeric = (plus - minus) / (2.0 * h)
      error = relative_error(float(target.analytic[index]), numeric)
      checked += 1
      if error > max_error or worst is None:
        max_error = max(error, max_error)
        worst = f'{target.name}{list(index)}'

  return GradientReport(max_error, tolerance, checked, skipped, worst)


def check_layer(
  layer: Layer,
  inputs: Sequence[Tensor],
  tolerance: float = 1e-4,
  h: float = 1e-5,
  seed: int = 0,
  mode: Mode = Mode.CHECK,
) -> GradientReport:
  """
  Checks the input and parameter gradients of *layer* on the scalar objective
  `sum(layer(inputs) * R)` for a fixed random projection `R`. The layer runs in *mode*,
  by default #Mode.CHECK (batch statistics, no dropout).
  """

  ctx = ForwardContext(mode)
  inputs = [np.array(x, dtype=np.float64) for x in inputs]
  out, cache = layer.forward(*inputs, ctx=ctx)
  projection = np.random.default_rng(seed).standard_normal(out.shape)
  grads = layer.backward(projection, cache)

  def objective():
    y, _ = layer.forward(*inputs, ctx=ctx)
    return float(np.sum(y * projection)), None

  targets: List[Target] = [Target(f'input{i}', x, g) for i, (x, g) in enumerate(zip(inputs, grads.inputs))]
  for (name, param), g in zip(layer.named_parameters(), grads.params):
    targets.append(Target(name, param.value, g))
  return check_gradients(objective, targets, tolerance, h)
