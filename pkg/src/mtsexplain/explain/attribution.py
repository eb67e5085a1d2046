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
from dataclasses import dataclass

import numpy as np

from mtsexplain.tensor import Tensor

__all__ = ['ExplainError', 'MapKind', 'AttributionMap', 'normalize_map']


class ExplainError(Exception):
  pass


class MapKind(enum.Enum):
  VARIABLES = 'variables'
  TIME = 'time'


@dataclass(frozen=True)
class AttributionMap:
  """
  A non-negative `(T, D)` heatmap over the input of a model: row `t`, column `d` scores
  dimension `d` at timestamp `t`.
  """

  kind: MapKind
  values: Tensor
  target_class: int
  normalized: bool = False

  @property
  def shape(self):
    return self.values.shape

  def normalize(self) -> 'AttributionMap':
    return AttributionMap(self.kind, normalize_map(self.values), self.target_class, True)


def normalize_map(values: Tensor) -> Tensor:
  """
  Divides by the maximum so that the largest value becomes 1. An all-zero map stays zero.
  """

  values = np.asarray(values, dtype=np.float64)
  peak = values.max() if values.size else 0.0
  if peak <= 0.0:
    return np.zeros_like(values)
  return values / peak
