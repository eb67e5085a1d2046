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
from typing import Optional, Tuple

import numpy as np

from mtsexplain.datasets import Region
from .attribution import AttributionMap, ExplainError

__all__ = ['DEFAULT_THRESHOLD', 'ExplanationMask', 'IoUScope', 'threshold_mask', 'mask_interval', 'iou']

DEFAULT_THRESHOLD = 0.6


@dataclass(frozen=True)
class ExplanationMask:
  #: Boolean `(T, D)` matrix of the selected cells.
  cells: np.ndarray
  threshold: float

  @property
  def timestamps(self) -> np.ndarray:
    """
    The projection onto the time axis: a timestamp is selected if any dimension is.
    """

    return self.cells.any(axis=1)


class IoUScope(enum.Enum):
  TIME_ONLY = 'time'
  CELLS = 'cells'


def threshold_mask(attribution: AttributionMap, threshold: float = DEFAULT_THRESHOLD) -> ExplanationMask:
  if not attribution.normalized:
    raise ExplainError('thresholding requires a normalized attribution map')
  return ExplanationMask(attribution.values > threshold, threshold)


def mask_interval(mask: ExplanationMask) -> Optional[Tuple[int, int]]:
  """
  The first and last selected timestamps (both inclusive), or #None for an empty mask.
  """

  selected = np.flatnonzero(mask.timestamps)
  if not len(selected):
    return None
  return int(selected[0]), int(selected[-1])


def _ratio(intersection: int, union: int) -> float:
  return intersection / union if union else 0.0


def iou(mask: ExplanationMask, region: Region, scope: IoUScope = IoUScope.TIME_ONLY) -> float:
  """
  Intersection-over-union of a mask and the ground-truth region `[t_start, t_end)` of
  dimension `region.dim`. An empty union scores 0.
  """

  length, dims = mask.cells.shape
  if not (0 <= region.t_start < region.t_end <= length and 0 <= region.dim < dims):
    raise ExplainError(f'region {tuple(region)} does not fit a mask of shape {mask.cells.shape}')
  if scope == IoUScope.TIME_ONLY:
    predicted = mask.timestamps
    truth = np.zeros(length, dtype=bool)
    truth[region.t_start:region.t_end] = True
  else:
    predicted = mask.cells
    truth = np.zeros_like(mask.cells)
    truth[region.t_start:region.t_end, region.dim] = True
  return _ratio(int(np.sum(predicted & truth)), int(np.sum(predicted | truth)))
