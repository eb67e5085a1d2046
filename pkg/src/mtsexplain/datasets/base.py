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

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from mtsexplain.tensor import Tensor

__all__ = ['DatasetError', 'Region', 'MTSDataset', 'to_onehot']


class DatasetError(Exception):
  pass


class Region(NamedTuple):
  """
  A planted discriminative region: timestamps `[t_start, t_end)` of dimension *dim*.
  """

  dim: int
  t_start: int
  t_end: int


@dataclass
class MTSDataset:
  """
  A set of equally shaped multivariate time series. *samples* has shape `(N, D, T)`.
  """

  samples: Tensor
  labels: np.ndarray
  class_names: List[str]
  regions: Optional[List[Optional[Region]]] = None
  name: str = 'dataset'
  metadata: dict = field(default_factory=dict)

  def __post_init__(self):
    self.samples = np.asarray(self.samples, dtype=np.float64)
    self.labels = np.asarray(self.labels, dtype=np.int64)
    if self.samples.ndim != 3:
      raise DatasetError(f'samples must have shape (N, D, T), got {self.samples.shape}')
    if self.labels.shape != (self.samples.shape[0],):
      raise DatasetError(f'expected {self.samples.shape[0]} labels, got {self.labels.shape}')
    if len(self.labels) and (self.labels.min() < 0 or self.labels.max() >= len(self.class_names)):
      raise DatasetError(f'labels must lie in [0, {len(self.class_names)})')
    if self.regions is not None:
      if len(self.regions) != len(self.labels):
        raise DatasetError('one ground-truth region entry per sample is required')
      for region in self.regions:
        if region is not None and not (
            0 <= region.t_start < region.t_end <= self.series_length and 0 <= region.dim < self.n_dims):
          raise DatasetError(f'invalid ground-truth region {region} for shape {self.samples.shape[1:]}')
    self.samples.flags.writeable = False
    self.labels.flags.writeable = False

  def __len__(self):
    return self.samples.shape[0]

  @property
  def n_dims(self) -> int:
    return self.samples.shape[1]

  @property
  def series_length(self) -> int:
    return self.samples.shape[2]

  @property
  def n_classes(self) -> int:
    return len(self.class_names)

  def class_counts(self) -> np.ndarray:
    return np.bincount(self.labels, minlength=self.n_classes)

  def subset(self, indices: Sequence[int], name: Optional[str] = None) -> 'MTSDataset':
    indices = np.asarray(indices, dtype=np.int64)
    regions = [self.regions[i] for i in indices] if self.regions is not None else None
    return MTSDataset(self.samples[indices], self.labels[indices], list(self.class_names),
      regions, name or self.name, dict(self.metadata))

  def as_input(self) -> Tensor:
    """
    Returns the samples in the network layout `(N, 1, T, D)`.
    """

    return np.ascontiguousarray(self.samples.transpose(0, 2, 1)[:, None])


def to_onehot(labels: Sequence[int], classes: int) -> Tensor:
  labels = np.asarray(labels, dtype=np.int64)
  if labels.size and (labels.min() < 0 or labels.max() >= classes):
    raise DatasetError(f'label out of range for {classes} classes: {labels.min()}..{labels.max()}')
  onehot = np.zeros((labels.shape[0], classes))
  onehot[np.arange(labels.shape[0]), labels] = 1.0
  return onehot
