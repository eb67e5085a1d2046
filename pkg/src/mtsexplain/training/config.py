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

from typing import List, Optional

from databind.core import datamodel, field

from mtsexplain.model import Architecture, WINDOW_PCTS

__all__ = ['TrainingError', 'TrainConfig', 'GridSpec', 'ModelConfig', 'ExperimentConfig']


class TrainingError(Exception):
  pass


@datamodel
class TrainConfig:
  epochs: int = 100
  batch_size: int = field(altname='batch-size', default=1)
  seed: int = 0
  shuffle_each_epoch: bool = field(altname='shuffle-each-epoch', default=True)
  learning_rate: float = field(altname='learning-rate', default=1e-3)
  beta1: float = 0.9
  beta2: float = 0.999
  epsilon: float = 1e-8

  def validate(self) -> 'TrainConfig':
    if self.epochs < 1:
      raise TrainingError(f'epochs must be at least 1, got {self.epochs}')
    if self.batch_size < 1:
      raise TrainingError(f'batch size must be at least 1, got {self.batch_size}')
    if self.learning_rate <= 0:
      raise TrainingError(f'learning rate must be positive, got {self.learning_rate}')
    return self

  def replace(self, **kwargs) -> 'TrainConfig':
    values = dict(epochs=self.epochs, batch_size=self.batch_size, seed=self.seed,
      shuffle_each_epoch=self.shuffle_each_epoch, learning_rate=self.learning_rate,
      beta1=self.beta1, beta2=self.beta2, epsilon=self.epsilon)
    values.update(kwargs)
    return TrainConfig(**values)


@datamodel
class GridSpec:
  batch_sizes: List[int] = field(altname='batch-sizes', default_factory=lambda: [1, 8, 32])
  window_pcts: List[float] = field(altname='window-pcts', default_factory=lambda: list(WINDOW_PCTS))
  k_folds: int = field(altname='k-folds', default=5)

  def validate(self) -> 'GridSpec':
    if not self.batch_sizes or not self.window_pcts:
      raise TrainingError('grid axes must not be empty')
    if any(b < 1 for b in self.batch_sizes):
      raise TrainingError(f'batch sizes must be positive, got {self.batch_sizes}')
    if any(not 0.0 < w <= 1.0 for w in self.window_pcts):
      raise TrainingError(f'window percentages must lie in (0, 1], got {self.window_pcts}')
    if self.k_folds < 2:
      raise TrainingError(f'cross-validation needs at least 2 folds, got {self.k_folds}')
    return self

  @property
  def cells(self) -> int:
    return len(self.batch_sizes) * len(self.window_pcts)


@datamodel
class ModelConfig:
  architecture: Optional[Architecture] = None
  filters: Optional[int] = None
  window_pct: Optional[float] = field(altname='window-pct', default=None)


@datamodel
class ExperimentConfig:
  """
  The contents of an `experiment.yml` file. Options given on the command line take
  precedence over the values in this file.
  """

  model: ModelConfig = field(default_factory=ModelConfig)
  train: TrainConfig = field(default_factory=TrainConfig)
  grid: GridSpec = field(default_factory=GridSpec)
