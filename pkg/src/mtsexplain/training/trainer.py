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

import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from mtsexplain.datasets import MTSDataset, to_onehot
from mtsexplain.model import Model
from mtsexplain.tensor import Adam, ForwardContext, Mode, ShapeError
from .config import TrainConfig, TrainingError

logger = logging.getLogger(__name__)
__all__ = ['TrainResult', 'train']


@dataclass
class TrainResult:
  model: Model
  #: Mean training loss of every epoch.
  loss_curve: List[float] = field(default_factory=list)
  #: The number of optimizer steps taken.
  steps: int = 0


def train(model: Model, train_set: MTSDataset, config: TrainConfig) -> TrainResult:
  """
  Trains *model* in place with Adam on the mean cross-entropy (plus any regularization
  penalty). Every epoch visits `ceil(N / batch_size)` batches; the last batch may be
  smaller. The sample order is reshuffled every epoch from the configured seed.

  Training with `batch_size == 1` switches the model to per-sample normalization
  statistics at inference, the only statistics its batch normalization layers saw.
  """

  config.validate()
  if len(train_set) == 0:
    raise TrainingError(f'cannot train on the empty dataset {train_set.name!r}')
  if (train_set.n_dims, train_set.series_length) != (model.spec.input_d, model.spec.input_t):
    raise ShapeError('dataset samples have shape {}x{}, the model expects {}x{}'.format(
      train_set.n_dims, train_set.series_length, model.spec.input_d, model.spec.input_t))
  if train_set.n_classes != model.spec.classes:
    raise TrainingError(f'dataset has {train_set.n_classes} classes, the model predicts {model.spec.classes}')

  model.use_sample_statistics(config.batch_size == 1)
  rng = np.random.default_rng(config.seed)
  ctx = ForwardContext(Mode.TRAIN, rng)
  optimizer = Adam(config.learning_rate, config.beta1, config.beta2, config.epsilon)
  params = model.parameters()
  for param in params:
    param.zero_grad()

  inputs = train_set.as_input()
  onehot = to_onehot(train_set.labels, train_set.n_classes)
  n = len(train_set)
  n_batches = math.ceil(n / config.batch_size)
  result = TrainResult(model)
  order = np.arange(n)

  for epoch in range(1, config.epochs + 1):
    if config.shuffle_each_epoch or epoch == 1:
      order = rng.permutation(n)
    total = 0.0
    for batch in range(n_batches):
      index = order[batch * config.batch_size:(batch + 1) * config.batch_size]
      loss, _, backprop = model.loss(inputs[index], onehot[index], ctx)
      if not math.isfinite(loss):
        raise TrainingError(f'loss became {loss} in epoch {epoch}, batch {batch + 1}/{n_batches}')
      model.accumulate_gradients(backprop)
      optimizer.step(params)
      result.steps += 1
      total += loss
    result.loss_curve.append(total / n_batches)
    logger.info('Epoch %d/%d: mean loss %.6f', epoch, config.epochs, result.loss_curve[-1])

  return result
