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
from typing import Callable, Dict

import numpy as np

from mtsexplain.tensor import BatchNorm, ClassifierHead, ConcatWidth, Conv1d, Conv1x1, Conv2d, \
  Dense, Dropout, Flatten, GlobalAveragePooling1d, ReLU
from .graph import INPUT, Model
from .spec import Architecture, ModelError, ModelSpec

logger = logging.getLogger(__name__)
__all__ = [
  'VARS_BLOCK',
  'TIME_BLOCK',
  'build_xcm',
  'build_xcm_seq',
  'build_mtex_cnn',
  'build_model',
  'count_parameters',
]

#: Tap on the post-ReLU output of the first 2D convolution block, `(B, F, T, D)` for XCM.
VARS_BLOCK = 'vars_block'

#: Tap on the post-ReLU output of the first 1D convolution block, `(B, F, T, 1)` for XCM.
TIME_BLOCK = 'time_block'

MTEX_DROPOUT = 0.4
MTEX_DENSE_UNITS = 128
MTEX_DENSE_L2 = 0.2


def _check_architecture(spec: ModelSpec, expected: Architecture) -> None:
  if spec.architecture != expected:
    raise ModelError(f'cannot build {expected.value} from a {spec.architecture.value} spec')
  spec.validate()


def _conv_block(model: Model, prefix: str, conv, source: str) -> str:
  model.add(prefix, conv, source)
  model.add(f'{prefix}_bn', BatchNorm(conv.filters))
  return model.add(f'{prefix}_relu', ReLU())


def _channel_pool(model: Model, prefix: str, channels: int, rng: np.random.Generator) -> str:
  model.add(f'{prefix}_pool', Conv1x1(channels, rng=rng))
  return model.add(f'{prefix}_pool_relu', ReLU())


def _xcm_head(model: Model, source: str, in_width: int, rng: np.random.Generator) -> None:
  spec = model.spec
  _conv_block(model, 'final_conv1d', Conv1d(1, spec.filters, spec.window_size, in_width, rng=rng), source)
  model.add('gap', GlobalAveragePooling1d())
  model.add('classifier', ClassifierHead(spec.filters, spec.classes, rng=rng))


def build_xcm(spec: ModelSpec, seed: int = 0) -> Model:
  """
  Two parallel branches over the input: 2D convolutions per observed variable and 1D
  convolutions spanning all variables. Each is reduced to one map by a 1×1 convolution,
  the maps are concatenated along the width and classified by a final 1D convolution
  block, global average pooling and a dense softmax head.
  """

  _check_architecture(spec, Architecture.XCM)
  rng = np.random.default_rng(seed)
  model = Model(spec)
  F, w, D = spec.filters, spec.window_size, spec.input_d

  node = _conv_block(model, 'conv2d', Conv2d(1, F, w, rng=rng), INPUT)
  model.tap(VARS_BLOCK, node)
  variables = _channel_pool(model, 'conv2d', F, rng)

  node = _conv_block(model, 'conv1d', Conv1d(1, F, w, D, rng=rng), INPUT)
  model.tap(TIME_BLOCK, node)
  time = _channel_pool(model, 'conv1d', F, rng)

  model.add('concat', ConcatWidth(), variables, time)
  _xcm_head(model, 'concat', D + 1, rng)
  return model


def build_xcm_seq(spec: ModelSpec, seed: int = 0) -> Model:
  """
  Like #build_xcm(), but the 1D convolution block consumes the pooled output of the 2D
  block instead of the input.
  """

  _check_architecture(spec, Architecture.XCM_SEQ)
  rng = np.random.default_rng(seed)
  model = Model(spec)
  F, w, D = spec.filters, spec.window_size, spec.input_d

  node = _conv_block(model, 'conv2d', Conv2d(1, F, w, rng=rng), INPUT)
  model.tap(VARS_BLOCK, node)
  variables = _channel_pool(model, 'conv2d', F, rng)

  node = _conv_block(model, 'conv1d', Conv1d(1, F, w, D, rng=rng), variables)
  model.tap(TIME_BLOCK, node)
  time = _channel_pool(model, 'conv1d', F, rng)

  _xcm_head(model, time, 1, rng)
  return model


def build_mtex_cnn(spec: ModelSpec, seed: int = 0) -> Model:
  """
  Two strided 2D convolution stages over each variable (`F/2` and `F` maps), a 1×1
  convolution collapsing the channels, a strided 1D convolution stage and a two-layer
  dense classifier. Every stride-2 stage halves the time extent.
  """

  _check_architecture(spec, Architecture.MTEX_CNN)
  if spec.input_t < 4:
    raise ModelError(f'mtex-cnn needs series of length 4 or more, got {spec.input_t}')
  rng = np.random.default_rng(seed)
  model = Model(spec)
  F, D = spec.filters, spec.input_d
  half = max(1, F // 2)

  model.add('conv2d_1', Conv2d(1, half, 8, stride_h=2, rng=rng), INPUT)
  model.tap(VARS_BLOCK, model.add('conv2d_1_relu', ReLU()))
  model.add('conv2d_1_dropout', Dropout(MTEX_DROPOUT))
  model.add('conv2d_2', Conv2d(half, F, 6, stride_h=2, rng=rng))
  model.add('conv2d_2_relu', ReLU())
  model.add('conv2d_2_dropout', Dropout(MTEX_DROPOUT))
  _channel_pool(model, 'conv2d_2', F, rng)

  model.add('conv1d', Conv1d(1, F, 2, D, stride_h=2, rng=rng))
  model.tap(TIME_BLOCK, model.add('conv1d_relu', ReLU()))
  model.add('conv1d_dropout', Dropout(MTEX_DROPOUT))

  length = spec.input_t
  for _ in range(3):
    length = -(-length // 2)
  model.add('flatten', Flatten())
  model.add('dense', Dense(F * length, MTEX_DENSE_UNITS, l2=MTEX_DENSE_L2, rng=rng))
  model.add('dense_relu', ReLU())
  model.add('classifier', ClassifierHead(MTEX_DENSE_UNITS, spec.classes, rng=rng))
  return model


BUILDERS: Dict[Architecture, Callable[[ModelSpec, int], Model]] = {
  Architecture.XCM: build_xcm,
  Architecture.XCM_SEQ: build_xcm_seq,
  Architecture.MTEX_CNN: build_mtex_cnn,
}


def build_model(spec: ModelSpec, seed: int = 0) -> Model:
  model = BUILDERS[spec.architecture](spec, seed)
  logger.debug('Built %r', model)
  return model


def count_parameters(model: Model) -> int:
  return model.count_parameters()
