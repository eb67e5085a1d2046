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
from typing import Tuple

import numpy as np

from .base import MTSDataset, Region

logger = logging.getLogger(__name__)
__all__ = ['SYNTHETIC_CLASSES', 'pulse_window', 'generate_synthetic']

SYNTHETIC_CLASSES = ['negative', 'positive']


def pulse_window(length: int) -> Tuple[int, int]:
  """
  The timestamps `[start, end)` that carry the pulse of positive samples; `[60, 80)` for
  series of length 100.
  """

  start, end = int(round(0.6 * length)), int(round(0.8 * length))
  return start, max(end, start + 1)


def generate_synthetic(
  n_per_class: int = 10,
  length: int = 100,
  seed: int = 0,
  noise: float = 0.05,
  dims: int = 2,
  period: float = 25.0,
  amplitude: float = 1.0,
  pulse_amplitude: float = 2.0,
  random_phase: bool = True,
) -> MTSDataset:
  """
  Generates the two-class sine/square-pulse dataset. Every dimension of every sample is a
  sine wave with its own phase. Positive samples replace the sine of dimension 0 with a
  constant pulse on #pulse_window(). Gaussian noise is added everywhere afterwards.
  """

  if n_per_class < 1 or length < 2 or dims < 1:
    raise ValueError(f'invalid synthetic shape: n_per_class={n_per_class}, length={length}, dims={dims}')
  if noise < 0:
    raise ValueError(f'noise must be non-negative, got {noise}')

  rng = np.random.default_rng(seed)
  t = np.arange(length)
  start, end = pulse_window(length)
  samples = np.empty((2 * n_per_class, dims, length))
  labels = np.repeat([0, 1], n_per_class)
  regions = []

  for i, label in enumerate(labels):
    phases = rng.uniform(0.0, 2.0 * np.pi, size=dims) if random_phase else np.zeros(dims)
    sample = amplitude * np.sin(2.0 * np.pi * t[None, :] / period + phases[:, None])
    if label == 1:
      sample[0, start:end] = pulse_amplitude
      regions.append(Region(0, start, end))
    else:
      regions.append(None)
    if noise > 0:
      sample += rng.normal(0.0, noise, size=sample.shape)
    samples[i] = sample

  logger.debug('Generated synthetic dataset: %d samples, pulse on [%d, %d)', len(labels), start, end)
  return MTSDataset(samples, labels, list(SYNTHETIC_CLASSES), regions, name='synthetic',
    metadata={'seed': seed, 'noise': noise, 'pulse': [start, end]})
