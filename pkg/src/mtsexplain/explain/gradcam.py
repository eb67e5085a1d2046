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
Gradient-weighted class activation maps. The score of a class is its pre-softmax logit.
Feature map `k` of a tap point is weighted by the mean gradient of the score over the
tap's spatial axes, and the map is the ReLU of the weighted sum of all feature maps.

Every call runs its own forward and backward pass in #Mode.INFERENCE, so explanations
of one frozen model can be computed concurrently.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import ndimage  # type: ignore

from mtsexplain.model import TIME_BLOCK, VARS_BLOCK, Model, predict
from mtsexplain.tensor import ForwardContext, Mode, Tensor
from .attribution import AttributionMap, ExplainError, MapKind

logger = logging.getLogger(__name__)
__all__ = [
  'Explanation',
  'tap_gradients',
  'weighted_activation_map',
  'upsample_map',
  'gradcam_variables',
  'gradcam_time',
  'gradcam_generic',
  'explain',
]


def _check_sample(model: Model, sample: Tensor, class_c: int) -> Tensor:
  sample = np.asarray(sample, dtype=np.float64)
  expected = (model.spec.input_d, model.spec.input_t)
  if sample.shape != expected:
    raise ExplainError(f'expected a sample of shape {expected}, got {sample.shape}')
  if not 0 <= class_c < model.spec.classes:
    raise ExplainError(f'class {class_c} out of range for a {model.spec.classes}-class model')
  return sample


def tap_gradients(model: Model, sample: Tensor, class_c: int, tap: str) -> Tuple[Tensor, Tensor]:
  """
  Returns the activations of *tap* for a `(D, T)` *sample* and the gradient of the class
  score with respect to them, both shaped `(F, t, d)`.
  """

  sample = _check_sample(model, sample, class_c)
  node = model.tap_node(tap)
  trace = model.forward(np.ascontiguousarray(sample.T)[None, None], ForwardContext(Mode.INFERENCE))
  upstream = np.zeros_like(trace.output)
  upstream[0, class_c] = 1.0
  backprop = model.backward(trace, upstream)
  activations = trace.outputs[node][0]
  gradients = backprop.node_grads.get(node)
  if gradients is None:
    return activations, np.zeros_like(activations)
  return activations, gradients[0]


def weighted_activation_map(activations: Tensor, gradients: Tensor) -> Tensor:
  """
  `ReLU(sum_k mean(gradients[k]) * activations[k])` for `(F, t, d)` inputs.
  """

  if activations.shape != gradients.shape or activations.ndim != 3:
    raise ExplainError(f'activations {activations.shape} and gradients {gradients.shape} do not match')
  weights = gradients.mean(axis=(1, 2))
  return np.maximum(np.einsum('k,kij->ij', weights, activations), 0.0)


def upsample_map(values: Tensor, shape: Tuple[int, int]) -> Tensor:
  """
  Bilinear interpolation of a `(t, d)` map to *shape* with half-pixel aligned sample
  positions. A map that already has the target shape is returned unchanged.
  """

  if values.shape == tuple(shape):
    return values
  factors = (shape[0] / values.shape[0], shape[1] / values.shape[1])
  out = ndimage.zoom(values, factors, order=1, mode='nearest', grid_mode=True)
  if out.shape != tuple(shape):
    raise ExplainError(f'upsampling {values.shape} produced {out.shape} instead of {tuple(shape)}')
  return np.maximum(out, 0.0)


def gradcam_variables(model: Model, sample: Tensor, class_c: int) -> AttributionMap:
  """
  The observed-variables map from the `vars_block` tap. The tap must keep the input
  extent, so the map is computed at `(T, D)` without interpolation.
  """

  activations, gradients = tap_gradients(model, sample, class_c, VARS_BLOCK)
  expected = (model.spec.input_t, model.spec.input_d)
  if activations.shape[1:] != expected:
    raise ExplainError(f'{VARS_BLOCK} has extent {activations.shape[1:]}, not {expected}; '
      'use gradcam_generic() to upsample it')
  raw = weighted_activation_map(activations, gradients)
  return AttributionMap(MapKind.VARIABLES, raw, class_c).normalize()


def gradcam_time(model: Model, sample: Tensor, class_c: int) -> AttributionMap:
  """
  The time map from the `time_block` tap, replicated over the observed variables.
  """

  activations, gradients = tap_gradients(model, sample, class_c, TIME_BLOCK)
  if activations.shape[1:] != (model.spec.input_t, 1):
    raise ExplainError(f'{TIME_BLOCK} has extent {activations.shape[1:]}, not ({model.spec.input_t}, 1); '
      'use gradcam_generic() to upsample it')
  raw = weighted_activation_map(activations, gradients)
  return AttributionMap(MapKind.TIME, np.repeat(raw, model.spec.input_d, axis=1), class_c).normalize()


def gradcam_generic(
  model: Model,
  tap: str,
  sample: Tensor,
  class_c: int,
  upsample_to: Optional[Tuple[int, int]] = None,
) -> AttributionMap:
  """
  Grad-CAM over any tap point whose extent may be smaller than the input. The raw map is
  interpolated to *upsample_to* (default `(T, D)`) before normalization.
  """

  activations, gradients = tap_gradients(model, sample, class_c, tap)
  shape = upsample_to or (model.spec.input_t, model.spec.input_d)
  values = upsample_map(weighted_activation_map(activations, gradients), shape)
  kind = MapKind.TIME if tap == TIME_BLOCK else MapKind.VARIABLES
  return AttributionMap(kind, values, class_c).normalize()


@dataclass
class Explanation:
  target_class: int
  probabilities: Tensor
  variables: AttributionMap
  time: AttributionMap
  #: True if the maps were interpolated from taps of reduced extent.
  upsampled: bool


def explain(model: Model, sample: Tensor, class_c: Optional[int] = None) -> Explanation:
  """
  Computes both maps for *sample*, explaining the predicted class unless *class_c* is
  given. Models whose taps keep the input extent use the exact paths; others go through
  #gradcam_generic().
  """

  probs, labels = predict(model, np.asarray(sample, dtype=np.float64)[None])
  target = int(labels[0]) if class_c is None else class_c
  try:
    variables, time = gradcam_variables(model, sample, target), gradcam_time(model, sample, target)
    upsampled = False
  except ExplainError as exc:
    logger.debug('Falling back to interpolated maps: %s', exc)
    variables = gradcam_generic(model, VARS_BLOCK, sample, target)
    time = gradcam_generic(model, TIME_BLOCK, sample, target)
    upsampled = True
  return Explanation(target, probs[0], variables, time, upsampled)
