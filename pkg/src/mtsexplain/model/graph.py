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
A #Model is a directed acyclic graph of layers. The forward pass visits the nodes in
topological order and records every output and cache in a #Trace; the backward pass
walks the same order in reverse and sums gradients where a node feeds several others.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import networkx as nx  # type: ignore
import numpy as np

from mtsexplain.tensor import BatchNorm, ForwardContext, GradientReport, Layer, Mode, Parameter, ReLU, \
  ShapeError, Target, Tensor, check_gradients, cross_entropy_loss, softmax, softmax_cross_entropy_grad
from .spec import ModelError, ModelSpec

logger = logging.getLogger(__name__)
__all__ = ['INPUT', 'Trace', 'Backprop', 'Model', 'predict', 'check_model_gradients']

#: The name of the graph's source node. It has no layer and outputs the model input.
INPUT = 'input'


@dataclass
class Trace:
  """
  Everything recorded by one forward pass. Traces are never shared between invocations.
  """

  outputs: Dict[str, Tensor]
  caches: Dict[str, Any]
  output_node: str
  relu_nodes: List[str] = field(default_factory=list)

  @property
  def output(self) -> Tensor:
    return self.outputs[self.output_node]

  def activation_pattern(self) -> np.ndarray:
    """
    The concatenated on/off state of every ReLU unit.
    """

    if not self.relu_nodes:
      return np.zeros(0, dtype=bool)
    return np.concatenate([self.caches[name].ravel() for name in self.relu_nodes])


@dataclass
class Backprop:
  #: Gradient of the objective with respect to the output of every node reached.
  node_grads: Dict[str, Tensor]
  #: Gradient of every parameter, keyed by the qualified parameter name.
  param_grads: Dict[str, Tensor]


class Model:

  def __init__(self, spec: ModelSpec) -> None:
    self.spec = spec
    self.graph = nx.DiGraph()
    self.graph.add_node(INPUT, layer=None, inputs=())
    self.taps: Dict[str, str] = {}
    self.output_node = INPUT
    self._order: Optional[List[str]] = None

  def __repr__(self):
    return 'Model(architecture={}, nodes={}, parameters={})'.format(
      self.spec.architecture.value, len(self.graph) - 1, self.count_parameters())

  def add(self, name: str, layer: Layer, *inputs: str) -> str:
    """
    Adds a node computing *layer* over the outputs of *inputs*. Without explicit inputs
    the node consumes the most recently added node. The latest node is the model output.
    """

    if name in self.graph:
      raise ModelError(f'duplicate node name {name!r}')
    inputs = inputs or (self.output_node,)
    if len(inputs) != layer.arity:
      raise ModelError(f'{layer.describe()} takes {layer.arity} input(s), got {len(inputs)}')
    for source in inputs:
      if source not in self.graph:
        raise ModelError(f'node {name!r} consumes unknown node {source!r}')
    self.graph.add_node(name, layer=layer, inputs=tuple(inputs))
    for source in inputs:
      self.graph.add_edge(source, name)
    self.output_node = name
    self._order = None
    return name

  def tap(self, tap_name: str, node: str) -> None:
    """
    Exposes the output of *node* under *tap_name* for attribution.
    """

    if node not in self.graph:
      raise ModelError(f'cannot tap unknown node {node!r}')
    self.taps[tap_name] = node

  def tap_node(self, tap_name: str) -> str:
    try:
      return self.taps[tap_name]
    except KeyError:
      raise ModelError(f'model has no tap point {tap_name!r} (available: {", ".join(sorted(self.taps))})')

  @property
  def order(self) -> List[str]:
    if self._order is None:
      self._order = list(nx.topological_sort(self.graph))
    return self._order

  def layers(self) -> Iterator[Tuple[str, Layer]]:
    for name in self.order:
      if name != INPUT:
        yield name, self.graph.nodes[name]['layer']

  def node_inputs(self, name: str) -> Tuple[str, ...]:
    return self.graph.nodes[name]['inputs']

  def named_parameters(self) -> Iterator[Tuple[str, Parameter]]:
    for name, layer in self.layers():
      for param_name, param in layer.named_parameters():
        yield f'{name}.{param_name}', param

  def parameters(self) -> List[Parameter]:
    return [p for _, p in self.named_parameters()]

  def named_buffers(self) -> Iterator[Tuple[str, Tensor]]:
    for name, layer in self.layers():
      for buffer_name, value in layer.buffers().items():
        yield f'{name}.{buffer_name}', value

  def use_sample_statistics(self, enabled: bool) -> None:
    """
    Toggles #BatchNorm.per_sample on every normalization layer of the model.
    """

    for _, layer in self.layers():
      if isinstance(layer, BatchNorm):
        layer.per_sample = enabled

  def count_parameters(self) -> int:
    return sum(p.size for p in self.parameters())

  def describe(self) -> List[Dict[str, Any]]:
    return [{'name': name, 'layer': layer.describe(), 'inputs': list(self.node_inputs(name))}
            for name, layer in self.layers()]

  def check_input(self, x: Tensor) -> None:
    expected = (1, self.spec.input_t, self.spec.input_d)
    if x.ndim != 4 or x.shape[1:] != expected:
      raise ShapeError(f'model expects input of shape (B, {", ".join(map(str, expected))}), got {x.shape}')

  def forward(self, x: Tensor, ctx: Optional[ForwardContext] = None) -> Trace:
    ctx = ctx or ForwardContext()
    self.check_input(x)
    trace = Trace({INPUT: x}, {}, self.output_node)
    for name, layer in self.layers():
      args = [trace.outputs[source] for source in self.node_inputs(name)]
      trace.outputs[name], trace.caches[name] = layer.forward(*args, ctx=ctx)
      if isinstance(layer, ReLU):
        trace.relu_nodes.append(name)
    return trace

  def backward(self, trace: Trace, grad: Tensor, node: Optional[str] = None) -> Backprop:
    """
    Backpropagates *grad*, the gradient with respect to the output of *node* (default: the
    model output), through the graph.
    """

    node = node or trace.output_node
    node_grads: Dict[str, Tensor] = {node: grad}
    param_grads: Dict[str, Tensor] = {}
    for name in reversed(self.order):
      if name == INPUT or name not in node_grads:
        continue
      layer = self.graph.nodes[name]['layer']
      grads = layer.backward(node_grads[name], trace.caches[name])
      for source, g in zip(self.node_inputs(name), grads.inputs):
        node_grads[source] = node_grads[source] + g if source in node_grads else g
      for (param_name, _), g in zip(layer.named_parameters(), grads.params):
        param_grads[f'{name}.{param_name}'] = g
    return Backprop(node_grads, param_grads)

  def penalty(self) -> float:
    return sum(layer.penalty() for _, layer in self.layers())

  def accumulate_gradients(self, backprop: Backprop, include_penalty: bool = True) -> None:
    for name, layer in self.layers():
      penalties = layer.penalty_gradients() if include_penalty else ()
      for i, (param_name, param) in enumerate(layer.named_parameters()):
        g = backprop.param_grads.get(f'{name}.{param_name}')
        if g is not None:
          param.grad += g
        if i < len(penalties) and penalties[i] is not None:
          param.grad += penalties[i]

  def loss(self, x: Tensor, onehot: Tensor, ctx: ForwardContext) -> Tuple[float, Trace, Backprop]:
    """
    Mean cross-entropy of the batch plus the regularization penalty, together with the
    trace and the backpropagated gradients (penalty gradients not included).
    """

    trace = self.forward(x, ctx)
    probs = softmax(trace.output)
    value = cross_entropy_loss(probs, onehot) + self.penalty()
    return value, trace, self.backward(trace, softmax_cross_entropy_grad(probs, onehot))


def predict(model: Model, batch: Tensor) -> Tuple[Tensor, np.ndarray]:
  """
  Class probabilities and labels for a batch of `(B, D, T)` samples. Samples are run one at
  a time in #Mode.INFERENCE so that no row depends on the rest of the batch. Ties in the
  argmax resolve to the lowest class id.
  """

  batch = np.asarray(batch, dtype=np.float64)
  if batch.ndim != 3 or batch.shape[1:] != (model.spec.input_d, model.spec.input_t):
    raise ShapeError('expected a batch of shape (B, {}, {}), got {}'.format(
      model.spec.input_d, model.spec.input_t, batch.shape))
  ctx = ForwardContext(Mode.INFERENCE)
  probs = np.empty((batch.shape[0], model.spec.classes))
  for i, sample in enumerate(batch):
    logits = model.forward(np.ascontiguousarray(sample.T)[None, None], ctx).output
    probs[i] = softmax(logits)[0]
  return probs, probs.argmax(axis=1)


def check_model_gradients(
  model: Model,
  x: Tensor,
  onehot: Tensor,
  n_params: int = 50,
  tolerance: float = 1e-3,
  h: float = 1e-5,
  seed: int = 0,
) -> GradientReport:
  """
  Compares the analytic loss gradient of *n_params* randomly chosen scalar parameters with
  central finite differences. Batch normalization uses batch statistics without updating
  its running averages and dropout is disabled.
  """

  ctx = ForwardContext(Mode.CHECK)
  for param in model.parameters():
    param.zero_grad()
  _, _, backprop = model.loss(x, onehot, ctx)
  model.accumulate_gradients(backprop)

  named = list(model.named_parameters())
  sizes = np.array([p.size for _, p in named])
  offsets = np.concatenate([[0], np.cumsum(sizes)])
  rng = np.random.default_rng(seed)
  chosen = np.sort(rng.choice(offsets[-1], size=min(n_params, int(offsets[-1])), replace=False))

  targets = []
  for k, (name, param) in enumerate(named):
    flat = chosen[(chosen >= offsets[k]) & (chosen < offsets[k + 1])] - offsets[k]
    if len(flat):
      indices = [np.unravel_index(int(i), param.shape) for i in flat]
      targets.append(Target(name, param.value, param.grad.copy(), indices))

  def objective():
    trace = model.forward(x, ctx)
    value = cross_entropy_loss(softmax(trace.output), onehot) + model.penalty()
    return value, trace.activation_pattern()

  report = check_gradients(objective, targets, tolerance, h)
  for param in model.parameters():
    param.zero_grad()
  logger.debug('Gradient check for %s: %s', model.spec.architecture.value, report)
  return report
