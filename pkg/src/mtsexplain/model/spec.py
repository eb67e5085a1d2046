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

from databind.core import Converter, datamodel, field

from . import registry

__all__ = ['ModelError', 'Architecture', 'ModelSpec', 'WINDOW_PCTS']

#: The window sizes of the hyperparameter grid, as fractions of the series length.
WINDOW_PCTS = (0.2, 0.4, 0.6, 0.8, 1.0)


class ModelError(Exception):
  pass


class Architecture(enum.Enum):
  XCM = 'xcm'
  XCM_SEQ = 'xcm-seq'
  MTEX_CNN = 'mtex-cnn'

  @classmethod
  def parse(cls, value: str) -> 'Architecture':
    try:
      return cls(value.lower())
    except ValueError:
      choices = ', '.join(x.value for x in cls)
      raise ModelError(f'unknown architecture {value!r}, choose from {choices}')


@datamodel
class ModelSpec:
  architecture: Architecture
  input_t: int = field(altname='input-t')
  input_d: int = field(altname='input-d')
  classes: int

  #: The number of feature maps of every convolution block.
  filters: int = 128

  #: The kernel length along time as a fraction of #input_t. Ignored by MTEX-CNN.
  window_pct: float = field(altname='window-pct', default=0.2)

  @property
  def window_size(self) -> int:
    return max(1, int(round(self.window_pct * self.input_t)))

  def validate(self) -> 'ModelSpec':
    if self.input_t < 1 or self.input_d < 1:
      raise ModelError(f'input shape must be positive, got T={self.input_t}, D={self.input_d}')
    if self.classes < 2:
      raise ModelError(f'at least 2 classes are required, got {self.classes}')
    if self.filters < 1:
      raise ModelError(f'filters must be positive, got {self.filters}')
    if not 0.0 < self.window_pct <= 1.0:
      raise ModelError(f'window_pct must lie in (0, 1], got {self.window_pct}')
    if self.window_size > self.input_t:
      raise ModelError(f'window size {self.window_size} exceeds the series length {self.input_t}')
    return self

  def replace(self, **kwargs) -> 'ModelSpec':
    values = dict(architecture=self.architecture, input_t=self.input_t, input_d=self.input_d,
      classes=self.classes, filters=self.filters, window_pct=self.window_pct)
    values.update(kwargs)
    return ModelSpec(**values)


class ArchitectureConverter(Converter):

  def from_python(self, value, context):
    return value.value

  def to_python(self, value, context):
    return Architecture.parse(value)


registry.register_converter(Architecture, ArchitectureConverter())
