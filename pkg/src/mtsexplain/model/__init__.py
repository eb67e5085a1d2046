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
Network architectures assembled as layer graphs, their configuration datamodels and
checkpoints. The module also hosts the converter #registry shared by every datamodel
in the package.
"""

import json
from typing import Any, Type, TypeVar

import yaml
from databind.core import datamodel, Registry
from databind.json import from_json, to_json, registry as json_registry

registry = Registry(json_registry)
registry.set_option(datamodel, 'skip_defaults', True)
T = TypeVar('T')


def to_data(obj: Any) -> Any:
  return to_json(obj, registry=registry)


def from_data(type_: Type[T], data: Any) -> T:
  return from_json(type_, data, registry=registry)


def load_config(filename: str, type_: Type[T]) -> T:
  """
  Loads a YAML (or JSON) configuration file into a datamodel of type *type_*.
  """

  with open(filename) as fp:
    data = yaml.safe_load(fp)
  return from_data(type_, data or {})


def dumps_json(obj: Any) -> str:
  """
  Serializes a datamodel (or plain data) to JSON with sorted keys, so that equal objects
  always render to equal text.
  """

  data = obj if isinstance(obj, (dict, list)) else to_data(obj)
  return json.dumps(data, indent=2, sort_keys=True) + '\n'


from .spec import *
from .graph import *
from .architectures import *
from .checkpoint import *
