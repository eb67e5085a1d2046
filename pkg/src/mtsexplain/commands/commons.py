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

import contextlib
import sys
from typing import Dict, List, Optional

import click
from termcolor import colored

from mtsexplain.datasets import DatasetError, MTSDataset
from mtsexplain.explain import ExplainError
from mtsexplain.model import Architecture, ModelError, ModelSpec
from mtsexplain.reporting import ReportError, RunManifest, make_run_id, persist_run
from mtsexplain.tensor import ShapeError
from mtsexplain.training import TrainingError
from mtsexplain.utils.io import ArtifactSet
from . import context

ERRORS = (DatasetError, ExplainError, ModelError, ReportError, ShapeError, TrainingError, OSError)

ARCHITECTURE = click.Choice([a.value for a in Architecture])


@contextlib.contextmanager
def exit_on_error():
  """
  Turns the errors raised by the package into `error: <message>` and exit status 1.
  """

  try:
    yield
  except ERRORS as exc:
    sys.exit(f'error: {exc}')


def parse_list(value: Optional[str], type_) -> Optional[List]:
  if value is None:
    return None
  try:
    return [type_(x) for x in value.split(',') if x.strip()]
  except ValueError:
    raise click.BadParameter(f'expected a comma separated list, got {value!r}')


def model_spec(dataset: MTSDataset, arch: Optional[str], filters: Optional[int], window_pct: Optional[float]) -> ModelSpec:
  """
  Builds the model spec for *dataset*. Options that are #None fall back to the
  experiment configuration, then to the defaults.
  """

  config = context['config'].model
  architecture = Architecture.parse(arch) if arch else (config.architecture or Architecture.XCM)
  spec = ModelSpec(architecture, dataset.series_length, dataset.n_dims, dataset.n_classes)
  spec = spec.replace(
    filters=filters or config.filters or spec.filters,
    window_pct=window_pct if window_pct is not None else (config.window_pct or spec.window_pct))
  return spec.validate()


def write_run(command: str, arguments: Dict[str, object], artifacts: ArtifactSet, **fields) -> RunManifest:
  """
  Writes *artifacts* and the manifest of the run into the output directory.
  """

  args = {k: str(v) for k, v in arguments.items() if v is not None}
  seed = context['seed']
  manifest = RunManifest(run_id=make_run_id(command, seed, args), command=command, seed=seed,
    arguments=args, **fields)
  path = persist_run(manifest, artifacts, context['out'])
  if not context['quiet']:
    print(f'{colored("wrote", "green")} {len(manifest.files)} file(s), manifest {path}')
  return manifest


def echo(message: str) -> None:
  if not context['quiet']:
    print(message)
