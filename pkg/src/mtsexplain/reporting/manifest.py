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

import hashlib
import json
import logging
import os
from typing import Dict, List, Optional

import nr.fs  # type: ignore
from databind.core import datamodel, field

from mtsexplain.model import ModelSpec, dumps_json, from_data
from mtsexplain.training import MetricsReport, TrainConfig
from mtsexplain.utils.io import ArtifactSet
from .ranks import ReportError

logger = logging.getLogger(__name__)
__all__ = ['RunManifest', 'make_run_id', 'manifest_filename', 'persist_run', 'load_manifest']


@datamodel
class RunManifest:
  """
  Everything needed to re-execute a run: the command, its arguments and seed, the model
  and training configuration, the resulting metrics and the files that were written.
  """

  run_id: str = field(altname='run-id')
  command: str
  seed: int
  arguments: Dict[str, str] = field(default_factory=dict)
  spec: Optional[ModelSpec] = None
  train: Optional[TrainConfig] = None
  batch_size: Optional[int] = field(altname='batch-size', default=None)
  window_pct: Optional[float] = field(altname='window-pct', default=None)
  metrics: Optional[MetricsReport] = None
  #: Scalar results that are not part of #metrics (IoU scores, parameter counts, ...).
  values: Dict[str, float] = field(default_factory=dict)
  retrained_on_full_train: Optional[bool] = field(altname='retrained-on-full-train', default=None)
  files: List[str] = field(default_factory=list)


def make_run_id(command: str, seed: int, arguments: Dict[str, str]) -> str:
  payload = json.dumps({'command': command, 'seed': seed, 'arguments': arguments}, sort_keys=True)
  return hashlib.sha256(payload.encode('utf8')).hexdigest()[:16]


def manifest_filename(command: str) -> str:
  return f'{command}.manifest.json'


def persist_run(manifest: RunManifest, artifacts: ArtifactSet, directory: str) -> str:
  """
  Writes all *artifacts* and then the manifest into *directory*. The manifest lists every
  file written, itself included. Returns the path of the manifest.
  """

  filename = manifest_filename(manifest.command)
  manifest.files = sorted(artifacts.filenames() + [filename])
  path = os.path.join(directory, filename)
  try:
    artifacts.write_all(directory)
    os.makedirs(directory, exist_ok=True)
    with nr.fs.atomic_file(path, 'w') as fp:
      fp.write(dumps_json(manifest))
  except OSError as exc:
    raise ReportError(f'cannot write run artifacts to {directory}: {exc}')
  logger.info('Wrote %d file(s) to %s', len(manifest.files), directory)
  return path


def load_manifest(path: str) -> RunManifest:
  try:
    with open(path, encoding='utf8') as fp:
      return from_data(RunManifest, json.load(fp))
  except (OSError, ValueError) as exc:
    raise ReportError(f'cannot read manifest {path}: {exc}')
