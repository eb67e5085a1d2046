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
Model checkpoints are zip archives with a `spec.json` member that describes the model and
one `.npy` member per parameter and buffer tensor. Member timestamps are fixed, so saving
the same model twice produces identical bytes.
"""

import io
import json
import logging
import zipfile
from typing import BinaryIO, Dict

import nr.fs  # type: ignore
import numpy as np

from . import dumps_json, from_data, to_data
from .architectures import build_model
from .graph import Model
from .spec import ModelError, ModelSpec

logger = logging.getLogger(__name__)
__all__ = ['CHECKPOINT_FORMAT', 'CheckpointError', 'write_checkpoint', 'save_checkpoint', 'load_checkpoint']

CHECKPOINT_FORMAT = 'mtsexplain-checkpoint/1'
_TIMESTAMP = (1980, 1, 1, 0, 0, 0)


class CheckpointError(ModelError):
  pass


def _write_member(archive: zipfile.ZipFile, name: str, data: bytes) -> None:
  info = zipfile.ZipInfo(name, date_time=_TIMESTAMP)
  info.compress_type = zipfile.ZIP_DEFLATED
  info.external_attr = 0o644 << 16
  archive.writestr(info, data)


def _npy_bytes(array: np.ndarray) -> bytes:
  buffer = io.BytesIO()
  np.lib.format.write_array(buffer, np.ascontiguousarray(array, dtype=np.float64), allow_pickle=False)
  return buffer.getvalue()


def write_checkpoint(model: Model, fp: BinaryIO) -> None:
  header = {
    'format': CHECKPOINT_FORMAT,
    'spec': to_data(model.spec),
    'parameters': model.count_parameters(),
    'layers': model.describe(),
  }
  buffer = io.BytesIO()
  with zipfile.ZipFile(buffer, 'w') as archive:
    _write_member(archive, 'spec.json', dumps_json(header).encode('utf8'))
    for name, param in model.named_parameters():
      _write_member(archive, f'tensors/{name}.npy', _npy_bytes(param.value))
    for name, value in model.named_buffers():
      _write_member(archive, f'buffers/{name}.npy', _npy_bytes(value))
  fp.write(buffer.getvalue())


def save_checkpoint(model: Model, path: str) -> None:
  with nr.fs.atomic_file.dispatch(path, 'wb') as fp:
    write_checkpoint(model, fp)
  logger.debug('Saved checkpoint %s', path)


def _read_tensors(archive: zipfile.ZipFile, prefix: str) -> Dict[str, np.ndarray]:
  result = {}
  for member in archive.namelist():
    if member.startswith(prefix) and member.endswith('.npy'):
      data = io.BytesIO(archive.read(member))
      result[member[len(prefix):-len('.npy')]] = np.lib.format.read_array(data, allow_pickle=False)
  return result


def _assign(target: np.ndarray, source: np.ndarray, name: str, path: str) -> None:
  if source.shape != target.shape:
    raise CheckpointError(f'{path}: tensor {name!r} has shape {source.shape}, expected {target.shape}')
  target[...] = source


def load_checkpoint(path: str) -> Model:
  """
  Rebuilds the model described by the checkpoint at *path* and restores its parameters
  and batch normalization statistics.
  """

  try:
    with zipfile.ZipFile(path) as archive:
      header = json.loads(archive.read('spec.json').decode('utf8'))
      tensors = _read_tensors(archive, 'tensors/')
      buffers = _read_tensors(archive, 'buffers/')
  except (OSError, KeyError, ValueError, zipfile.BadZipFile) as exc:
    raise CheckpointError(f'{path}: not a readable checkpoint ({exc})')

  if header.get('format') != CHECKPOINT_FORMAT:
    raise CheckpointError(f'{path}: unsupported checkpoint format {header.get("format")!r}')
  try:
    spec = from_data(ModelSpec, header['spec'])
  except Exception as exc:
    raise CheckpointError(f'{path}: invalid model spec ({exc})')

  model = build_model(spec)
  if [layer['name'] for layer in header.get('layers', [])] != [name for name, _ in model.layers()]:
    raise CheckpointError(f'{path}: layer list does not match the {spec.architecture.value} architecture')

  params = dict(model.named_parameters())
  if set(params) != set(tensors):
    raise CheckpointError(f'{path}: parameter set does not match the {spec.architecture.value} architecture')
  for name, param in params.items():
    _assign(param.value, tensors[name], name, path)
  for name, value in model.named_buffers():
    if name not in buffers:
      raise CheckpointError(f'{path}: missing buffer {name!r}')
    _assign(value, buffers[name], name, path)
  logger.debug('Loaded checkpoint %s (%d parameters)', path, model.count_parameters())
  return model
