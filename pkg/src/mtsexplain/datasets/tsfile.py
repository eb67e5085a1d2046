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
Reader and writer for the UEA/UCR `.ts` text layout.
"""

import logging
import math
import os
from typing import Dict, Iterator, List, Optional, TextIO, Tuple, Union

import nr.fs  # type: ignore
import numpy as np

from .base import DatasetError, MTSDataset

logger = logging.getLogger(__name__)
__all__ = ['load_ts_file', 'write_ts_file']

UNSUPPORTED = 'unsupported dataset feature'


def _parse_bool(value: str, directive: str, lineno: int) -> bool:
  value = value.strip().lower()
  if value not in ('true', 'false'):
    raise DatasetError(f'line {lineno}: expected true or false after @{directive}, got {value!r}')
  return value == 'true'


class _Header:

  def __init__(self) -> None:
    self.problem_name: Optional[str] = None
    self.dimensions: Optional[int] = None
    self.series_length: Optional[int] = None
    self.class_names: List[str] = []

  def apply(self, directive: str, rest: str, lineno: int) -> None:
    if directive == 'problemname':
      self.problem_name = rest.strip()
    elif directive == 'univariate':
      if _parse_bool(rest, directive, lineno):
        self.dimensions = 1
    elif directive == 'dimensions':
      self.dimensions = int(rest)
    elif directive == 'equallength':
      if not _parse_bool(rest, directive, lineno):
        raise DatasetError(f'{UNSUPPORTED}: @equalLength false (line {lineno})')
    elif directive == 'serieslength':
      self.series_length = int(rest)
    elif directive == 'missing':
      if _parse_bool(rest, directive, lineno):
        raise DatasetError(f'{UNSUPPORTED}: @missing true (line {lineno})')
    elif directive == 'timestamps':
      if _parse_bool(rest, directive, lineno):
        raise DatasetError(f'{UNSUPPORTED}: @timeStamps true (line {lineno})')
    elif directive == 'classlabel':
      parts = rest.split()
      if not parts or not _parse_bool(parts[0], directive, lineno):
        raise DatasetError(f'line {lineno}: only labelled datasets are supported')
      self.class_names = parts[1:]
      if len(set(self.class_names)) != len(self.class_names):
        raise DatasetError(f'line {lineno}: duplicate class label in @classLabel')
    else:
      logger.debug('Ignoring directive @%s on line %d', directive, lineno)


def _parse_record(line: str, lineno: int, header: _Header, class_ids: Dict[str, int]):
  fields = line.split(':')
  if len(fields) < 2:
    raise DatasetError(f'line {lineno}: a record needs at least one dimension and a class label')
  label = fields[-1].strip()
  if label not in class_ids:
    raise DatasetError(f'line {lineno}: unknown class label {label!r}')
  dims = fields[:-1]
  if header.dimensions is not None and len(dims) != header.dimensions:
    raise DatasetError(f'line {lineno}: expected {header.dimensions} dimensions, got {len(dims)}')
  rows = []
  for dim in dims:
    values = dim.split(',')
    if any(v.strip() in ('?', '', 'NaN', 'nan') for v in values):
      raise DatasetError(f'{UNSUPPORTED}: missing values (line {lineno})')
    if any('(' in v for v in values):
      raise DatasetError(f'{UNSUPPORTED}: timestamped values (line {lineno})')
    try:
      row = [float(v) for v in values]
    except ValueError as exc:
      raise DatasetError(f'line {lineno}: {exc}')
    if not all(math.isfinite(v) for v in row):
      raise DatasetError(f'line {lineno}: values must be finite')
    rows.append(row)
  lengths = {len(r) for r in rows}
  if len(lengths) != 1:
    raise DatasetError(f'{UNSUPPORTED}: unequal lengths within a record (line {lineno})')
  return rows, class_ids[label]


def _lines(fp: TextIO, path: str) -> Iterator[Tuple[int, str]]:
  try:
    yield from enumerate(fp, 1)
  except UnicodeDecodeError as exc:
    raise DatasetError(f'{path}: not valid UTF-8 text ({exc.reason})')


def load_ts_file(path: str) -> MTSDataset:
  """
  Loads a labelled, equal-length dataset in `.ts` format. Class ids are assigned in the
  order the labels are declared by the `@classLabel` directive.
  """

  header = _Header()
  samples: List[List[List[float]]] = []
  labels: List[int] = []
  class_ids: Dict[str, int] = {}
  in_data = False

  with open(path, encoding='utf8') as fp:
    for lineno, line in _lines(fp, path):
      line = line.strip()
      if not line or line.startswith('#'):
        continue
      if not in_data:
        if not line.startswith('@'):
          raise DatasetError(f'{path}: line {lineno}: expected a directive, got {line[:20]!r}')
        directive, _, rest = line[1:].partition(' ')
        directive = directive.lower()
        if directive == 'data':
          in_data = True
          class_ids = {name: i for i, name in enumerate(header.class_names)}
          if not class_ids:
            raise DatasetError(f'{path}: missing @classLabel directive')
          continue
        try:
          header.apply(directive, rest, lineno)
        except ValueError as exc:
          raise DatasetError(f'{path}: line {lineno}: {exc}')
        continue
      try:
        rows, label = _parse_record(line, lineno, header, class_ids)
      except DatasetError as exc:
        raise DatasetError(f'{path}: {exc}')
      if samples and (len(rows) != len(samples[0]) or len(rows[0]) != len(samples[0][0])):
        raise DatasetError(f'{path}: {UNSUPPORTED}: unequal lengths (line {lineno})')
      if header.series_length is not None and len(rows[0]) != header.series_length:
        raise DatasetError(f'{path}: {UNSUPPORTED}: unequal lengths, expected {header.series_length} '
          f'values, got {len(rows[0])} (line {lineno})')
      samples.append(rows)
      labels.append(label)

  if not in_data:
    raise DatasetError(f'{path}: missing @data section')

  name = header.problem_name or os.path.splitext(os.path.basename(path))[0]
  if samples:
    array = np.array(samples, dtype=np.float64)
  else:
    array = np.zeros((0, header.dimensions or 1, header.series_length or 0))
  logger.debug('Loaded %s: %d samples, shape %s, %d classes',
    path, len(samples), array.shape[1:], len(header.class_names))
  return MTSDataset(array, np.array(labels, dtype=np.int64), list(header.class_names), name=name)


def _render(dataset: MTSDataset, fp: TextIO) -> None:
  fp.write(f'@problemName {dataset.name}\n')
  fp.write('@timeStamps false\n')
  fp.write('@missing false\n')
  if dataset.n_dims == 1:
    fp.write('@univariate true\n')
  else:
    fp.write('@univariate false\n')
    fp.write(f'@dimensions {dataset.n_dims}\n')
  fp.write('@equalLength true\n')
  fp.write(f'@seriesLength {dataset.series_length}\n')
  fp.write('@classLabel true {}\n'.format(' '.join(dataset.class_names)))
  fp.write('@data\n')
  for sample, label in zip(dataset.samples, dataset.labels):
    dims = (','.join(repr(float(v)) for v in row) for row in sample)
    fp.write(':'.join(dims) + ':' + dataset.class_names[label] + '\n')


def write_ts_file(dataset: MTSDataset, file_: Union[str, TextIO]) -> None:
  """
  Writes *dataset* in the layout read by #load_ts_file(). Values are written with the
  shortest decimal representation that round-trips to the same float64.
  """

  if any(' ' in name or ':' in name for name in dataset.class_names):
    raise DatasetError('class names may not contain spaces or colons')
  if isinstance(file_, str):
    with nr.fs.atomic_file(file_, 'w') as fp:
      _render(dataset, fp)
  else:
    _render(dataset, file_)
