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
Average ranks and wins/ties of classifiers over a datasets × classifiers accuracy matrix.
"""

import csv
import io
import logging
import pkgutil
from dataclasses import dataclass
from typing import Dict, List, TextIO, Union

import numpy as np
from scipy import stats  # type: ignore

logger = logging.getLogger(__name__)
__all__ = [
  'ReportError',
  'TIE_METHODS',
  'ResultsTable',
  'load_results',
  'load_published_results',
  'rank_matrix',
  'average_rank',
  'rank_standard_error',
  'wins_ties',
  'write_ranks_csv',
]

#: `average` gives tied classifiers the mean of the positions they occupy; `min` gives
#: them all the best of those positions.
TIE_METHODS = ('average', 'min')


class ReportError(Exception):
  pass


@dataclass
class ResultsTable:
  datasets: List[str]
  classifiers: List[str]
  #: `(datasets, classifiers)` accuracies in `[0, 1]`; NaN marks a blank entry.
  accuracy: np.ndarray

  def __post_init__(self):
    self.accuracy = np.asarray(self.accuracy, dtype=np.float64)
    if self.accuracy.shape != (len(self.datasets), len(self.classifiers)):
      raise ReportError(f'accuracy matrix of shape {self.accuracy.shape} does not match '
        f'{len(self.datasets)} datasets x {len(self.classifiers)} classifiers')
    present = self.accuracy[~np.isnan(self.accuracy)]
    if present.size and (present.min() < 0.0 or present.max() > 1.0):
      raise ReportError('accuracies must lie in [0, 1]')

  def check_nonempty(self) -> None:
    if not self.datasets or not self.classifiers:
      raise ReportError('the results table is empty')

  def columns(self, names: List[str]) -> 'ResultsTable':
    missing = [n for n in names if n not in self.classifiers]
    if missing:
      raise ReportError('unknown classifier(s): {}'.format(', '.join(missing)))
    index = [self.classifiers.index(n) for n in names]
    return ResultsTable(list(self.datasets), list(names), self.accuracy[:, index])


def _parse_results(fp: TextIO, source: str) -> ResultsTable:
  reader = csv.reader(fp)
  try:
    header = next(reader)
  except StopIteration:
    raise ReportError(f'{source}: empty file')
  classifiers = [name.strip() for name in header[1:]]
  if not classifiers or any(not name for name in classifiers):
    raise ReportError(f'{source}: line 1: expected a header of classifier names')

  datasets: List[str] = []
  rows: List[List[float]] = []
  for row in reader:
    lineno = reader.line_num
    if not any(cell.strip() for cell in row):
      continue
    if len(row) != len(header):
      raise ReportError(f'{source}: line {lineno}: expected {len(header)} fields, got {len(row)}')
    values = []
    for name, cell in zip(classifiers, row[1:]):
      cell = cell.strip()
      if not cell:
        values.append(np.nan)
        continue
      try:
        value = float(cell)
      except ValueError:
        raise ReportError(f'{source}: line {lineno}: {name}: not a number: {cell!r}')
      if not 0.0 <= value <= 1.0:
        raise ReportError(f'{source}: line {lineno}: {name}: accuracy {value} outside [0, 1]')
      values.append(value)
    datasets.append(row[0].strip())
    rows.append(values)

  accuracy = np.array(rows, dtype=np.float64).reshape(len(rows), len(classifiers))
  logger.debug('Loaded results of %d classifiers on %d datasets from %s', len(classifiers), len(datasets), source)
  return ResultsTable(datasets, classifiers, accuracy)


def load_results(file_: Union[str, TextIO]) -> ResultsTable:
  """
  Reads a results CSV: a header row of classifier names after the dataset column, then
  one row per dataset. An empty cell is a blank entry.
  """

  if isinstance(file_, str):
    with open(file_, newline='', encoding='utf8') as fp:
      return _parse_results(fp, file_)
  return _parse_results(file_, getattr(file_, 'name', '<results>'))


def load_published_results() -> ResultsTable:
  """
  The published accuracies of eleven classifiers on 30 datasets of the UEA archive.
  """

  data = pkgutil.get_data('mtsexplain', 'data/uea_accuracies.csv')
  if data is None:
    raise ReportError('the published results table is not installed')
  return _parse_results(io.StringIO(data.decode('utf8')), 'uea_accuracies.csv')


def rank_matrix(table: ResultsTable, ties: str = 'average') -> np.ndarray:
  """
  Per-dataset ranks, 1 being the best accuracy. Blank entries tie for the worst ranks.
  """

  table.check_nonempty()
  if ties not in TIE_METHODS:
    raise ValueError(f'ties must be one of {TIE_METHODS}, got {ties!r}')
  scores = np.where(np.isnan(table.accuracy), -np.inf, table.accuracy)
  return np.vstack([stats.rankdata(-row, method=ties) for row in scores])


def average_rank(table: ResultsTable, ties: str = 'average') -> Dict[str, float]:
  """
  Mean rank of every classifier over the datasets of *table*. Tied accuracies share the
  mean of their positions by default; `ties='min'` gives them the best shared position,
  which is how the published UEA average ranks were computed.
  """

  ranks = rank_matrix(table, ties).mean(axis=0)
  return {name: float(r) for name, r in zip(table.classifiers, ranks)}


def rank_standard_error(table: ResultsTable, ties: str = 'average') -> Dict[str, float]:
  ranks = rank_matrix(table, ties)
  if ranks.shape[0] < 2:
    return {name: 0.0 for name in table.classifiers}
  errors = ranks.std(axis=0, ddof=1) / np.sqrt(ranks.shape[0])
  return {name: float(e) for name, e in zip(table.classifiers, errors)}


def wins_ties(table: ResultsTable) -> Dict[str, int]:
  """
  The number of datasets on which each classifier reaches the best accuracy. Shared
  maxima credit every classifier involved; blanks never win.
  """

  table.check_nonempty()
  counts = np.zeros(len(table.classifiers), dtype=np.int64)
  for row in table.accuracy:
    present = ~np.isnan(row)
    if present.any():
      counts += present & (row == row[present].max())
  return {name: int(c) for name, c in zip(table.classifiers, counts)}


def write_ranks_csv(table: ResultsTable, fp: TextIO, ties: str = 'average') -> None:
  ranks = average_rank(table, ties)
  errors = rank_standard_error(table, ties)
  wins = wins_ties(table)
  writer = csv.writer(fp, lineterminator='\n')
  writer.writerow(['classifier', 'average_rank', 'rank_std_error', 'wins_ties'])
  for name in table.classifiers:
    writer.writerow([name, f'{ranks[name]:.4f}', f'{errors[name]:.4f}', wins[name]])
