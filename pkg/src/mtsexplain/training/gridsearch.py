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
Hyperparameter selection over batch size and window size by stratified k-fold
cross-validation on the training set.
"""

import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, TextIO, Tuple

import numpy as np
from sklearn.model_selection import ParameterGrid  # type: ignore

from mtsexplain.datasets import MTSDataset, stratified_folds
from mtsexplain.model import ModelSpec, build_model
from .config import GridSpec, TrainConfig
from .metrics import evaluate
from .trainer import TrainResult, train

logger = logging.getLogger(__name__)
__all__ = ['CV_COLUMNS', 'CVRecord', 'GridResult', 'derive_seed', 'grid_search', 'fit_best']

CV_COLUMNS = ['batch_size', 'window_pct', 'fold', 'val_accuracy']


class CVRecord(NamedTuple):
  batch_size: int
  window_pct: float
  fold: int
  val_accuracy: float


class _Job(NamedTuple):
  cell: int
  batch_size: int
  window_pct: float
  fold: int


@dataclass
class GridResult:
  records: List[CVRecord]
  best_batch_size: int
  best_window_pct: float
  best_mean_accuracy: float

  def mean_accuracies(self) -> Dict[Tuple[int, float], float]:
    groups: Dict[Tuple[int, float], List[float]] = {}
    for record in self.records:
      groups.setdefault((record.batch_size, record.window_pct), []).append(record.val_accuracy)
    return {key: float(np.mean(values)) for key, values in groups.items()}

  def write_csv(self, fp: TextIO) -> None:
    writer = csv.writer(fp, lineterminator='\n')
    writer.writerow(CV_COLUMNS)
    for record in self.records:
      writer.writerow([record.batch_size, repr(record.window_pct), record.fold, repr(record.val_accuracy)])


def derive_seed(seed: int, *keys: int) -> int:
  """
  Derives an independent, reproducible seed for the sub-task identified by *keys*.
  """

  return int(np.random.SeedSequence(seed, spawn_key=tuple(keys)).generate_state(1)[0])


def grid_search(
  spec_template: ModelSpec,
  train_set: MTSDataset,
  grid: GridSpec,
  config: TrainConfig,
  seed: int = 0,
  threads: int = 1,
) -> GridResult:
  """
  Trains one model per grid cell and fold and scores it on the held-out fold. The winning
  cell has the highest mean validation accuracy; ties go to the larger batch size, then
  to the smaller window. Every run draws its seeds from `(seed, cell, fold)`, so the
  result does not depend on *threads*.
  """

  grid.validate()
  config.validate()
  folds = stratified_folds(train_set, grid.k_folds, seed)
  # Cells enumerate batch sizes in the outer loop and windows in the inner one.
  cells = list(ParameterGrid({'batch_size': grid.batch_sizes, 'window_pct': grid.window_pcts}))
  jobs = [_Job(cell, params['batch_size'], params['window_pct'], fold)
          for cell, params in enumerate(cells)
          for fold in range(grid.k_folds)]

  def run(job: _Job) -> CVRecord:
    train_idx, val_idx = folds.split(job.fold)
    spec = spec_template.replace(window_pct=job.window_pct)
    model = build_model(spec, derive_seed(seed, job.cell, job.fold, 0))
    run_config = config.replace(batch_size=job.batch_size, seed=derive_seed(seed, job.cell, job.fold, 1))
    train(model, train_set.subset(train_idx), run_config)
    accuracy = evaluate(model, train_set.subset(val_idx)).accuracy
    logger.info('batch size %d, window %s, fold %d/%d: validation accuracy %.4f',
      job.batch_size, job.window_pct, job.fold + 1, grid.k_folds, accuracy)
    return CVRecord(job.batch_size, job.window_pct, job.fold, accuracy)

  logger.info('Grid search over %d cells x %d folds (%d runs)', len(cells), grid.k_folds, len(jobs))
  if threads > 1:
    with ThreadPoolExecutor(max_workers=threads) as executor:
      records = list(executor.map(run, jobs))
  else:
    records = [run(job) for job in jobs]

  result = GridResult(records, 0, 0.0, 0.0)
  means = result.mean_accuracies()
  (batch_size, window_pct), mean = max(means.items(), key=lambda kv: (kv[1], kv[0][0], -kv[0][1]))
  result.best_batch_size, result.best_window_pct, result.best_mean_accuracy = batch_size, window_pct, mean
  logger.info('Best cell: batch size %d, window %s (mean accuracy %.4f)', batch_size, window_pct, mean)
  return result


def fit_best(
  spec_template: ModelSpec,
  train_set: MTSDataset,
  result: GridResult,
  config: TrainConfig,
  seed: int = 0,
) -> TrainResult:
  """
  Retrains the winning cell of *result* on the full training set.
  """

  spec = spec_template.replace(window_pct=result.best_window_pct)
  model = build_model(spec, seed)
  return train(model, train_set, config.replace(batch_size=result.best_batch_size, seed=seed))
