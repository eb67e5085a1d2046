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

import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np
from sklearn.model_selection import StratifiedKFold  # type: ignore

from .base import DatasetError, MTSDataset

logger = logging.getLogger(__name__)
__all__ = ['FoldAssignment', 'stratified_folds', 'split_train_test']


@dataclass(frozen=True)
class FoldAssignment:
  fold_of_sample: np.ndarray
  k: int

  def indices(self, fold: int) -> np.ndarray:
    return np.flatnonzero(self.fold_of_sample == fold)

  def split(self, fold: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Returns the `(train, validation)` sample indices with *fold* held out.
    """

    return np.flatnonzero(self.fold_of_sample != fold), self.indices(fold)

  def __iter__(self) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    for fold in range(self.k):
      yield self.split(fold)


def stratified_folds(dataset: MTSDataset, k: int, seed: int = 0) -> FoldAssignment:
  """
  Assigns every sample to one of *k* folds with a shuffled #StratifiedKFold, so that
  per-class fold sizes differ by at most one. `k == 1` puts every sample into fold 0.
  """

  if k < 1:
    raise ValueError(f'k must be positive, got {k}')
  counts = dataset.class_counts()
  for class_id, count in enumerate(counts):
    if count < k:
      raise DatasetError(f'class {dataset.class_names[class_id]!r} has {count} members, '
        f'fewer than the {k} folds requested')

  folds = np.zeros(len(dataset), dtype=np.int64)
  if k > 1:
    # RandomState seeds are 32 bit.
    random_state = int(np.random.SeedSequence(seed).generate_state(1)[0])
    splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=random_state)
    for fold, (_, held_out) in enumerate(splitter.split(np.zeros(len(dataset)), dataset.labels)):
      folds[held_out] = fold

  logger.debug('Assigned %d samples to %d stratified folds', len(dataset), k)
  return FoldAssignment(folds, k)


def split_train_test(dataset: MTSDataset, seed: int = 0) -> Tuple[MTSDataset, MTSDataset]:
  """
  A stratified 50/50 split: fold 0 of a 2-fold assignment becomes the training set.
  """

  folds = stratified_folds(dataset, 2, seed)
  test, train = folds.split(0)
  return (dataset.subset(train, f'{dataset.name}_TRAIN'), dataset.subset(test, f'{dataset.name}_TEST'))
