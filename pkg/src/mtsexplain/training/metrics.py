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

from typing import List, Sequence

import numpy as np
from databind.core import datamodel, field
from sklearn import metrics  # type: ignore

from mtsexplain.datasets import MTSDataset
from mtsexplain.model import Model, predict
from .config import TrainingError

__all__ = ['MetricsReport', 'classification_metrics', 'evaluate']


@datamodel
class MetricsReport:
  accuracy: float
  macro_f1: float = field(altname='macro-f1')
  precision: List[float]
  recall: List[float]
  f1: List[float]
  #: Rows are true classes, columns are predicted classes.
  confusion: List[List[int]]

  @property
  def total(self) -> int:
    return int(sum(sum(row) for row in self.confusion))


def classification_metrics(truth: Sequence[int], predicted: Sequence[int], classes: int) -> MetricsReport:
  """
  Accuracy, the confusion matrix and per-class scores over the class ids `0..classes-1`.
  Precision, recall or F1 with a zero denominator are defined as 0.
  """

  truth, predicted = np.asarray(truth), np.asarray(predicted)
  if truth.size == 0:
    raise TrainingError('cannot compute metrics without samples')
  labels = list(range(classes))
  confusion = metrics.confusion_matrix(truth, predicted, labels=labels)
  precision, recall, f1, _ = metrics.precision_recall_fscore_support(
    truth, predicted, labels=labels, average=None, zero_division=0)
  return MetricsReport(
    accuracy=float(metrics.accuracy_score(truth, predicted)),
    macro_f1=float(metrics.f1_score(truth, predicted, labels=labels, average='macro', zero_division=0)),
    precision=[float(x) for x in precision],
    recall=[float(x) for x in recall],
    f1=[float(x) for x in f1],
    confusion=confusion.astype(int).tolist(),
  )


def evaluate(model: Model, test_set: MTSDataset) -> MetricsReport:
  if len(test_set) == 0:
    raise TrainingError(f'cannot evaluate on the empty dataset {test_set.name!r}')
  if test_set.n_classes != model.spec.classes:
    raise TrainingError(f'dataset {test_set.name!r} has {test_set.n_classes} classes, '
      f'the model predicts {model.spec.classes}')
  _, labels = predict(model, test_set.samples)
  return classification_metrics(test_set.labels, labels, model.spec.classes)
