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

import csv

import click
from termcolor import colored

from mtsexplain.datasets import load_ts_file
from mtsexplain.model import dumps_json, load_checkpoint
from mtsexplain.training import MetricsReport, evaluate as evaluate_model
from mtsexplain.utils.io import ArtifactSet
from . import mtsexplain
from .commons import echo, exit_on_error, write_run


def write_confusion_csv(fp, metrics: MetricsReport, class_names) -> None:
  writer = csv.writer(fp, lineterminator='\n')
  writer.writerow(['true \\ predicted'] + list(class_names))
  for name, row in zip(class_names, metrics.confusion):
    writer.writerow([name] + list(row))


@mtsexplain.command('eval')
@click.option('--checkpoint', metavar='path', required=True, type=click.Path(exists=True, dir_okay=False),
  help='A checkpoint written by the train or gridsearch commands.')
@click.option('--test', 'test_path', metavar='path', required=True, type=click.Path(exists=True, dir_okay=False),
  help='The test set (.ts).')
def evaluate(checkpoint, test_path):
  """
  Evaluate a checkpoint on a test set.
  """

  with exit_on_error():
    model = load_checkpoint(checkpoint)
    dataset = load_ts_file(test_path)
    metrics = evaluate_model(model, dataset)

    artifacts = ArtifactSet()
    artifacts.add_static('metrics.json', dumps_json(metrics))
    artifacts.add_dynamic('confusion.csv', write_confusion_csv, metrics, dataset.class_names)

    color = 'green' if metrics.accuracy == 1.0 else 'yellow'
    echo(f'accuracy {colored(f"{metrics.accuracy:.4f}", color)}, macro F1 {metrics.macro_f1:.4f} '
      f'on {len(dataset)} samples')
    write_run('eval', {'checkpoint': checkpoint, 'test': test_path}, artifacts,
      spec=model.spec, metrics=metrics)
