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

import functools

import click
from termcolor import colored

from mtsexplain.datasets import load_ts_file
from mtsexplain.model import write_checkpoint
from mtsexplain.training import GridSpec, fit_best, grid_search
from mtsexplain.utils.io import ArtifactSet
from . import context, mtsexplain
from .commons import ARCHITECTURE, echo, exit_on_error, model_spec, parse_list, write_run


@mtsexplain.command()
@click.option('--arch', type=ARCHITECTURE, help='The network architecture (default: xcm).')
@click.option('--train', 'train_path', metavar='path', required=True, type=click.Path(exists=True, dir_okay=False),
  help='The training set (.ts).')
@click.option('--batch-sizes', metavar='list', help='Comma separated batch sizes (default: 1,8,32).')
@click.option('--window-pcts', metavar='list', help='Comma separated window sizes (default: 0.2,0.4,0.6,0.8,1.0).')
@click.option('--folds', type=click.IntRange(min=2), help='Cross-validation folds (default: 5).')
@click.option('--epochs', type=click.IntRange(min=1), help='Training epochs of every run (default: 100).')
@click.option('--filters', type=click.IntRange(min=1), help='Feature maps per convolution (default: 128).')
def gridsearch(arch, train_path, batch_sizes, window_pcts, folds, epochs, filters):
  """
  Select batch size and window size by stratified cross-validation, then retrain the
  winning cell on the full training set.
  """

  seed = context['seed']
  config = context['config']
  grid = config.grid
  batch_sizes = parse_list(batch_sizes, int) or grid.batch_sizes
  window_pcts = parse_list(window_pcts, float) or grid.window_pcts

  with exit_on_error():
    dataset = load_ts_file(train_path)
    spec = model_spec(dataset, arch, filters, window_pcts[0])
    grid = GridSpec(batch_sizes=batch_sizes, window_pcts=window_pcts, k_folds=folds or grid.k_folds).validate()
    train_config = config.train.replace(seed=seed, epochs=epochs or config.train.epochs).validate()

    result = grid_search(spec, dataset, grid, train_config, seed, context['threads'])
    final = fit_best(spec, dataset, result, train_config, seed)

    artifacts = ArtifactSet()
    artifacts.add_dynamic('cv_table.csv', result.write_csv)
    artifacts.add_dynamic('model.ckpt', functools.partial(write_checkpoint, final.model), text=False)

    best = f'batch size {result.best_batch_size}, window {result.best_window_pct}'
    echo(f'{len(result.records)} runs, best cell: {colored(best, "green")} '
      f'(mean validation accuracy {result.best_mean_accuracy:.4f})')
    write_run('gridsearch', {'arch': spec.architecture.value, 'train': train_path,
      'batch_sizes': ','.join(map(str, grid.batch_sizes)), 'window_pcts': ','.join(map(str, grid.window_pcts)),
      'folds': grid.k_folds, 'epochs': train_config.epochs, 'filters': spec.filters}, artifacts,
      spec=final.model.spec, train=train_config.replace(batch_size=result.best_batch_size),
      batch_size=result.best_batch_size, window_pct=result.best_window_pct,
      values={'best_mean_accuracy': result.best_mean_accuracy, 'runs': float(len(result.records))},
      retrained_on_full_train=True)
