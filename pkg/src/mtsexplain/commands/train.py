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
import functools

import click
from termcolor import colored

from mtsexplain.datasets import load_ts_file
from mtsexplain.model import build_model, dumps_json, write_checkpoint
from mtsexplain.training import evaluate, train as train_model
from mtsexplain.utils.io import ArtifactSet
from . import context, mtsexplain
from .commons import ARCHITECTURE, echo, exit_on_error, model_spec, write_run


def write_loss_curve(fp, loss_curve) -> None:
  writer = csv.writer(fp, lineterminator='\n')
  writer.writerow(['epoch', 'loss'])
  for epoch, loss in enumerate(loss_curve, 1):
    writer.writerow([epoch, repr(loss)])


@mtsexplain.command()
@click.option('--arch', type=ARCHITECTURE, help='The network architecture (default: xcm).')
@click.option('--train', 'train_path', metavar='path', required=True, type=click.Path(exists=True, dir_okay=False),
  help='The training set (.ts).')
@click.option('--batch', type=click.IntRange(min=1), help='Batch size (default: 1).')
@click.option('--window-pct', type=float,
  help='Window size as a fraction of the series length (default: 0.2).')
@click.option('--epochs', type=click.IntRange(min=1), help='Training epochs (default: 100).')
@click.option('--filters', type=click.IntRange(min=1), help='Feature maps per convolution (default: 128).')
def train(arch, train_path, batch, window_pct, epochs, filters):
  """
  Train a model and save its checkpoint, loss curve and training-set metrics.
  """

  seed = context['seed']
  with exit_on_error():
    dataset = load_ts_file(train_path)
    spec = model_spec(dataset, arch, filters, window_pct)
    config = context['config'].train.replace(seed=seed)
    config = config.replace(batch_size=batch or config.batch_size, epochs=epochs or config.epochs).validate()

    model = build_model(spec, seed)
    result = train_model(model, dataset, config)
    metrics = evaluate(model, dataset)

    artifacts = ArtifactSet()
    artifacts.add_dynamic('model.ckpt', functools.partial(write_checkpoint, model), text=False)
    artifacts.add_dynamic('loss_curve.csv', write_loss_curve, result.loss_curve)
    artifacts.add_static('train_metrics.json', dumps_json(metrics))

    echo(f'{spec.architecture.value}: {model.count_parameters()} parameters, {result.steps} steps, '
      f'final loss {result.loss_curve[-1]:.4f}, train accuracy {colored(f"{metrics.accuracy:.3f}", "green")}')
    write_run('train', {'arch': spec.architecture.value, 'train': train_path, 'batch': config.batch_size,
      'window_pct': spec.window_pct, 'epochs': config.epochs, 'filters': spec.filters}, artifacts,
      spec=spec, train=config, batch_size=config.batch_size, window_pct=spec.window_pct, metrics=metrics,
      values={'parameters': float(model.count_parameters()), 'steps': float(result.steps)})
